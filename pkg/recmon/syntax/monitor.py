"""
Regular and parallel monitor syntax.
"""
import enum
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Union

from recmon.errors import PreconditionError


class Verdict(str, enum.Enum):
    YES = "yes"
    NO = "no"
    END = "end"
    NONE = "none-yet"


@dataclass(frozen=True)
class Yes:
    pass


@dataclass(frozen=True)
class No:
    pass


@dataclass(frozen=True)
class End:
    pass


@dataclass(frozen=True)
class Prefix:
    action: str
    body: "Monitor"


@dataclass(frozen=True)
class Sum:
    left: "Monitor"
    right: "Monitor"


@dataclass(frozen=True)
class Conj:
    """Conjunctive parallel composition, written ``&&``."""

    left: "Monitor"
    right: "Monitor"


@dataclass(frozen=True)
class Disj:
    """Disjunctive parallel composition, written ``||``."""

    left: "Monitor"
    right: "Monitor"


@dataclass(frozen=True)
class Rec:
    var: str
    body: "Monitor"


@dataclass(frozen=True)
class MVar:
    name: str


Monitor = Union[Yes, No, End, Prefix, Sum, Conj, Disj, Rec, MVar]
VerdictTerm = (Yes, No, End)
Parallel = (Conj, Disj)
Binary = (Sum, Conj, Disj)

YES = Yes()
NO = No()
END = End()

_VERDICTS = {Yes: Verdict.YES, No: Verdict.NO, End: Verdict.END}
_TERMS = {Verdict.YES: YES, Verdict.NO: NO, Verdict.END: END}


def verdict_of(m: Monitor) -> Optional[Verdict]:
    return _VERDICTS.get(type(m))


def verdict_term(v: Verdict) -> Monitor:
    return _TERMS[v]


def children(m: Monitor) -> tuple:
    if isinstance(m, Binary):
        return (m.left, m.right)
    if isinstance(m, (Prefix, Rec)):
        return (m.body,)
    return ()


def rebuild(m: Monitor, new_children: tuple) -> Monitor:
    if isinstance(m, Binary):
        return type(m)(*new_children)
    if isinstance(m, Prefix):
        return Prefix(m.action, new_children[0])
    if isinstance(m, Rec):
        return Rec(m.var, new_children[0])
    return m


def submonitors(m: Monitor) -> List[Monitor]:
    """Distinct subterms of ``m`` in pre-order, ``m`` first."""
    seen: Dict[Monitor, None] = {}
    stack = [m]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen[node] = None
        stack.extend(reversed(children(node)))
    return list(seen)


def prefixes(actions: Iterable[str], body: Monitor) -> Optional[Monitor]:
    """``Σ_{a∈actions} a.body`` as a left-nested sum, ``None`` when empty."""
    result: Optional[Monitor] = None
    for action in actions:
        summand = Prefix(action, body)
        result = summand if result is None else Sum(result, summand)
    return result


def choice(summands: Iterable[Monitor]) -> Optional[Monitor]:
    result: Optional[Monitor] = None
    for summand in summands:
        result = summand if result is None else Sum(result, summand)
    return result


def summands(m: Monitor) -> List[Monitor]:
    """Flatten a tree of ``+`` into its summands."""
    if isinstance(m, Sum):
        return summands(m.left) + summands(m.right)
    return [m]


def free_vars(m: Monitor) -> FrozenSet[str]:
    if isinstance(m, MVar):
        return frozenset({m.name})
    if isinstance(m, Rec):
        return free_vars(m.body) - {m.var}
    result: FrozenSet[str] = frozenset()
    for child in children(m):
        result |= free_vars(child)
    return result


def is_closed(m: Monitor) -> bool:
    return not free_vars(m)


def substitute(m: Monitor, var: str, replacement: Monitor) -> Monitor:
    """``m[replacement/var]`` for a closed replacement; no renaming takes place."""
    if isinstance(m, MVar):
        return replacement if m.name == var else m
    if isinstance(m, Rec) and m.var == var:
        return m
    kids = children(m)
    if not kids:
        return m
    return rebuild(m, tuple(substitute(child, var, replacement) for child in kids))


def unfold(m: Rec) -> Monitor:
    return substitute(m.body, m.var, m)


def binder_map(m: Monitor) -> Dict[str, Monitor]:
    """Map each recursion variable to the body of its (unique) binder."""
    return {node.var: node.body for node in submonitors(m) if isinstance(node, Rec)}


def has_unique_binders(m: Monitor) -> bool:
    names = [node.var for node in _all_nodes(m) if isinstance(node, Rec)]
    return len(names) == len(set(names))


def _all_nodes(m: Monitor):
    stack = [m]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(children(node))


def rename_binders(m: Monitor) -> Monitor:
    """Alpha-rename so that every ``rec`` binds a distinct variable."""
    taken: Set[str] = set(free_vars(m))

    def fresh(base: str) -> str:
        name, index = base, 1
        while name in taken:
            name = f"{base}{index}"
            index += 1
        taken.add(name)
        return name

    def walk(node: Monitor, scope: Dict[str, str]) -> Monitor:
        if isinstance(node, MVar):
            return MVar(scope.get(node.name, node.name))
        if isinstance(node, Rec):
            name = fresh(node.var)
            return Rec(name, walk(node.body, {**scope, node.var: name}))
        kids = children(node)
        if not kids:
            return node
        return rebuild(node, tuple(walk(child, scope) for child in kids))

    return walk(m, {})


def length(m: Monitor) -> int:
    return 1 + sum(length(child) for child in children(m))


def is_regular(m: Monitor) -> bool:
    return not any(isinstance(node, Parallel) for node in _all_nodes(m))


def is_recursion_free(m: Monitor) -> bool:
    return not any(isinstance(node, (Rec, MVar)) for node in _all_nodes(m))


def is_single_verdict(m: Monitor) -> bool:
    kinds = {type(node) for node in _all_nodes(m)}
    return not (Yes in kinds and No in kinds)


def is_deterministic(m: Monitor) -> bool:
    """Every sum of two or more summands is ``Σ_{a∈A} a.m_a`` with distinct actions."""
    if isinstance(m, Sum):
        parts = summands(m)
        if not all(isinstance(part, Prefix) for part in parts):
            return False
        actions = [part.action for part in parts]
        if len(actions) != len(set(actions)):
            return False
        return all(is_deterministic(part.body) for part in parts)
    return all(is_deterministic(child) for child in children(m))


def require_regular(m: Monitor, operation: str) -> None:
    if not is_regular(m):
        raise PreconditionError(f"{operation} needs a regular monitor (no && or ||)")


def size(m: Monitor) -> int:
    """Upper bound on the number of reachable states of a regular monitor."""
    if isinstance(m, (Yes, No, End, MVar)):
        return 1
    if isinstance(m, Prefix):
        return 1 + size(m.body)
    if isinstance(m, Sum):
        return 1 + size(m.left) + size(m.right)
    if isinstance(m, Rec):
        return 1 + size(m.body)
    require_regular(m, "size")
    return 0


def states(m: Monitor) -> FrozenSet[Monitor]:
    """Syntactic characterisation of the states reachable from a closed regular monitor."""
    require_regular(m, "states")
    return frozenset(_states(m))


def _states(m: Monitor) -> Set[Monitor]:
    if isinstance(m, (Yes, No, End, MVar)):
        return {m}
    if isinstance(m, Prefix):
        return {m} | _states(m.body)
    if isinstance(m, Rec):
        return {m} | {substitute(n, m.var, m) for n in _states(m.body)}
    # Sum: the sum itself plus what its summands lead to
    return {m} | _skip(m.left) | _skip(m.right)


def _skip(m: Monitor) -> Set[Monitor]:
    """States reachable through a summand, excluding the summand itself."""
    if isinstance(m, (Yes, No, End, MVar)):
        return {m}
    if isinstance(m, Prefix):
        return _states(m.body)
    if isinstance(m, Rec):
        return {substitute(n, m.var, m) for n in _states(m.body)}
    return _skip(m.left) | _skip(m.right)


def actions_of(m: Monitor) -> FrozenSet[str]:
    return frozenset(node.action for node in _all_nodes(m) if isinstance(node, Prefix))
