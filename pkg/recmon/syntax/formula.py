"""
recHML formula syntax tree and structural operations.
"""
from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, Optional, Set, Union


@dataclass(frozen=True)
class Tt:
    pass


@dataclass(frozen=True)
class Ff:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Box:
    actions: FrozenSet[str]
    body: "Formula"


@dataclass(frozen=True)
class Diamond:
    actions: FrozenSet[str]
    body: "Formula"


@dataclass(frozen=True)
class Max:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Min:
    var: str
    body: "Formula"


@dataclass(frozen=True)
class Var:
    name: str


Formula = Union[Tt, Ff, And, Or, Box, Diamond, Max, Min, Var]
Fixpoint = (Max, Min)
Modal = (Box, Diamond)
Binary = (And, Or)

TT = Tt()
FF = Ff()


def box(actions: Iterable[str], body: Formula) -> Box:
    return Box(frozenset(actions), body)


def diamond(actions: Iterable[str], body: Formula) -> Diamond:
    return Diamond(frozenset(actions), body)


def conjoin(parts: Iterable[Formula]) -> Formula:
    """Left-nested conjunction; the empty conjunction is tt."""
    result: Optional[Formula] = None
    for part in parts:
        result = part if result is None else And(result, part)
    return TT if result is None else result


def disjoin(parts: Iterable[Formula]) -> Formula:
    """Left-nested disjunction; the empty disjunction is ff."""
    result: Optional[Formula] = None
    for part in parts:
        result = part if result is None else Or(result, part)
    return FF if result is None else result


def children(f: Formula) -> tuple:
    if isinstance(f, Binary):
        return (f.left, f.right)
    if isinstance(f, (Box, Diamond, Max, Min)):
        return (f.body,)
    return ()


def subformulas(f: Formula):
    """Pre-order walk over every node of ``f``."""
    stack = [f]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def free_vars(f: Formula) -> FrozenSet[str]:
    if isinstance(f, Var):
        return frozenset({f.name})
    if isinstance(f, Fixpoint):
        return free_vars(f.body) - {f.var}
    result: FrozenSet[str] = frozenset()
    for child in children(f):
        result |= free_vars(child)
    return result


def bound_vars(f: Formula) -> FrozenSet[str]:
    return frozenset(node.var for node in subformulas(f) if isinstance(node, Fixpoint))


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def is_guarded(f: Formula) -> bool:
    """Every bound variable occurs within a modality inside its binder."""

    def walk(node: Formula, unguarded: FrozenSet[str]) -> bool:
        if isinstance(node, Var):
            return node.name not in unguarded
        if isinstance(node, Fixpoint):
            return walk(node.body, unguarded | {node.var})
        if isinstance(node, Modal):
            return walk(node.body, frozenset())
        return all(walk(child, unguarded) for child in children(node))

    return walk(f, frozenset())


def rebuild(f: Formula, new_children: tuple) -> Formula:
    """Same node as ``f`` with its children replaced."""
    if isinstance(f, And):
        return And(*new_children)
    if isinstance(f, Or):
        return Or(*new_children)
    if isinstance(f, Box):
        return Box(f.actions, new_children[0])
    if isinstance(f, Diamond):
        return Diamond(f.actions, new_children[0])
    if isinstance(f, Max):
        return Max(f.var, new_children[0])
    if isinstance(f, Min):
        return Min(f.var, new_children[0])
    return f


def fresh_name(base: str, taken: Set[str]) -> str:
    if base not in taken:
        return base
    index = 1
    while f"{base}{index}" in taken:
        index += 1
    return f"{base}{index}"


def rename_binders(f: Formula) -> Formula:
    """Alpha-rename so that every binder introduces a distinct variable.

    The first binder of each name keeps it; later ones get a numeric suffix.
    Free variable names are never reused.
    """
    taken = set(free_vars(f))

    def walk(node: Formula, scope: Dict[str, str]) -> Formula:
        if isinstance(node, Var):
            return Var(scope.get(node.name, node.name))
        if isinstance(node, Fixpoint):
            name = fresh_name(node.var, taken)
            taken.add(name)
            body = walk(node.body, {**scope, node.var: name})
            return type(node)(name, body)
        return rebuild(node, tuple(walk(child, scope) for child in children(node)))

    return walk(f, {})


def substitute(f: Formula, var: str, replacement: Formula) -> Formula:
    """Capture-avoiding ``f[replacement/var]``, binders made unique afterwards."""
    dangerous = free_vars(replacement)

    def walk(node: Formula) -> Formula:
        if isinstance(node, Var):
            return replacement if node.name == var else node
        if isinstance(node, Fixpoint):
            if node.var == var:
                return node
            if node.var in dangerous:
                taken = set(dangerous) | free_vars(node.body) | bound_vars(node.body) | {var}
                renamed = fresh_name(node.var, taken)
                body = substitute(node.body, node.var, Var(renamed))
                return type(node)(renamed, walk(body))
            return type(node)(node.var, walk(node.body))
        return rebuild(node, tuple(walk(child) for child in children(node)))

    return rename_binders(walk(f))


def unfold(fix: Union[Max, Min]) -> Formula:
    return substitute(fix.body, fix.var, fix)


def length(f: Formula) -> int:
    """Symbol length, with ``[A]φ`` counted as its single-action expansion."""
    if isinstance(f, Binary):
        return length(f.left) + length(f.right) + 1
    if isinstance(f, Modal):
        n = len(f.actions)
        return n * (1 + length(f.body)) + n - 1
    if isinstance(f, Fixpoint):
        return 1 + length(f.body)
    return 1


def measure_ms(f: Formula) -> int:
    if isinstance(f, Fixpoint):
        return measure_ms(f.body) + 1
    if isinstance(f, Binary):
        return max(measure_ms(f.left), measure_ms(f.right)) + 1
    return 0


def modal_depth(f: Formula) -> int:
    if isinstance(f, Modal):
        return 1 + modal_depth(f.body)
    return max((modal_depth(child) for child in children(f)), default=0)


def dual(f: Formula) -> Formula:
    """Negation dual: swaps tt/ff, and/or, box/diamond, max/min."""
    if isinstance(f, Tt):
        return FF
    if isinstance(f, Ff):
        return TT
    if isinstance(f, And):
        return Or(dual(f.left), dual(f.right))
    if isinstance(f, Or):
        return And(dual(f.left), dual(f.right))
    if isinstance(f, Box):
        return Diamond(f.actions, dual(f.body))
    if isinstance(f, Diamond):
        return Box(f.actions, dual(f.body))
    if isinstance(f, Max):
        return Min(f.var, dual(f.body))
    if isinstance(f, Min):
        return Max(f.var, dual(f.body))
    return f


def actions_of(f: Formula) -> FrozenSet[str]:
    result: FrozenSet[str] = frozenset()
    for node in subformulas(f):
        if isinstance(node, Modal):
            result |= node.actions
    return result
