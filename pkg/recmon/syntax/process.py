"""
Regular CCS process terms.
"""
from dataclasses import dataclass
from typing import FrozenSet, Union


@dataclass(frozen=True)
class Nil:
    pass


@dataclass(frozen=True)
class Act:
    """``action.body``; ``action`` may be ``tau``."""

    action: str
    body: "Process"


@dataclass(frozen=True)
class Choice:
    left: "Process"
    right: "Process"


@dataclass(frozen=True)
class PRec:
    var: str
    body: "Process"


@dataclass(frozen=True)
class PVar:
    name: str


Process = Union[Nil, Act, Choice, PRec, PVar]

NIL = Nil()


def children(p: Process) -> tuple:
    if isinstance(p, Choice):
        return (p.left, p.right)
    if isinstance(p, (Act, PRec)):
        return (p.body,)
    return ()


def free_vars(p: Process) -> FrozenSet[str]:
    if isinstance(p, PVar):
        return frozenset({p.name})
    if isinstance(p, PRec):
        return free_vars(p.body) - {p.var}
    result: FrozenSet[str] = frozenset()
    for child in children(p):
        result |= free_vars(child)
    return result


def substitute(p: Process, var: str, replacement: Process) -> Process:
    if isinstance(p, PVar):
        return replacement if p.name == var else p
    if isinstance(p, PRec):
        return p if p.var == var else PRec(p.var, substitute(p.body, var, replacement))
    if isinstance(p, Act):
        return Act(p.action, substitute(p.body, var, replacement))
    if isinstance(p, Choice):
        return Choice(substitute(p.left, var, replacement), substitute(p.right, var, replacement))
    return p


def is_guarded(p: Process) -> bool:
    """Every recursion variable occurs under a prefix inside its binder."""

    def walk(node: Process, unguarded: FrozenSet[str]) -> bool:
        if isinstance(node, PVar):
            return node.name not in unguarded
        if isinstance(node, PRec):
            return walk(node.body, unguarded | {node.var})
        if isinstance(node, Act):
            return walk(node.body, frozenset())
        return all(walk(child, unguarded) for child in children(node))

    return walk(p, frozenset())


def actions_of(p: Process) -> FrozenSet[str]:
    if isinstance(p, Act):
        return frozenset({p.action}) | actions_of(p.body)
    result: FrozenSet[str] = frozenset()
    for child in children(p):
        result |= actions_of(child)
    return result


def rename_binders(p: Process) -> Process:
    """Alpha-rename so that every ``rec`` binds a distinct variable."""
    taken = set(free_vars(p))

    def walk(node: Process, scope: dict) -> Process:
        if isinstance(node, PVar):
            return PVar(scope.get(node.name, node.name))
        if isinstance(node, PRec):
            name, index = node.var, 1
            while name in taken:
                name = f"{node.var}{index}"
                index += 1
            taken.add(name)
            return PRec(name, walk(node.body, {**scope, node.var: name}))
        if isinstance(node, Act):
            return Act(node.action, walk(node.body, scope))
        if isinstance(node, Choice):
            return Choice(walk(node.left, scope), walk(node.right, scope))
        return node

    return walk(p, {})
