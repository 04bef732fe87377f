"""
Small-step dynamics of regular and parallel monitors.

System O unfolds ``rec x.m`` to ``m[rec x.m/x]`` with a tau step. System N
instead steps ``rec x.m`` to ``m`` and a free ``x`` to the body of its
binder, which keeps every reachable term a submonitor of the original.
"""
import enum
import logging
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, Mapping, Optional, Set, Tuple

from recmon.config import get_config
from recmon.errors import CapExceededError
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import TAU

logger = logging.getLogger(__name__)

EMPTY: FrozenSet[mn.Monitor] = frozenset()
Binders = Tuple[Tuple[str, mn.Monitor], ...]


class System(str, enum.Enum):
    O = "O"
    N = "N"


def freeze_binders(binders: Optional[Mapping[str, mn.Monitor]]) -> Binders:
    if not binders:
        return ()
    return tuple(sorted(binders.items(), key=lambda item: item[0]))


def step(m: mn.Monitor, label: str, system: System = System.O,
         binders: Optional[Mapping[str, mn.Monitor]] = None) -> FrozenSet[mn.Monitor]:
    """Monitors reachable from ``m`` in one ``label`` step (``label`` may be tau)."""
    return _step(m, label, System(system), freeze_binders(binders))


@lru_cache(maxsize=1 << 18)
def _step(m: mn.Monitor, label: str, system: System, binders: Binders) -> FrozenSet[mn.Monitor]:
    if isinstance(m, mn.VerdictTerm):
        # mVer
        return EMPTY if label == TAU else frozenset({m})
    if isinstance(m, mn.Prefix):
        # mAct
        return frozenset({m.body}) if label == m.action else EMPTY
    if isinstance(m, mn.Sum):
        # mSelL, mSelR
        return _step(m.left, label, system, binders) | _step(m.right, label, system, binders)
    if isinstance(m, mn.Rec):
        if label != TAU:
            return EMPTY
        if system is System.O:
            return frozenset({mn.unfold(m)})
        return frozenset({m.body})
    if isinstance(m, mn.MVar):
        if system is System.N and label == TAU:
            for name, body in binders:
                if name == m.name:
                    return frozenset({body})
        return EMPTY

    op = type(m)
    left, right = m.left, m.right
    if label != TAU:
        # mPar: both sides must analyse the action
        rights = _step(right, label, system, binders)
        return frozenset(op(l2, r2) for l2 in _step(left, label, system, binders) for r2 in rights)

    result: Set[mn.Monitor] = set()
    result.update(op(l2, right) for l2 in _step(left, TAU, system, binders))
    result.update(op(left, r2) for r2 in _step(right, TAU, system, binders))
    if left == mn.END and right == mn.END:
        result.add(mn.END)
    if op is mn.Conj:
        if left == mn.YES:
            result.add(right)
        if right == mn.YES:
            result.add(left)
        if mn.NO in (left, right):
            result.add(mn.NO)
    else:
        if left == mn.NO:
            result.add(right)
        if right == mn.NO:
            result.add(left)
        if mn.YES in (left, right):
            result.add(mn.YES)
    return frozenset(result)


def tau_closure(monitors: Iterable[mn.Monitor], system: System = System.O,
                binders: Optional[Mapping[str, mn.Monitor]] = None,
                cap: Optional[int] = None) -> FrozenSet[mn.Monitor]:
    """All monitors reachable by zero or more tau steps."""
    cap = cap if cap is not None else get_config().tau_cap
    frozen = freeze_binders(binders)
    seen: Set[mn.Monitor] = set(monitors)
    frontier = list(seen)
    while frontier:
        current = frontier.pop()
        for nxt in _step(current, TAU, System(system), frozen):
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceededError(
                        f"tau-closure visited more than {cap} distinct monitor states")
                frontier.append(nxt)
    return frozenset(seen)


def weak_step(monitors: Iterable[mn.Monitor], action: str, system: System = System.O,
              binders: Optional[Mapping[str, mn.Monitor]] = None,
              cap: Optional[int] = None) -> FrozenSet[mn.Monitor]:
    """From a tau-closed set, take one ``action`` step and close again."""
    frozen = freeze_binders(binders)
    moved: Set[mn.Monitor] = set()
    for current in monitors:
        moved |= _step(current, action, System(system), frozen)
    return tau_closure(moved, system, binders, cap)


def weak_after(m: mn.Monitor, trace: Iterable[str], system: System = System.O,
               binders: Optional[Mapping[str, mn.Monitor]] = None,
               cap: Optional[int] = None) -> FrozenSet[mn.Monitor]:
    """Every ``n`` with ``m =trace=> n``."""
    current = tau_closure({m}, system, binders, cap)
    for action in trace:
        if not current:
            break
        current = weak_step(current, action, system, binders, cap)
    return current


def can_analyse(m: mn.Monitor, action: str, system: System = System.O,
                binders: Optional[Mapping[str, mn.Monitor]] = None,
                cap: Optional[int] = None) -> bool:
    return bool(weak_after(m, (action,), system, binders, cap))


def accepts(m: mn.Monitor, trace: Iterable[str], **kwargs) -> bool:
    return mn.YES in weak_after(m, trace, **kwargs)


def rejects(m: mn.Monitor, trace: Iterable[str], **kwargs) -> bool:
    return mn.NO in weak_after(m, trace, **kwargs)


def verdicts_after(m: mn.Monitor, trace: Iterable[str], **kwargs) -> FrozenSet[mn.Verdict]:
    return frozenset(v for v in (mn.verdict_of(n) for n in weak_after(m, trace, **kwargs)) if v)


def clear_caches() -> None:
    _step.cache_clear()
