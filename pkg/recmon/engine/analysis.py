"""
State-space exploration: reachable states and reactivity.
"""
import logging
from typing import Dict, FrozenSet, Optional, Set, Tuple

from recmon.config import get_config
from recmon.errors import CapExceededError, OpenTermError
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import TAU, Alphabet

from recmon.engine.steps import can_analyse, step, tau_closure, weak_step

logger = logging.getLogger(__name__)


def explore(m: mn.Monitor, alphabet: Alphabet, cap: Optional[int] = None) -> FrozenSet[mn.Monitor]:
    """Every monitor reachable from ``m`` by tau and external steps (System O)."""
    if not mn.is_closed(m):
        raise OpenTermError(f"monitor has free variables {sorted(mn.free_vars(m))}")
    cap = cap if cap is not None else get_config().tau_cap
    seen: Set[mn.Monitor] = {m}
    frontier = [m]
    labels = (TAU,) + alphabet.actions
    while frontier:
        current = frontier.pop()
        for label in labels:
            for nxt in step(current, label):
                if nxt not in seen:
                    seen.add(nxt)
                    if len(seen) > cap:
                        raise CapExceededError(f"exploration visited more than {cap} monitor states")
                    frontier.append(nxt)
    logger.debug("explored %d monitor states", len(seen))
    return frozenset(seen)


def reach(m: mn.Monitor, alphabet: Alphabet, cap: Optional[int] = None) -> FrozenSet[mn.Monitor]:
    mn.require_regular(m, "reach")
    return explore(m, alphabet, cap)


def is_reactive(m: mn.Monitor, alphabet: Alphabet, cap: Optional[int] = None) -> bool:
    """Every reachable state can weakly analyse every action."""
    for state in explore(m, alphabet, cap):
        for action in alphabet:
            if not can_analyse(state, action, cap=cap):
                logger.debug("not reactive: %r cannot analyse %s", state, action)
                return False
    return True


def verdict_table(m: mn.Monitor, alphabet: Alphabet, bound: int,
                  cap: Optional[int] = None) -> Dict[Tuple[str, ...], Tuple[bool, bool]]:
    """``(accepts, rejects)`` for every trace of length at most ``bound``."""
    table: Dict[Tuple[str, ...], Tuple[bool, bool]] = {}
    frontier = [((), tau_closure({m}, cap=cap))]
    while frontier:
        word, current = frontier.pop()
        table[word] = (mn.YES in current, mn.NO in current)
        if len(word) < bound:
            for action in alphabet:
                frontier.append((word + (action,), weak_step(current, action, cap=cap)))
    return table
