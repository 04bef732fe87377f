"""
Recursion removal for deterministic regular monitors that are complete.
"""
import logging
from typing import Optional

from recmon.errors import CapExceededError, OpenTermError, PreconditionError
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet

from recmon.engine.analysis import reach

logger = logging.getLogger(__name__)


def no_rec(m: mn.Monitor, alphabet: Alphabet, cap: Optional[int] = None) -> mn.Monitor:
    """Unfold every ``rec`` into a finite, recursion-free tree of prefixes.

    A complete deterministic monitor reaches a verdict on every branch
    within ``|reach(m)| + 1`` prefixes; going deeper means it is not complete.

    Raises:
        PreconditionError: ``m`` is not regular or not deterministic.
        CapExceededError: a branch is longer than the cap.
    """
    mn.require_regular(m, "no_rec")
    if not mn.is_closed(m):
        raise OpenTermError(f"monitor has free variables {sorted(mn.free_vars(m))}")
    if not mn.is_deterministic(m):
        raise PreconditionError("no_rec needs a syntactically deterministic monitor")
    limit = cap if cap is not None else len(reach(m, alphabet)) + 1

    def unfold(n: mn.Monitor, depth: int) -> mn.Monitor:
        unfoldings = 0
        while isinstance(n, mn.Rec):
            n = mn.unfold(n)
            unfoldings += 1
            if unfoldings > limit:
                raise CapExceededError("unguarded recursion cannot be removed")
        if isinstance(n, mn.VerdictTerm):
            return n
        if depth >= limit:
            raise CapExceededError(
                f"a branch needs more than {limit} prefixes; the monitor is not complete")
        return mn.choice(mn.Prefix(part.action, unfold(part.body, depth + 1))
                         for part in mn.summands(n))

    result = unfold(m, 0)
    logger.debug("no_rec: length %d -> %d", mn.length(m), mn.length(result))
    return result
