"""
Verdicts of monitors on finite traces and lassos.
"""
import logging
from typing import Optional

from recmon.config import get_config
from recmon.errors import InconsistentMonitorError
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.monitor import Verdict
from recmon.syntax.trace import TraceSpec

from recmon.engine.analysis import verdict_table
from recmon.engine.steps import weak_after
from recmon.transform.construct import consistent_exact, monitor_dfas

logger = logging.getLogger(__name__)


def lasso_verdict(m: mn.Monitor, t: TraceSpec, alphabet: Alphabet) -> Verdict:
    """Verdict of ``m`` on the infinite word ``t``.

    The acceptance and rejection DFAs are run in lock step until their pair
    of states must have repeated inside the cycle.
    """
    if not t.is_lasso:
        return finite_verdict(m, t.prefix)
    for action in t.prefix + t.cycle:
        alphabet.check(action)
    d_acc, d_rej = monitor_dfas(m, alphabet)
    steps = len(t.prefix) + len(t.cycle) * d_acc.size * d_rej.size
    p, q = d_acc.start, d_rej.start
    letters = t.letters()
    for i in range(steps + 1):
        accepted, rejected = p in d_acc.accepting, q in d_rej.accepting
        if accepted and rejected:
            raise InconsistentMonitorError(f"trace prefix {t.take(i)} is both accepted and rejected")
        if accepted:
            return Verdict.YES
        if rejected:
            return Verdict.NO
        if i < steps:
            action = next(letters)
            p, q = d_acc.delta[(p, action)], d_rej.delta[(q, action)]
    if p not in d_acc.coaccessible() and q not in d_rej.coaccessible():
        return Verdict.END
    return Verdict.NONE


def finite_verdict(m: mn.Monitor, trace) -> Verdict:
    reached = weak_after(m, trace)
    if mn.YES in reached and mn.NO in reached:
        raise InconsistentMonitorError(f"trace {tuple(trace)} is both accepted and rejected")
    if mn.YES in reached:
        return Verdict.YES
    if mn.NO in reached:
        return Verdict.NO
    if reached and all(n == mn.END for n in reached):
        return Verdict.END
    return Verdict.NONE


def is_consistent(m: mn.Monitor, alphabet: Alphabet, bound: Optional[int] = None) -> bool:
    """No finite trace is both accepted and rejected.

    Exact for regular monitors; parallel monitors are checked on traces up
    to ``bound`` (default ``RECMON_CONSISTENCY_BOUND``).
    """
    if mn.is_regular(m):
        return consistent_exact(m, alphabet)
    bound = bound if bound is not None else get_config().consistency_bound
    logger.debug("bounded consistency check up to length %d", bound)
    return not any(acc and rej for acc, rej in verdict_table(m, alphabet, bound).values())
