"""
Tightness: a monitor gives its verdict as soon as the observed prefix settles it.
"""
import logging
from typing import Optional

from recmon.config import get_config
from recmon.errors import PreconditionError
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import classify, require
from recmon.syntax.trace import TraceSpec

from recmon.engine.analysis import verdict_table
from recmon.semantics.evaluator import eval_linear
from recmon.semantics.traces import lassos
from recmon.transform.construct import monitor_dfas

logger = logging.getLogger(__name__)


def _delayed_verdict(n: mn.Monitor, alphabet: Alphabet) -> bool:
    """``n`` is ``rec x.v`` or a sum over the whole alphabet into one verdict ``v``."""
    if isinstance(n, mn.Rec):
        return isinstance(n.body, (mn.Yes, mn.No))
    if not isinstance(n, (mn.Sum, mn.Prefix)):
        return False
    parts = mn.summands(n)
    if not all(isinstance(p, mn.Prefix) for p in parts):
        return False
    bodies = {p.body for p in parts}
    return (len(bodies) == 1 and isinstance(next(iter(bodies)), (mn.Yes, mn.No))
            and {p.action for p in parts} == set(alphabet))


def is_tight_structural(m: mn.Monitor, alphabet: Alphabet) -> bool:
    """No submonitor postpones a verdict that is already certain.

    Raises:
        PreconditionError: ``m`` is not a deterministic regular monitor.
    """
    mn.require_regular(m, "structural tightness")
    if not mn.is_deterministic(m):
        raise PreconditionError("structural tightness needs a syntactically deterministic monitor")
    for n in mn.submonitors(m):
        if _delayed_verdict(n, alphabet):
            logger.debug("not tight: delayed verdict at %r", n)
            return False
    return True


def is_tight(m: mn.Monitor, f: fm.Formula, alphabet: Alphabet,
             horizon: Optional[int] = None, extension_bound: Optional[int] = None) -> bool:
    """Semantic tightness of ``m`` for ``f`` over infinite traces.

    For every prefix ``s`` up to the horizon: when every lasso extending
    ``s`` violates ``f`` the monitor must reject ``s``, and when every one
    satisfies ``f`` it must accept ``s``. For HML the horizon is the modal
    depth of ``f`` and the extensions are exhaustive.
    """
    require(f, operation="tightness")
    depth = fm.modal_depth(f)
    hml = classify(f).HML
    config = get_config()
    if horizon is None:
        if hml:
            horizon = depth
        else:
            d_acc, d_rej = monitor_dfas(m, alphabet)
            horizon = min(d_acc.size * d_rej.size * max(depth, 1), config.tight_horizon)
    if extension_bound is None and not hml:
        extension_bound = config.tight_extension_bound

    table = verdict_table(m, alphabet, horizon)
    for word, (accepted, rejected) in sorted(table.items(), key=lambda item: len(item[0])):
        bound = extension_bound if extension_bound is not None else max(depth - len(word), 1)
        truths = {eval_linear(f, TraceSpec(word + ext.prefix, ext.cycle))
                  for ext in lassos(alphabet, bound)}
        if truths == {False} and not rejected:
            logger.debug("not tight: %s settles violation but is not rejected", word)
            return False
        if truths == {True} and not accepted:
            logger.debug("not tight: %s settles satisfaction but is not accepted", word)
            return False
    return True
