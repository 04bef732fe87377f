"""
From monitors back to formulas.

``formula_from_monitor`` reads an HML formula off a finite deterministic
monitor; ``extract_complete_formula`` first brings any sound and complete
monitor into that shape. ``red`` adds redundant acceptances without
changing what a monitor rejects.
"""
import logging
from typing import Callable, TypeVar

from recmon.errors import OpenTermError, PipelineStageError, PreconditionError, RecmonError
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.printer import format_formula, format_monitor

from recmon.engine.analysis import is_reactive
from recmon.normalize.norec import no_rec
from recmon.transform.construct import _check_disjoint, dfa_to_regular_monitor, monitor_dfas

logger = logging.getLogger(__name__)

T = TypeVar("T")


def formula_from_monitor(m: mn.Monitor, alphabet: Alphabet) -> fm.Formula:
    """HML formula for which ``m`` is sound and complete.

    ``end`` translates to ``tt``.

    Raises:
        PreconditionError: ``m`` is not recursion-free, deterministic and reactive.
    """
    mn.require_regular(m, "formula extraction")
    if not mn.is_closed(m):
        raise OpenTermError(f"monitor has free variables {sorted(mn.free_vars(m))}")
    if not mn.is_recursion_free(m):
        raise PreconditionError("formula extraction needs a recursion-free monitor")
    if not mn.is_deterministic(m):
        raise PreconditionError("formula extraction needs a syntactically deterministic monitor")
    if not is_reactive(m, alphabet):
        raise PreconditionError(f"monitor {format_monitor(m)} is not reactive")
    return _msyn(m, alphabet)


def _msyn(m: mn.Monitor, alphabet: Alphabet) -> fm.Formula:
    if isinstance(m, mn.No):
        return fm.FF
    if isinstance(m, (mn.Yes, mn.End)):
        return fm.TT
    branches = {p.action: p.body for p in mn.summands(m)}
    return fm.conjoin(fm.Box(frozenset({a}), _msyn(branches[a], alphabet))
                      for a in alphabet.ordered(branches))


def red(m: mn.Monitor, alphabet: Alphabet) -> mn.Monitor:
    """Monitor rejecting exactly what ``m`` rejects, accepting wherever ``m`` would stop."""
    if isinstance(m, mn.End):
        return mn.YES
    if isinstance(m, mn.Sum):
        return mn.Conj(red(m.left, alphabet), red(m.right, alphabet))
    if isinstance(m, mn.Prefix):
        main = mn.Prefix(m.action, red(m.body, alphabet))
        rest = mn.prefixes(alphabet.ordered(alphabet.complement({m.action})), mn.YES)
        return main if rest is None else mn.choice([main] + mn.summands(rest))
    parts = mn.children(m)
    if not parts:
        return m
    return mn.rebuild(m, tuple(red(part, alphabet) for part in parts))


def _stage(name: str, run: Callable[..., T], *args, **kwargs) -> T:
    try:
        return run(*args, **kwargs)
    except RecmonError as exc:
        logger.debug("extraction stage %s failed: %s", name, exc.detail)
        raise PipelineStageError(name, exc) from exc


def extract_complete_formula(m: mn.Monitor, alphabet: Alphabet) -> fm.Formula:
    """HML formula monitored by ``m``, assuming ``m`` is sound and complete for something.

    Raises:
        PipelineStageError: naming the stage (transform, determinize, no_rec,
            formula_from_monitor) whose precondition failed.
    """
    d_acc, d_rej = _stage("transform", monitor_dfas, m, alphabet)
    _stage("determinize", _check_disjoint, d_acc, d_rej)
    regular = _stage("determinize", dfa_to_regular_monitor, d_acc, d_rej, reactive=True)
    finite = _stage("no_rec", no_rec, regular, alphabet)
    result = _stage("formula_from_monitor", formula_from_monitor, finite, alphabet)
    logger.debug("extracted %s from %s", format_formula(result), format_monitor(m))
    return result
