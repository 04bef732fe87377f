"""
Monitor synthesis for linear-time properties.

``synth_complete`` covers the fixpoint-free fragment and yields monitors
that are sound and complete; ``synth_partial`` extends the same clauses with
recursion for the max (violation) and min (satisfaction) fragments.
"""
import logging
from typing import Dict

from recmon.errors import AlphabetError, FragmentError
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import classify, require

logger = logging.getLogger(__name__)


def monitor_names(f: fm.Formula) -> Dict[str, str]:
    """Lower-case monitor variable for each formula variable, kept distinct."""
    names: Dict[str, str] = {}
    taken = set()
    for var in sorted(fm.bound_vars(f) | fm.free_vars(f)):
        name = fm.fresh_name(var.lower(), taken)
        taken.add(name)
        names[var] = name
    return names


def check_actions(f: fm.Formula, alphabet: Alphabet) -> None:
    unknown = fm.actions_of(f) - alphabet.all
    if unknown:
        raise AlphabetError(f"formula uses actions {sorted(unknown)} outside alphabet {{{alphabet}}}")


def _translate(f: fm.Formula, alphabet: Alphabet, names: Dict[str, str]) -> mn.Monitor:
    if isinstance(f, fm.Tt):
        return mn.YES
    if isinstance(f, fm.Ff):
        return mn.NO
    if isinstance(f, fm.And):
        return mn.Conj(_translate(f.left, alphabet, names), _translate(f.right, alphabet, names))
    if isinstance(f, fm.Or):
        return mn.Disj(_translate(f.left, alphabet, names), _translate(f.right, alphabet, names))
    if isinstance(f, fm.Modal):
        body = _translate(f.body, alphabet, names)
        main = mn.prefixes(alphabet.ordered(f.actions), body)
        fallback = mn.YES if isinstance(f, fm.Box) else mn.NO
        rest = mn.prefixes(alphabet.ordered(alphabet.complement(f.actions)), fallback)
        return main if rest is None else mn.choice(mn.summands(main) + mn.summands(rest))
    if isinstance(f, fm.Fixpoint):
        return mn.Rec(names[f.var], _translate(f.body, alphabet, names))
    return mn.MVar(names[f.name])


def synth_complete(f: fm.Formula, alphabet: Alphabet) -> mn.Monitor:
    """Sound and complete parallel monitor for an HML formula.

    Raises:
        FragmentError: ``f`` has fixpoints or variables.
    """
    require(f, "HML", operation="complete synthesis")
    check_actions(f, alphabet)
    return _translate(f, alphabet, {})


def partial_mode(f: fm.Formula) -> str:
    """Completeness direction of partial synthesis: violation for ltmuS, satisfaction for ltmuC."""
    fragment = classify(f)
    if fragment.ltmuS:
        return "violation"
    if fragment.ltmuC:
        return "satisfaction"
    raise FragmentError("formula mixes max and min fixpoints")


def synth_partial(f: fm.Formula, alphabet: Alphabet) -> mn.Monitor:
    """Sound monitor, violation-complete for ltmuS and satisfaction-complete for ltmuC."""
    require(f, "ltmuS", "ltmuC", operation="partial synthesis")
    check_actions(f, alphabet)
    monitor = _translate(f, alphabet, monitor_names(f))
    logger.debug("partial synthesis (%s): monitor length %d", partial_mode(f), mn.length(monitor))
    return monitor
