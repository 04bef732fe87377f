"""
Single-verdict monitors for the branching-time safety and co-safety fragments.
"""
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import require

from recmon.synthesis.linear import check_actions, monitor_names

VIOLATION = "violation"
SATISFACTION = "satisfaction"


def synth_branching(f: fm.Formula, alphabet: Alphabet, polarity: str = VIOLATION) -> mn.Monitor:
    """Regular rejection monitor for sHML (``violation``) or acceptance monitor for cHML.

    Raises:
        FragmentError: ``f`` is not in sHML (resp. cHML).
    """
    if polarity == VIOLATION:
        require(f, "sHML", operation="branching violation synthesis")
    elif polarity == SATISFACTION:
        require(f, "cHML", operation="branching satisfaction synthesis")
    else:
        raise ValueError(f"unknown polarity {polarity!r}")
    check_actions(f, alphabet)
    names = monitor_names(f)
    verdict = mn.NO if polarity == VIOLATION else mn.YES
    trivial = fm.Tt if polarity == VIOLATION else fm.Ff

    def sm(node: fm.Formula) -> mn.Monitor:
        if isinstance(node, trivial):
            return mn.END
        if isinstance(node, (fm.Tt, fm.Ff)):
            return verdict
        if isinstance(node, (fm.Box, fm.Diamond)):
            return mn.prefixes(alphabet.ordered(node.actions), sm(node.body))
        if isinstance(node, (fm.And, fm.Or)):
            return mn.Sum(sm(node.left), sm(node.right))
        if isinstance(node, (fm.Max, fm.Min)):
            return mn.Rec(names[node.var], sm(node.body))
        return mn.MVar(names[node.name])

    return sm(f)
