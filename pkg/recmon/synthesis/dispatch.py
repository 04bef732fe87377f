"""
Mode-based entry point for synthesis.
"""
import enum

from recmon.errors import FragmentError
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import classify, require

from recmon.synthesis.branching import SATISFACTION, VIOLATION, synth_branching
from recmon.synthesis.linear import synth_complete, synth_partial


class SynthesisMode(str, enum.Enum):
    AUTO = "auto"
    COMPLETE = "complete"
    VIOLATION = "violation"
    SATISFACTION = "satisfaction"
    BRANCHING_VIOLATION = "branching-violation"
    BRANCHING_SATISFACTION = "branching-satisfaction"


def resolve_mode(f: fm.Formula, mode: SynthesisMode) -> SynthesisMode:
    mode = SynthesisMode(mode)
    if mode is not SynthesisMode.AUTO:
        return mode
    fragment = classify(f)
    if fragment.HML:
        return SynthesisMode.COMPLETE
    if fragment.ltmuS:
        return SynthesisMode.VIOLATION
    if fragment.ltmuC:
        return SynthesisMode.SATISFACTION
    raise FragmentError("formula mixes max and min fixpoints and is not monitorable")


def synthesize(f: fm.Formula, alphabet: Alphabet, mode: SynthesisMode = SynthesisMode.AUTO) -> mn.Monitor:
    """Synthesize a monitor for ``f``; ``auto`` picks the strongest mode the fragment allows."""
    mode = resolve_mode(f, mode)
    if mode is SynthesisMode.COMPLETE:
        return synth_complete(f, alphabet)
    if mode is SynthesisMode.VIOLATION:
        require(f, "ltmuS", "ftmuS", operation="violation synthesis")
        return synth_partial(f, alphabet)
    if mode is SynthesisMode.SATISFACTION:
        require(f, "ltmuC", "ftmuC", operation="satisfaction synthesis")
        return synth_partial(f, alphabet)
    if mode is SynthesisMode.BRANCHING_VIOLATION:
        return synth_branching(f, alphabet, VIOLATION)
    return synth_branching(f, alphabet, SATISFACTION)
