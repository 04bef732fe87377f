"""
Brute-force correctness checks of monitors against formula semantics.

Each check returns the counterexamples it found; an empty list means the
property holds on everything inspected.
"""
from typing import Iterable, List, Optional

from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.monitor import Verdict
from recmon.syntax.trace import TraceSpec

from recmon.engine.instrument import Exhaustive, instrument_run
from recmon.engine.verdicts import lasso_verdict
from recmon.semantics.evaluator import eval_branching, eval_linear
from recmon.semantics.lts import Lts, State
from recmon.semantics.traces import lassos
from recmon.synthesis.branching import SATISFACTION, VIOLATION

COMPLETE = "complete"


def linear_soundness(m: mn.Monitor, f: fm.Formula, alphabet: Alphabet, bound: int) -> List[TraceSpec]:
    """Lassos up to ``bound`` on which ``m`` gives a verdict that ``f`` contradicts."""
    failures = []
    for t in lassos(alphabet, bound):
        verdict = lasso_verdict(m, t, alphabet)
        if verdict in (Verdict.YES, Verdict.NO) and (verdict is Verdict.YES) != eval_linear(f, t):
            failures.append(t)
    return failures


def linear_completeness(m: mn.Monitor, f: fm.Formula, alphabet: Alphabet, bound: int,
                        mode: str = COMPLETE) -> List[TraceSpec]:
    """Lassos up to ``bound`` whose status under ``f`` ``m`` fails to report.

    ``mode`` selects which status must be reported: ``complete`` (both),
    ``violation`` or ``satisfaction``.
    """
    failures = []
    for t in lassos(alphabet, bound):
        holds = eval_linear(f, t)
        verdict = lasso_verdict(m, t, alphabet)
        if not holds and mode in (COMPLETE, VIOLATION) and verdict is not Verdict.NO:
            failures.append(t)
        elif holds and mode in (COMPLETE, SATISFACTION) and verdict is not Verdict.YES:
            failures.append(t)
    return failures


def branching_rejects(m: mn.Monitor, f: fm.Formula, lts: Lts, depth: int,
                      polarity: str = VIOLATION, states: Optional[Iterable[State]] = None) -> List[State]:
    """States of ``lts`` where the instrumented verdicts of ``m`` disagree with ``f``.

    With ``violation`` polarity a state must be rejected along some run
    (traces up to ``depth``) exactly when it violates ``f``; ``satisfaction``
    is the dual with acceptance. ``states`` defaults to every state.
    """
    target = Verdict.NO if polarity == VIOLATION else Verdict.YES
    failures = []
    for state in sorted(lts.states if states is None else states, key=repr):
        outcomes = instrument_run(m, lts, Exhaustive(depth), state=state)
        flagged = any(verdict is target for _, verdict in outcomes)
        holds = eval_branching(f, lts, state)
        if flagged != (holds if target is Verdict.YES else not holds):
            failures.append(state)
    return failures
