import pytest
from hypothesis import assume, given, settings

from recmon.engine.verdicts import is_consistent
from recmon.errors import InconsistentMonitorError, PreconditionError, ReactivityError
from recmon.semantics.traces import words
from recmon.syntax import monitor as mn
from recmon.syntax.parser import parse_formula, parse_monitor
from recmon.synthesis.linear import synth_complete
from recmon.transform.automata import Dfa, nfa_to_dfa
from recmon.transform.construct import (
    REJECT,
    alternating_to_nfa,
    consistent_exact,
    determinize,
    dfa_to_regular_monitor,
    monitor_dfas,
    monitor_to_alternating,
    pipeline,
    verdict_equivalent,
)

from tests.strategies import AB, reactive_monitors, regular_monitors


def M(text, alphabet):
    return parse_monitor(text, alphabet)


def nfa_for(text, alphabet, polarity="accept"):
    return alternating_to_nfa(monitor_to_alternating(M(text, alphabet), alphabet, polarity))


class TestAutomata:
    def test_non_reactive_disjunction_is_refused(self, ab):
        with pytest.raises(ReactivityError):
            monitor_to_alternating(M("a.a.yes || a.b.yes", ab), ab)

    def test_reactive_sum_with_stuck_disjunction_accepts_nothing(self, ab):
        nfa = nfa_for("(a.yes || b.yes) + (a.end + b.end)", ab)
        assert not any(nfa.accepts(w) for w in words(ab, 4))
        assert nfa_to_dfa(nfa).minimize().is_empty()

    def test_yes_accepts_everything(self, ab):
        nfa = nfa_for("yes", ab)
        assert len(nfa.states) == 1
        assert all(nfa.accepts(w) for w in words(ab, 3))

    def test_sum_of_prefixes(self, ab):
        nfa = nfa_for("a.yes + b.yes", ab)
        assert not nfa.accepts(())
        assert nfa.accepts(("a",)) and nfa.accepts(("b", "a"))

    def test_reject_polarity(self, ab):
        nfa = nfa_for("a.no + b.yes", ab, REJECT)
        assert nfa.accepts(("a",)) and not nfa.accepts(("b",))

    def test_conjunction_needs_both(self, ab):
        automaton = monitor_to_alternating(M("(a.yes + b.yes) && (a.(a.yes + b.yes) + b.yes)", ab), ab)
        assert automaton.accepts(("b",))
        assert not automaton.accepts(("a",))
        assert automaton.accepts(("a", "b"))

    def test_minimized_dfa_is_equivalent(self, ab):
        dfa = nfa_to_dfa(nfa_for("rec x.(a.a.x + b.yes)", ab))
        small = dfa.minimize()
        assert small.size <= dfa.size
        assert small.equivalent(dfa)
        assert all(small.accepts(w) == dfa.accepts(w) for w in words(ab, 5))

    @settings(max_examples=30, deadline=None)
    @given(reactive_monitors)
    def test_state_bounds(self, m):
        automaton = monitor_to_alternating(m, AB)
        assert len(automaton.states) <= mn.length(m)
        assert len(alternating_to_nfa(automaton).states) <= 2 ** mn.length(m)


class TestRegularMonitors:
    def test_round_trip_of_deterministic_monitor(self, ab):
        assert pipeline(M("a.yes + b.no", ab), ab) == M("a.yes + b.no", ab)

    def test_empty_languages_give_end(self, ab):
        d_acc, d_rej = monitor_dfas(mn.END, ab)
        assert d_acc.is_empty() and d_rej.is_empty()
        assert dfa_to_regular_monitor(d_acc, d_rej) == mn.END

    def test_overlapping_languages(self, ab):
        everything = Dfa(1, ab, 0, {(0, "a"): 0, (0, "b"): 0}, frozenset({0}))
        with pytest.raises(InconsistentMonitorError):
            dfa_to_regular_monitor(everything, everything)

    def test_determinize_merges_prefixes(self, ab):
        assert determinize(M("a.b.yes + a.a.no", ab), ab) == M("a.(a.no + b.yes)", ab)
        assert determinize(mn.YES, ab) == mn.YES

    def test_determinize_recursive_monitor(self, ab):
        m = M("rec x.(a.x + a.b.yes)", ab)
        d = determinize(m, ab)
        assert mn.is_deterministic(d)
        assert verdict_equivalent(m, d, ab, bound=6)
        assert verdict_equivalent(m, d, ab)

    def test_determinize_refuses_inconsistent_and_parallel(self, ab):
        with pytest.raises(InconsistentMonitorError):
            determinize(M("a.yes + a.no", ab), ab)
        with pytest.raises(PreconditionError):
            determinize(M("a.yes && b.yes", ab), ab)

    def test_reactive_parallel_to_regular(self, ab):
        m = M("(a.yes + b.end) && (b.yes + a.end)", ab)
        regular = pipeline(m, ab, reactive=True)
        assert mn.is_regular(regular) and mn.is_deterministic(regular)
        assert verdict_equivalent(m, regular, ab, bound=5)

    def test_synthesized_monitor_survives_pipeline(self, ab):
        m = synth_complete(parse_formula("[a][a]ff & <b>tt | [b]ff", ab), ab)
        assert verdict_equivalent(m, pipeline(m, ab), ab, bound=5)
        assert verdict_equivalent(m, pipeline(m, ab), ab)

    def test_equivalence(self, ab):
        assert not verdict_equivalent(mn.YES, mn.NO, ab)
        assert verdict_equivalent(M("a.yes", ab), M("a.yes + a.yes", ab), ab)
        assert verdict_equivalent(M("rec x.a.x", ab), mn.END, ab)

    @settings(max_examples=40, deadline=None)
    @given(regular_monitors)
    def test_determinize_preserves_verdicts(self, m):
        assume(is_consistent(m, AB))
        d = determinize(m, AB)
        assert mn.is_deterministic(d)
        assert verdict_equivalent(m, d, AB, bound=5)

    @settings(max_examples=25, deadline=None)
    @given(reactive_monitors)
    def test_pipeline_preserves_verdicts(self, m):
        assume(consistent_exact(m, AB))
        regular = pipeline(m, AB, reactive=True)
        assert verdict_equivalent(m, regular, AB, bound=4)
