import pytest
from hypothesis import given, settings

from recmon.engine.analysis import explore, is_reactive, reach, verdict_table
from recmon.engine.instrument import Exhaustive, RandomRun, instrument_run, instrumented_after, moves
from recmon.engine.steps import System, accepts, rejects, step, verdicts_after, weak_after
from recmon.engine.verdicts import finite_verdict, is_consistent, lasso_verdict
from recmon.errors import CapExceededError, InconsistentMonitorError
from recmon.semantics.lts import Lts, lts_from_process
from recmon.semantics.traces import words
from recmon.syntax import monitor as mn
from recmon.syntax.monitor import Verdict
from recmon.syntax.parser import parse_formula, parse_monitor, parse_process, parse_trace
from recmon.synthesis.linear import synth_complete

from tests.strategies import reactive_monitors, words as word_strategy


def M(text, alphabet):
    return parse_monitor(text, alphabet)


class TestSteps:
    def test_recursion_unfolds_silently(self, ab):
        m = M("rec x.(a.x + b.yes)", ab)
        assert step(m, "tau") == {mn.Sum(mn.Prefix("a", m), mn.Prefix("b", mn.YES))}
        assert step(m, "a") == set()

    def test_verdicts_persist(self, ab):
        for v in (mn.YES, mn.NO, mn.END):
            assert step(v, "a") == {v}
            assert step(v, "tau") == set()

    def test_parallel_verdict_rules(self, ab):
        m = M("a.yes", ab)
        assert m in step(mn.Conj(mn.YES, m), "tau")
        assert step(mn.Conj(mn.NO, m), "tau") == {mn.NO}
        assert step(mn.Disj(mn.YES, m), "tau") == {mn.YES}
        assert step(mn.Conj(mn.END, mn.END), "tau") == {mn.END}

    def test_acceptance(self, ab):
        assert accepts(M("rec x.(a.x + b.yes)", ab), ("a", "b"))
        assert not accepts(M("rec x.(a.x + b.yes)", ab), ("a", "a"))
        assert rejects(M("a.no + b.yes", ab), ("a", "b"))

    def test_disjunction_needs_both_sides_to_move(self, ab):
        m = M("a.a.yes || a.b.yes", ab)
        assert not any(accepts(m, w) for w in words(ab, 4))

    def test_reactive_conjunction_never_rejects(self, ab):
        m = M("(a.yes + b.end) && (b.yes + a.end)", ab)
        assert not any(rejects(m, w) for w in words(ab, 6))

    def test_system_n_agrees_on_examples(self, ab):
        for text in ("rec x.(a.x + b.yes)", "rec x.(a.a.x + b.no)", "rec x.(a.x + b.yes) && rec y.(b.y + a.no)"):
            m = M(text, ab)
            binders = mn.binder_map(m)
            for w in words(ab, 4):
                assert verdicts_after(m, w) == verdicts_after(m, w, system=System.N, binders=binders)

    @settings(max_examples=40, deadline=None)
    @given(reactive_monitors, word_strategy)
    def test_system_n_agrees(self, m, w):
        m = mn.rename_binders(m)
        assert verdicts_after(m, w) == verdicts_after(m, w, system=System.N, binders=mn.binder_map(m))

    @settings(max_examples=40, deadline=None)
    @given(reactive_monitors, word_strategy, word_strategy)
    def test_verdicts_are_irrevocable(self, m, u, v):
        for verdict in verdicts_after(m, u):
            assert verdict in verdicts_after(m, u + v)

    def test_tau_cap(self, ab):
        m = M("rec x.(a.x + b.yes)", ab)
        with pytest.raises(CapExceededError):
            weak_after(m, ("a", "a", "a"), cap=1)


class TestAnalysis:
    @pytest.mark.parametrize("text, count", [
        ("rec x.(a.x + b.yes)", 3),
        ("a.b.yes + a.a.no", 5),
        ("rec x.(a.a.x + b.yes)", 4),
    ])
    def test_reach_matches_states(self, ab, text, count):
        m = M(text, ab)
        assert reach(m, ab) == mn.states(m)
        assert len(reach(m, ab)) == count <= mn.size(m)

    def test_reactivity(self, ab):
        assert not is_reactive(M("a.yes && b.no", ab), ab)
        assert is_reactive(M("(a.yes + b.end) && (b.yes + a.end)", ab), ab)
        assert is_reactive(M("(a.yes || b.yes) + (a.end + b.end)", ab), ab)
        assert not is_reactive(M("a.yes", ab), ab)

    def test_explore_includes_parallel_states(self, ab):
        states = explore(M("a.yes && a.no", ab), ab)
        assert mn.NO in states

    def test_verdict_table(self, ab):
        table = verdict_table(M("a.yes + b.no", ab), ab, 2)
        assert table[()] == (False, False)
        assert table[("a", "b")] == (True, False)
        assert table[("b",)] == (False, True)
        assert len(table) == 7


class TestVerdicts:
    def test_lasso_verdicts(self, ab):
        m = synth_complete(parse_formula("[a][a]ff", ab), ab)
        assert lasso_verdict(m, parse_trace("(ab)", ab), ab) is Verdict.YES
        assert lasso_verdict(m, parse_trace("(a)", ab), ab) is Verdict.NO
        waiting = M("rec x.(a.x + b.yes)", ab)
        assert lasso_verdict(waiting, parse_trace("(a)", ab), ab) is Verdict.NONE
        assert lasso_verdict(mn.END, parse_trace("(a)", ab), ab) is Verdict.END

    def test_finite_verdicts(self, ab):
        assert finite_verdict(M("a.yes + b.no", ab), ("b",)) is Verdict.NO
        assert finite_verdict(M("a.yes + b.no", ab), ()) is Verdict.NONE
        assert finite_verdict(mn.END, ("a",)) is Verdict.END
        with pytest.raises(InconsistentMonitorError):
            finite_verdict(M("a.yes + a.no", ab), ("a",))

    def test_consistency(self, ab):
        assert not is_consistent(M("a.yes + a.no", ab), ab)
        assert is_consistent(M("a.yes + b.no", ab), ab)
        assert not is_consistent(M("(a.yes + a.no) && (a.yes + b.yes)", ab), ab, bound=2)
        assert is_consistent(M("yes && no", ab), ab, bound=3)


class TestInstrumentation:
    def test_monitor_reaches_yes(self, ab):
        m = M("rec x.(a.x + b.yes)", ab)
        lts = lts_from_process(parse_process("a.rec y.b.y", ab), ab)
        assert (("a", "b"), Verdict.YES) in instrument_run(m, lts, Exhaustive(2))

    def test_premature_termination(self, ab):
        m = M("rec x.(a.a.x + b.yes)", ab)
        lts = lts_from_process(parse_process("a.rec y.b.y", ab), ab)
        outcomes = instrument_run(m, lts, Exhaustive(2))
        assert (("a", "b"), Verdict.END) in outcomes
        assert not any(v is Verdict.YES for _, v in outcomes)

    def test_verdict_before_any_action(self, ab):
        lts = lts_from_process(parse_process("nil", ab), ab)
        assert instrument_run(mn.YES, lts, Exhaustive(3)) == {((), Verdict.YES)}

    def test_rules_are_labelled(self, ab):
        lts = Lts(ab, 0, [(0, "a", 1), (0, "tau", 0)], [0, 1])
        rules = {rule for *_, rule in moves(M("b.yes", ab), lts, 0)}
        assert rules == {"iTer", "iAsyP"}
        rules = {rule for *_, rule in moves(M("rec x.a.x", ab), lts, 0)}
        assert rules == {"iAsyP", "iAsyM"}

    def test_instrumented_after(self, ab):
        lts = lts_from_process(parse_process("a.b.nil", ab), ab)
        configs = instrumented_after(M("a.b.no", ab), lts, ("a", "b"))
        assert {m for m, _ in configs} == {mn.NO}

    def test_random_runs_are_reproducible(self, ab):
        m = M("rec x.(a.x + b.yes)", ab)
        lts = lts_from_process(parse_process("rec y.(a.y + b.nil)", ab), ab)
        first = instrument_run(m, lts, RandomRun(seed=11, fuel=60))
        second = instrument_run(m, lts, RandomRun(seed=11, fuel=60))
        assert first.events == second.events
        assert first.verdict in (Verdict.YES, Verdict.NONE)
        visible = tuple(e.label for e in first.events if e.label != "tau")
        assert visible == first.trace
        assert len(first.lines()) == len(first.events)
