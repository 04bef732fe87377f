import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recmon.cli.corpus import random_lts
from recmon.cli.files import load_lts
from recmon.engine.verdicts import finite_verdict
from recmon.errors import InputError, UnguardedError
from recmon.semantics.evaluator import (BranchingModel, FixpointEvaluator, TraceModel, eval_branching,
                                        eval_finfinite, eval_linear, satisfying_states)
from recmon.semantics.lts import Lts, lts_from_process
from recmon.semantics.traces import finite_traces, lassos, produced_finfinite_traces, trace_process
from recmon.syntax import formula as fm
from recmon.syntax.monitor import Verdict
from recmon.syntax.parser import parse_formula, parse_process, parse_trace
from recmon.syntax.trace import TraceSpec
from recmon.synthesis.linear import synth_complete

from tests.strategies import (AB, finite_traces as finite_trace_strategy, hml, lassos as lasso_strategy,
                              max_formulas, min_formulas, safety_formulas, cosafety_formulas, seeds, shml)


class TestLinear:
    def test_box_box_on_alternation(self, ab):
        assert eval_linear(parse_formula("[a][a]ff", ab), parse_trace("(ab)", ab))
        assert not eval_linear(parse_formula("[a][a]ff", ab), parse_trace("(a)", ab))

    def test_three_actions(self, abc):
        f = parse_formula("[a](<a>tt | <b,c>tt)", abc)
        assert eval_linear(f, parse_trace("(ab)", abc))

    def test_greatest_fixpoint(self, ab):
        f = parse_formula("max X.<a>X", ab)
        assert eval_linear(f, parse_trace("(a)", ab))
        assert not eval_linear(f, parse_trace("(ab)", ab))

    def test_least_fixpoint(self, ab):
        f = parse_formula("min X.(<b>tt | <a>X)", ab)
        assert eval_linear(f, parse_trace("a.a(b)", ab))
        assert not eval_linear(f, parse_trace("(a)", ab))

    def test_finite_trace_is_rejected(self, ab):
        with pytest.raises(InputError):
            eval_linear(fm.TT, TraceSpec(("a",), None))

    def test_unguarded_formula_is_rejected(self, ab):
        with pytest.raises(UnguardedError):
            eval_linear(parse_formula("max X.X", ab), parse_trace("(a)", ab))

    @settings(max_examples=60, deadline=None)
    @given(hml(3), lasso_strategy)
    def test_negation_dual(self, f, t):
        assert eval_linear(fm.dual(f), t) != eval_linear(f, t)

    @settings(max_examples=40, deadline=None)
    @given(max_formulas, lasso_strategy)
    def test_fixpoint_dual(self, f, t):
        assert eval_linear(fm.dual(f), t) != eval_linear(f, t)


class TestFinfinite:
    def test_empty_trace(self, ab):
        assert not eval_finfinite(parse_formula("<a>tt", ab), TraceSpec((), None))
        assert eval_finfinite(parse_formula("[a]ff", ab), TraceSpec((), None))
        assert eval_finfinite(parse_formula("<a>tt", ab), TraceSpec(("a",), None))

    @settings(max_examples=60, deadline=None)
    @given(hml(3), lasso_strategy)
    def test_agrees_with_linear_on_lassos(self, f, t):
        assert eval_finfinite(f, t) == eval_linear(f, t)


class TestBranching:
    @pytest.fixture
    def p(self, ab):
        return lts_from_process(parse_process("rec x.(a.b.x + a.a.x + a.nil)", ab), ab)

    def test_process_examples(self, p, ab):
        assert not eval_branching(parse_formula("[a][a]ff", ab), p)
        assert not eval_branching(parse_formula("[a](<a>tt | <b>tt)", ab), p)
        assert eval_branching(fm.TT, p)
        assert eval_branching(parse_formula("<a><b><a>tt", ab), p)

    def test_lts_file_matches(self, data_dir, ab):
        lts = load_lts(data_dir / "example_p.lts")
        assert not eval_branching(parse_formula("[a][a]ff", ab), lts)
        assert eval_branching(parse_formula("[a][a]ff", ab), lts, "q")
        assert satisfying_states(parse_formula("[a]ff", ab), lts) == {"q", "z"}

    def test_weak_transitions(self, ab):
        lts = Lts(ab, 0, [(0, "tau", 1), (1, "a", 2)], [0, 1, 2])
        assert eval_branching(parse_formula("<a>tt", ab), lts)
        assert lts.weak_successors(0, "a") == {2}

    def test_unknown_state(self, p, ab):
        with pytest.raises(InputError):
            eval_branching(fm.TT, p, "nowhere")

    def test_unguarded_process(self, ab):
        with pytest.raises(UnguardedError):
            lts_from_process(parse_process("rec x.(x + a.nil)", ab), ab)


class TestTraces:
    def test_trace_process_shapes(self, ab):
        finite = trace_process(TraceSpec(("a", "b"), None), ab)
        assert len(finite.states) == 3
        assert finite.transitions == {(0, "a", 1), (1, "b", 2)}
        loop = trace_process(TraceSpec((), ("a",)), ab)
        assert len(loop.states) == 1
        assert loop.transitions == {(0, "a", 0)}
        empty = trace_process(TraceSpec((), None), ab)
        assert len(empty.states) == 1 and not empty.transitions

    def test_produced_traces(self, ab):
        lts = lts_from_process(parse_process("rec x.a.x", ab), ab)
        assert produced_finfinite_traces(lts, lts.initial, 2) == {
            TraceSpec((), None), TraceSpec(("a",), None), TraceSpec(("a", "a"), None), TraceSpec((), ("a",))}
        nil = lts_from_process(parse_process("nil", ab), ab)
        assert produced_finfinite_traces(nil, nil.initial, 3) == {TraceSpec((), None)}
        fork = lts_from_process(parse_process("a.nil + b.nil", ab), ab)
        assert produced_finfinite_traces(fork, fork.initial, 1) == {
            TraceSpec((), None), TraceSpec(("a",), None), TraceSpec(("b",), None)}

    def test_enumeration_sizes(self, ab):
        assert len(finite_traces(ab, 2)) == 7
        assert len(lassos(ab, 1)) == 2
        assert all(len(t) <= 3 for t in lassos(ab, 3))

    @settings(max_examples=60, deadline=None)
    @given(hml(3), finite_trace_strategy)
    def test_trace_process_correspondence_on_finite_traces(self, f, g):
        assert eval_finfinite(f, g) == eval_branching(f, trace_process(g, AB))

    @settings(max_examples=40, deadline=None)
    @given(max_formulas, lasso_strategy)
    def test_trace_process_correspondence_on_lassos(self, f, g):
        assert eval_finfinite(f, g) == eval_branching(f, trace_process(g, AB))


def extend(s: TraceSpec, ext: TraceSpec) -> TraceSpec:
    return TraceSpec(s.prefix + ext.prefix, ext.cycle)


extensions = st.one_of(finite_trace_strategy, lasso_strategy)


class TestPersistence:
    @settings(max_examples=60, deadline=None)
    @given(st.one_of(shml(3), safety_formulas), finite_trace_strategy, extensions)
    def test_safety_violation_survives_extension(self, f, g, ext):
        if not eval_finfinite(f, g):
            assert not eval_finfinite(f, extend(g, ext))

    @settings(max_examples=60, deadline=None)
    @given(st.one_of(shml(3).map(fm.dual), cosafety_formulas), finite_trace_strategy, extensions)
    def test_cosafety_satisfaction_survives_extension(self, f, g, ext):
        if eval_finfinite(f, g):
            assert eval_finfinite(f, extend(g, ext))

    @settings(max_examples=40, deadline=None)
    @given(shml(3), seeds)
    def test_safety_survives_fewer_behaviours(self, f, seed):
        rng = random.Random(seed)
        big = random_lts(rng, AB, 3, density=0.4, tau=True)
        small = Lts(AB, 0, [t for t in sorted(big.transitions) if rng.random() < 0.6], big.states)
        for state in big.states:
            if eval_branching(f, big, state):
                assert eval_branching(f, small, state)
            if not eval_branching(fm.dual(f), big, state):
                assert not eval_branching(fm.dual(f), small, state)


class TestFinfiniteTriviality:
    TRACES = finite_traces(AB, 5)

    def decides_everything(self, f) -> bool:
        m = synth_complete(f, AB)
        for g in self.TRACES:
            expected = Verdict.YES if eval_finfinite(f, g) else Verdict.NO
            if finite_verdict(m, g.prefix) != expected:
                return False
        return True

    def test_constants_are_decided(self):
        assert self.decides_everything(fm.TT)
        assert self.decides_everything(fm.FF)

    @pytest.mark.parametrize("text", ["<a>tt", "[a]ff", "[a]<b>tt", "<a>tt & [b]ff"])
    def test_non_trivial_formulas_are_not(self, ab, text):
        assert not self.decides_everything(parse_formula(text, ab))

    @settings(max_examples=80, deadline=None)
    @given(hml(2))
    def test_only_constant_formulas_are_decided(self, f):
        if self.decides_everything(f):
            assert len({eval_finfinite(f, g) for g in self.TRACES}) == 1


class TestConvergence:
    def test_evaluator_is_abstract(self):
        with pytest.raises(TypeError):
            FixpointEvaluator(frozenset({0}))

    @settings(max_examples=60, deadline=None)
    @given(st.one_of(max_formulas, min_formulas), st.one_of(lasso_strategy, finite_trace_strategy))
    def test_trace_rounds(self, f, g):
        model = TraceModel(g)
        model.evaluate(f)
        assert model.max_rounds <= len(model.universe) + 1

    @settings(max_examples=40, deadline=None)
    @given(st.one_of(max_formulas, min_formulas), seeds)
    def test_branching_rounds(self, f, seed):
        model = BranchingModel(random_lts(random.Random(seed), AB, 4, tau=True))
        model.evaluate(f)
        assert model.max_rounds <= len(model.lts.states) + 1

    def test_rounds_are_recorded(self, ab):
        model = TraceModel(parse_trace("a.a.a.b(b)", ab))
        model.evaluate(parse_formula("min X.(<b>tt | <a>X)", ab))
        assert 1 < model.max_rounds <= len(model.universe) + 1
