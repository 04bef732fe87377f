import pytest
from hypothesis import given, settings

from recmon.errors import CapExceededError, FragmentError, PreconditionError
from recmon.normalize.norec import no_rec
from recmon.normalize.slim import is_slim, to_slim
from recmon.normalize.tight import is_tight, is_tight_structural
from recmon.semantics.evaluator import eval_linear
from recmon.semantics.traces import lassos
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.parser import parse_formula, parse_monitor
from recmon.synthesis.linear import synth_complete
from recmon.transform.construct import determinize

from tests.strategies import AB, hml


def F(text, alphabet):
    return parse_formula(text, alphabet)


def M(text, alphabet):
    return parse_monitor(text, alphabet)


def rules(steps):
    return [step.rule for step in steps]


class TestSlim:
    def test_absorb_trivial(self, ab):
        slim, steps = to_slim(F("tt & [a]ff", ab), ab)
        assert slim == F("[a]ff", ab)
        assert rules(steps) == ["absorb-trivial"]

    def test_conflicting_diamonds(self, ab):
        slim, steps = to_slim(F("<a>tt & <b>tt", ab), ab)
        assert slim == fm.FF
        assert rules(steps) == ["diamond-conjunction"]

    def test_trivial_modality(self, ab):
        slim, steps = to_slim(F("[a]tt", ab), ab)
        assert slim == fm.TT
        assert rules(steps) == ["modal-trivial"]

    def test_box_cover(self, ab):
        assert to_slim(F("[a]ff & [b]ff", ab), ab)[0] == fm.FF
        assert to_slim(F("<a>tt | <b>tt", ab), ab)[0] == fm.TT

    def test_box_pushed_into_diamonds(self, ab):
        slim, steps = to_slim(F("[a][b]ff & (<a>[b][a]ff | <b><a>tt)", ab), ab)
        assert slim == F("<a>[b]ff | <b><a>tt", ab)
        assert rules(steps) == ["diamond-and-box", "box-merge", "absorb-trivial"]

    def test_repeated_box(self, ab):
        slim, _ = to_slim(F("[a][a]ff & (<a>[a]ff | <b>tt)", ab), ab)
        assert slim == F("<a>[a]ff | <b>tt", ab)

    def test_disjoint_boxes_make_a_tautology(self, ab):
        slim, steps = to_slim(F("[a]ff | [b]ff", ab), ab)
        assert slim == fm.TT
        assert "box-disjunction" in rules(steps)

    def test_is_slim(self, ab):
        assert is_slim(fm.FF, ab)
        assert is_slim(F("[a]ff", ab), ab)
        assert is_slim(F("<a>[b]ff | <b><a>tt", ab), ab)
        assert not is_slim(F("<a>ff", ab), ab)
        assert not is_slim(F("[a]tt", ab), ab)
        assert not is_slim(F("[a]ff & [b]ff", ab), ab)
        assert not is_slim(F("[a]ff & [a][b]ff", ab), ab)
        assert not is_slim(F("[a]ff | <b>tt", ab), ab)

    def test_needs_hml(self, ab):
        with pytest.raises(FragmentError):
            to_slim(F("max X.[a]X", ab), ab)

    @settings(max_examples=60, deadline=None)
    @given(hml(3))
    def test_normal_form_properties(self, f):
        slim, steps = to_slim(f, AB)
        assert is_slim(slim, AB)
        for step in steps:
            assert fm.length(step.after) < fm.length(step.before)
        assert fm.length(slim) <= fm.length(f)
        assert all(eval_linear(f, t) == eval_linear(slim, t) for t in lassos(AB, 4))

    @settings(max_examples=40, deadline=None)
    @given(hml(3))
    def test_unsatisfiable_slim_formula_is_ff(self, f):
        slim, _ = to_slim(f, AB)
        if not any(eval_linear(slim, t) for t in lassos(AB, 4)):
            assert slim == fm.FF


class TestNoRec:
    def test_examples(self, ab):
        assert no_rec(M("rec x.yes", ab), ab) == mn.YES
        assert no_rec(M("rec x.(a.yes + b.no)", ab), ab) == M("a.yes + b.no", ab)

    def test_unfolds_bounded_recursion(self, ab):
        m = determinize(synth_complete(F("[a][a]ff", ab), ab), ab)
        result = no_rec(m, ab)
        assert mn.is_recursion_free(result)

    def test_incomplete_monitor(self, ab):
        with pytest.raises(CapExceededError):
            no_rec(M("rec x.(a.x + b.yes)", ab), ab)

    def test_preconditions(self, ab):
        with pytest.raises(PreconditionError):
            no_rec(M("a.yes + a.no", ab), ab)
        with pytest.raises(PreconditionError):
            no_rec(M("yes && no", ab), ab)


class TestTightness:
    def test_structural(self, ab):
        assert not is_tight_structural(M("a.(a.no + b.no)", ab), ab)
        assert is_tight_structural(mn.NO, ab)
        assert is_tight_structural(M("a.no + b.yes", ab), ab)
        assert not is_tight_structural(M("rec x.no", ab), ab)

    def test_structural_needs_determinism(self, ab):
        with pytest.raises(PreconditionError):
            is_tight_structural(M("a.yes + a.no", ab), ab)

    def test_late_rejection_is_not_tight(self, ab):
        f = F("[a]ff", ab)
        assert not is_tight(M("a.(a.no + b.no) + b.yes", ab), f, ab)
        assert is_tight(M("a.no + b.yes", ab), f, ab)

    def test_fixpoint_formula(self, ab):
        f = F("max X.([a]X & [b]ff)", ab)
        assert is_tight(M("rec x.(a.x + b.no)", ab), f, ab)
        assert not is_tight(M("rec x.(a.x + b.a.no + b.b.no)", ab), f, ab)

    @settings(max_examples=30, deadline=None)
    @given(hml(2))
    def test_slim_formulas_give_tight_monitors(self, f):
        slim, _ = to_slim(f, AB)
        assert is_tight(synth_complete(slim, AB), slim, AB)
