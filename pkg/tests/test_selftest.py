import pytest

from recmon.cli.corpus import hml_formulas, rooted_lts_shapes, shape_lts
from recmon.cli.main import main
from recmon.cli.selftest import (AB, Selftest, ShapeUnion, SweepSettings, _combinator_mismatch, _sweep,
                                 regression_vectors, run_selftest)
from recmon.errors import InputError
from recmon.semantics.evaluator import eval_branching
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.parser import parse_formula

EXPECTED = {
    "complete-monitoring", "partial-monitoring", "transformation", "regression-vectors",
    "slim-and-tight", "finfinite-agrees-on-lassos", "trace-process-correspondence",
    "branching-synthesis", "monitor-combinators", "zipping", "maximality-round-trip",
}


def test_sweep_counts_errors_as_failures():
    def check(n):
        if n == 2:
            raise InputError("bad instance")
        return "odd" if n % 2 else None

    result = _sweep("demo", [0, 1, 2, 4], check, workers=2)
    assert result.instances == 4
    assert result.failures == 2
    assert result.first_failure == "odd"


@pytest.mark.slow
def test_small_sweep_passes():
    settings = SweepSettings(alphabet=Alphabet.of(["a", "b"]), formula_depth=1, trace_bound=3,
                             random_count=20, seed=0, lts_states=2)
    summary = run_selftest(settings)
    assert {c.name for c in summary.checks} == EXPECTED
    assert summary.failures == 0, [c for c in summary.checks if c.failures]
    assert all(c.instances > 0 for c in summary.checks)


@pytest.mark.slow
def test_selftest_command(capsys):
    code = main(["selftest", "--formula-depth", "1", "--trace-bound", "3", "--random-count", "20",
                 "--lts-states", "2"])
    out = capsys.readouterr().out
    assert code == 0
    assert "total failures: 0" in out


@pytest.mark.parametrize("name,vector", regression_vectors(), ids=[name for name, _ in regression_vectors()])
def test_regression_vector(name, vector):
    assert vector(), name


def test_regressions_use_their_own_alphabet():
    selftest = Selftest(SweepSettings(alphabet=Alphabet.of(["x", "y"]), formula_depth=1, trace_bound=1,
                                      random_count=2))
    result = selftest.regressions()
    assert result.instances == len(regression_vectors())
    assert result.failures == 0, result.first_failure


def test_combinator_laws_on_a_sample():
    selftest = Selftest(SweepSettings(alphabet=AB, formula_depth=1, trace_bound=1, random_count=8, seed=3))
    result = selftest.combinators()
    assert result.instances == 8
    assert result.failures == 0, result.first_failure


def test_combinator_law_violation_is_named():
    yes, no = frozenset({mn.YES}), frozenset({mn.NO})
    assert _combinator_mismatch((), mn.YES, mn.NO, [yes, no, frozenset(), no]) == "conj-no"
    assert _combinator_mismatch((), mn.YES, mn.NO, [yes, no, no, frozenset()]) == "disj-yes"
    assert _combinator_mismatch((), mn.YES, mn.NO, [yes, no, no, yes]) is None


def test_shape_union_agrees_with_branching_semantics():
    shapes = rooted_lts_shapes(AB, 2)
    union = ShapeUnion(shapes)
    formulas = hml_formulas(AB, 1) + [parse_formula(text, AB) for text in
                                      ("max X.([a]X & [b]ff)", "min X.(<b>tt | <a>X)", "max X.<a,b>X")]
    for f in formulas:
        holds = union.evaluate(f)
        for i, shape in enumerate(shapes):
            assert ((i, 0) in holds) == eval_branching(f, shape_lts(AB, shape)), (f, shape)


def test_branching_sweep_on_two_state_systems():
    selftest = Selftest(SweepSettings(alphabet=AB, formula_depth=1, trace_bound=2, random_count=5,
                                      lts_states=2))
    result = selftest.branching_synthesis()
    assert result.instances > 0
    assert result.failures == 0, result.first_failure
