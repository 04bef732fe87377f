import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from recmon.errors import AlphabetError, InputError, ParseError
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax import process as pr
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import classify, require
from recmon.syntax.parser import parse_formula, parse_monitor, parse_process, parse_trace
from recmon.syntax.printer import format_formula, format_monitor, format_process
from recmon.syntax.trace import TraceSpec

from tests.strategies import (AB, hml, lassos, max_formulas, min_formulas, processes, reactive_monitors,
                              recursion_free_monitors, regular_monitors)

A = frozenset({"a"})
B = frozenset({"b"})


class TestAlphabet:
    def test_parse_accepts_commas_and_spaces(self):
        assert Alphabet.parse("a, b c").actions == ("a", "b", "c")

    @pytest.mark.parametrize("actions", [[], ["a", "a"], ["tau"], ["1x"]])
    def test_rejects_bad_alphabets(self, actions):
        with pytest.raises(AlphabetError):
            Alphabet.of(actions)

    def test_complement_and_order(self, abc):
        assert abc.complement({"b"}) == {"a", "c"}
        assert abc.ordered({"c", "a"}) == ("a", "c")
        assert str(abc) == "a,b,c"


class TestFormulaParser:
    def test_nested_boxes(self, ab):
        assert parse_formula("[a][a]ff", ab) == fm.Box(A, fm.Box(A, fm.FF))

    def test_action_set_forms(self, ab):
        assert parse_formula("[*]ff", ab) == fm.Box(ab.all, fm.FF)
        assert parse_formula("<~{a}>tt", ab) == fm.Diamond(B, fm.TT)
        assert parse_formula("[b,a]tt", ab) == fm.Box(ab.all, fm.TT)

    def test_fixpoint_body_extends_right(self, ab):
        f = parse_formula("max X.[a]X & [b]ff", ab)
        assert f == fm.Max("X", fm.And(fm.Box(A, fm.Var("X")), fm.Box(B, fm.FF)))

    def test_precedence(self, ab):
        f = parse_formula("tt | ff & <a>tt", ab)
        assert f == fm.Or(fm.TT, fm.And(fm.FF, fm.Diamond(A, fm.TT)))

    def test_next_and_until_sugar(self, ab):
        assert parse_formula("next tt", ab) == fm.Diamond(ab.all, fm.TT)
        until = parse_formula("<a>tt until <b>tt", ab)
        assert isinstance(until, fm.Min)
        assert fm.is_closed(until) and fm.is_guarded(until)

    def test_binders_are_renamed_apart(self, ab):
        f = parse_formula("max X.([a]X & max X.[b]X)", ab)
        assert f.var == "X"
        assert fm.bound_vars(f) == {"X", "X1"}
        assert fm.is_closed(f)

    def test_syntax_error_has_position(self, ab):
        with pytest.raises(ParseError) as info:
            parse_formula("[a]", ab)
        assert info.value.code == "parse_error"

    def test_unknown_action(self, ab):
        with pytest.raises(AlphabetError):
            parse_formula("[c]ff", ab)

    def test_empty_complement(self, ab):
        with pytest.raises(AlphabetError):
            parse_formula("[~{a,b}]ff", ab)

    @settings(max_examples=80, deadline=None)
    @given(hml(3))
    def test_printed_formulas_parse_back(self, f):
        assert parse_formula(format_formula(f, AB), AB) == f

    @settings(max_examples=80, deadline=None)
    @given(st.one_of(max_formulas, min_formulas))
    def test_printed_fixpoint_formulas_parse_back(self, f):
        assert parse_formula(format_formula(f, AB), AB) == fm.rename_binders(f)


class TestMonitorParser:
    def test_recursive_monitor(self, ab):
        m = parse_monitor("rec x.(a.x + b.yes)", ab)
        assert m == mn.Rec("x", mn.Sum(mn.Prefix("a", mn.MVar("x")), mn.Prefix("b", mn.YES)))

    def test_parallel_operators_bind_looser_than_sum(self, ab):
        m = parse_monitor("a.yes + b.no && b.no || end", ab)
        assert m == mn.Disj(mn.Conj(mn.Sum(mn.Prefix("a", mn.YES), mn.Prefix("b", mn.NO)),
                                    mn.Prefix("b", mn.NO)), mn.END)

    def test_tau_is_not_an_action(self, ab):
        with pytest.raises(AlphabetError):
            parse_monitor("tau.yes", ab)

    def test_reserved_word_as_variable(self, ab):
        with pytest.raises(InputError):
            parse_monitor("rec yes.yes", ab)

    @settings(max_examples=80, deadline=None)
    @given(recursion_free_monitors(3))
    def test_printed_monitors_parse_back(self, m):
        assert parse_monitor(format_monitor(m), AB) == m

    @settings(max_examples=80, deadline=None)
    @given(st.one_of(reactive_monitors, regular_monitors))
    def test_printed_recursive_monitors_parse_back(self, m):
        assert parse_monitor(format_monitor(m), AB) == mn.rename_binders(m)

    def test_printing_keeps_parallel_structure(self, ab):
        m = parse_monitor("(a.yes || b.no) && rec x.(a.x + b.end)", ab)
        assert parse_monitor(format_monitor(m), ab) == m


class TestProcessAndTrace:
    def test_process(self, ab):
        p = parse_process("rec x.(a.b.x + a.nil)", ab)
        assert isinstance(p, pr.PRec)
        assert parse_process(format_process(p), ab) == p

    @settings(max_examples=80, deadline=None)
    @given(processes)
    def test_printed_processes_parse_back(self, p):
        assert parse_process(format_process(p), AB) == pr.rename_binders(p)

    def test_compact_trace(self, ab):
        assert parse_trace("(ab)", ab) == TraceSpec((), ("a", "b"))
        assert parse_trace("a.b(a.b)", ab) == TraceSpec((), ("a", "b"))
        assert parse_trace("eps", ab) == TraceSpec((), None)
        assert parse_trace("ab", ab) == TraceSpec(("a", "b"), None)

    def test_lassos_are_canonical(self):
        assert TraceSpec(("b", "a"), ("b", "a", "b", "a")) == TraceSpec(("b",), ("a", "b"))
        assert TraceSpec((), ("a", "a")).cycle == ("a",)

    def test_empty_cycle_is_rejected(self):
        with pytest.raises(ValueError):
            TraceSpec((), ())

    @settings(max_examples=50, deadline=None)
    @given(lassos)
    def test_printed_lassos_parse_back(self, t):
        assert parse_trace(str(t), AB) == t


class TestFormulaOperations:
    def test_classify(self, ab):
        assert classify(parse_formula("[a]ff", ab)).sHML
        assert classify(parse_formula("max X.[a]X", ab)).ltmuS
        assert not classify(parse_formula("max X.[a]X", ab)).HML
        mixed = classify(parse_formula("max X.[a]X & min Y.<a>Y", ab))
        assert not mixed.ltmuS and not mixed.ltmuC

    def test_require_reports_first_problem(self, ab):
        from recmon.errors import FragmentError, OpenTermError, UnguardedError
        with pytest.raises(OpenTermError):
            require(parse_formula("[a]X", ab))
        with pytest.raises(UnguardedError):
            require(parse_formula("max X.X", ab))
        with pytest.raises(FragmentError):
            require(parse_formula("<a>tt", ab), "sHML")

    def test_measures(self, ab):
        assert fm.measure_ms(parse_formula("[a]ff", ab)) == 0
        assert fm.measure_ms(parse_formula("max X.[a]X", ab)) == 1
        assert fm.length(parse_formula("[a,b]ff", ab)) == 5
        assert fm.length(fm.TT) == 1
        assert fm.modal_depth(parse_formula("[a](<b>tt & [a][a]ff)", ab)) == 3

    def test_free_vars(self, ab):
        assert fm.free_vars(parse_formula("max X.(X & Y)", ab)) == {"Y"}

    def test_substitution_avoids_capture(self):
        f = fm.Max("Y", fm.And(fm.Var("X"), fm.Box(A, fm.Var("Y"))))
        result = fm.substitute(f, "X", fm.Var("Y"))
        assert result.var != "Y"
        assert fm.free_vars(result) == {"Y"}

    def test_unfolding_lowers_the_measure(self, ab):
        f = parse_formula("max X.([a]X & max Y.([b]Y & [a]X))", ab)
        for node in fm.subformulas(f):
            if isinstance(node, fm.Fixpoint):
                assert fm.measure_ms(fm.unfold(node)) < fm.measure_ms(node)

    @settings(max_examples=50, deadline=None)
    @given(hml(3))
    def test_dual_is_an_involution(self, f):
        assert fm.dual(fm.dual(f)) == f


class TestMonitorOperations:
    def test_determinism(self, ab):
        assert not mn.is_deterministic(parse_monitor("a.b.yes + a.a.no", ab))
        assert mn.is_deterministic(parse_monitor("a.(a.no + b.yes)", ab))

    def test_size_and_states(self, ab):
        m = parse_monitor("rec x.(a.x + b.yes)", ab)
        assert mn.size(m) == 6
        assert len(mn.states(m)) == 3

    def test_single_verdict(self, ab):
        assert mn.is_single_verdict(parse_monitor("a.yes + b.end", ab))
        assert not mn.is_single_verdict(parse_monitor("a.yes + b.no", ab))

    def test_require_regular(self, ab):
        from recmon.errors import PreconditionError
        with pytest.raises(PreconditionError):
            mn.require_regular(parse_monitor("yes && no", ab), "test")
