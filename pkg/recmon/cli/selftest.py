"""
Acceptance sweep: checks the monitorability results on generated instances.

Each property is run over its corpus, optionally on several worker threads,
and summarized as a ``CheckResult``.
"""
import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Set, Tuple, TypeVar

from recmon.config import get_config
from recmon.errors import ReactivityError, RecmonError
from recmon.models.schemas import CheckResult, SelftestSummary
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import TAU, Alphabet
from recmon.syntax.fragments import classify
from recmon.syntax.monitor import Verdict
from recmon.syntax.parser import parse_formula, parse_monitor, parse_process
from recmon.syntax.printer import format_formula, format_monitor, format_trace
from recmon.syntax.trace import TraceSpec

from recmon.cli import corpus
from recmon.engine.analysis import is_reactive
from recmon.engine.instrument import Exhaustive, instrument_run, instrumented_after
from recmon.engine.steps import accepts, rejects, step, weak_after, weak_step
from recmon.normalize.slim import is_slim, to_slim
from recmon.normalize.tight import is_tight
from recmon.semantics.evaluator import FixpointEvaluator, eval_branching, eval_finfinite, eval_linear
from recmon.semantics.lts import Lts, lts_from_process
from recmon.semantics.traces import finite_traces, lassos, produced_finfinite_traces, trace_process, words
from recmon.synthesis.branching import VIOLATION, synth_branching
from recmon.synthesis.checks import branching_rejects, linear_completeness, linear_soundness
from recmon.synthesis.extract import extract_complete_formula
from recmon.synthesis.linear import partial_mode, synth_complete, synth_partial
from recmon.transform.automata import nfa_to_dfa
from recmon.transform.construct import (
    alternating_to_nfa,
    determinize,
    monitor_to_alternating,
    pipeline,
    verdict_equivalent,
)

logger = logging.getLogger(__name__)

T = TypeVar("T")
Check = Callable[[T], Optional[str]]


@dataclass(frozen=True)
class SweepSettings:
    alphabet: Alphabet
    formula_depth: int = 3
    trace_bound: int = 5
    random_count: Optional[int] = None
    seed: int = 0
    workers: int = 1
    lts_states: int = 3


def _sweep(name: str, items: Sequence[T], check: Check, workers: int) -> CheckResult:
    def guarded(item: T) -> Optional[str]:
        try:
            return check(item)
        except RecmonError as exc:
            return f"{exc.code}: {exc.detail}"

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(guarded, items))
    else:
        outcomes = [guarded(item) for item in items]
    failures = [outcome for outcome in outcomes if outcome is not None]
    logger.info("%s: %d instances, %d failures", name, len(items), len(failures))
    return CheckResult(name=name, instances=len(items), failures=len(failures),
                       first_failure=failures[0] if failures else None)


COMBINATOR_TRACE_BOUND = 6

AB = Alphabet.of(["a", "b"])
ABC = Alphabet.of(["a", "b", "c"])
EXAMPLE_PROCESS = "rec x.(a.b.x + a.a.x + a.nil)"


def _refused(build: Callable[[], object]) -> bool:
    try:
        build()
    except ReactivityError:
        return True
    return False


def _same_on_lassos(f: fm.Formula, g: fm.Formula, alphabet: Alphabet, bound: int = 5) -> bool:
    return all(eval_linear(f, t) == eval_linear(g, t) for t in lassos(alphabet, bound))


def regression_vectors() -> List[Tuple[str, Callable[[], bool]]]:
    """Worked examples, each over its own alphabet regardless of ``--alphabet``."""
    a = AB

    def m(text: str) -> mn.Monitor:
        return parse_monitor(text, a)

    def f(text: str, alphabet: Alphabet = a) -> fm.Formula:
        return parse_formula(text, alphabet)

    def p() -> Lts:
        return lts_from_process(parse_process(EXAMPLE_PROCESS, a), a)

    def instrumented(monitor: str) -> set:
        system = lts_from_process(parse_process("a.rec y.b.y", a), a)
        return instrument_run(m(monitor), system, Exhaustive(2))

    counter = m("rec x.(a.x + b.yes)")
    stuck = m("(a.yes || b.yes) + (a.end + b.end)")
    return [
        ("parse rec", lambda: counter == mn.Rec("x", mn.Sum(mn.Prefix("a", mn.MVar("x")), mn.Prefix("b", mn.YES)))),
        ("linear [a][a]ff", lambda: eval_linear(f("[a][a]ff"), TraceSpec((), ("a", "b")))),
        ("linear [a](<a>tt | <b,c>tt)",
         lambda: eval_linear(f("[a](<a>tt | <b,c>tt)", ABC), TraceSpec((), ("a", "b")))),
        ("branching p [a][a]ff", lambda: not eval_branching(f("[a][a]ff"), p())),
        ("branching p [a](<a>tt | <b>tt)", lambda: not eval_branching(f("[a](<a>tt | <b>tt)"), p())),
        ("tau unfolds rec", lambda: step(counter, TAU)
         == {mn.Sum(mn.Prefix("a", counter), mn.Prefix("b", mn.YES))}),
        ("accepts ab", lambda: accepts(counter, ("a", "b"))),
        ("iMon reaches yes", lambda: (("a", "b"), Verdict.YES) in instrumented("rec x.(a.x + b.yes)")),
        ("iTer reaches end", lambda: (("a", "b"), Verdict.END) in instrumented("rec x.(a.a.x + b.yes)")),
        ("disjunction never accepts",
         lambda: not any(mn.YES in weak_after(m("a.a.yes || a.b.yes"), s) for s in words(a, 6))),
        ("conjunction never rejects",
         lambda: not any(rejects(m("(a.yes + b.end) && (b.yes + a.end)"), s) for s in words(a, 6))),
        ("stuck disjunction accepts nothing", lambda: not accepts(stuck, ("a",))),
        ("not reactive", lambda: not is_reactive(m("a.yes && b.no"), a)),
        ("reactive", lambda: is_reactive(m("(a.yes + b.end) && (b.yes + a.end)"), a)),
        ("m1 refused", lambda: _refused(lambda: monitor_to_alternating(m("a.a.yes || a.b.yes"), a))),
        ("m2 accepts nothing",
         lambda: nfa_to_dfa(alternating_to_nfa(monitor_to_alternating(stuck, a))).minimize().is_empty()),
        ("determinize", lambda: determinize(m("a.b.yes + a.a.no"), a) == m("a.(a.no + b.yes)")),
        ("synth [a]ff", lambda: synth_complete(f("[a]ff"), a) == m("a.no + b.yes")),
        ("pipeline [a][a]ff", lambda: verdict_equivalent(
            synth_complete(f("[a][a]ff"), a), pipeline(synth_complete(f("[a][a]ff"), a), a), a, bound=6)),
        ("extract", lambda: _same_on_lassos(extract_complete_formula(m("a.yes + b.no"), a),
                                            f("[a]tt & [b]ff"), a)),
    ]


def _combinator_mismatch(s: Tuple[str, ...], m1: mn.Monitor, m2: mn.Monitor,
                         reached: Sequence[FrozenSet[mn.Monitor]]) -> Optional[str]:
    """First combinator law broken after ``s``, given what ``m1``, ``m2``, their
    conjunction, disjunction and (when regular) sum reach."""
    r1, r2, conj, disj = reached[:4]
    expected = {
        "conj-no": (mn.NO in conj, mn.NO in r1 or mn.NO in r2),
        "conj-yes": (mn.YES in conj, mn.YES in r1 and mn.YES in r2),
        "disj-yes": (mn.YES in disj, mn.YES in r1 or mn.YES in r2),
        "disj-no": (mn.NO in disj, mn.NO in r1 and mn.NO in r2),
    }
    # a bare verdict summand only shows through the sum after an action
    if len(reached) > 4 and (s or not (isinstance(m1, mn.VerdictTerm) or isinstance(m2, mn.VerdictTerm))):
        for v in (mn.YES, mn.NO, mn.END):
            expected[f"sum-{mn.verdict_of(v).value}"] = (v in reached[4], v in r1 or v in r2)
    for name, (got, want) in expected.items():
        if got != want:
            return name
    return None


class ShapeUnion(FixpointEvaluator):
    """Disjoint union of LTS shapes; point ``(i, s)`` is state ``s`` of shape ``i``."""

    def __init__(self, shapes: Sequence[corpus.Shape]):
        moves: Dict[Tuple[int, int], Dict[str, Set[Tuple[int, int]]]] = {}
        for i, (n_states, edges) in enumerate(shapes):
            for s in range(n_states):
                moves[(i, s)] = {}
            for s, action, t in edges:
                moves[(i, s)].setdefault(action, set()).add((i, t))
        self.moves = {p: {a: frozenset(ts) for a, ts in out.items()} for p, out in moves.items()}
        super().__init__(frozenset(self.moves))

    def diamond(self, actions, target):
        return frozenset(p for p, out in self.moves.items()
                         if any(out.get(a, frozenset()) & target for a in actions))

    def box(self, actions, target):
        return frozenset(p for p, out in self.moves.items()
                         if all(out.get(a, frozenset()) <= target for a in actions))


class Selftest:
    """Builds the corpora once and runs every property over them."""

    def __init__(self, settings: SweepSettings):
        self.settings = settings
        self.alphabet = settings.alphabet
        self.rng = random.Random(settings.seed)
        count = settings.random_count
        self.random_count = count if count is not None else get_config().random_instances
        self.sample = min(self.random_count, 500)

        self.hml = corpus.hml_formulas(self.alphabet, min(settings.formula_depth, 2))
        if settings.formula_depth > 2:
            self.hml += [corpus.random_hml(self.rng, self.alphabet, settings.formula_depth)
                         for _ in range(self.sample)]
        self.ltmu = [corpus.random_fixpoint_formula(self.rng, self.alphabet, greatest=i % 2 == 0)
                     for i in range(self.sample)]
        self.monitors = [corpus.random_reactive_monitor(self.rng, self.alphabet)
                         for _ in range(min(self.sample, 200))]
        self.lassos = lassos(self.alphabet, settings.trace_bound)
        self.finite = finite_traces(self.alphabet, settings.trace_bound)

    def run(self) -> SelftestSummary:
        checks = [
            self.complete_monitoring(),
            self.partial_monitoring(),
            self.transformation(),
            self.regressions(),
            self.slim_and_tight(),
            self.cross_semantics(),
            self.trace_processes(),
            self.branching_synthesis(),
            self.combinators(),
            self.zipping(),
            self.maximality(),
        ]
        return SelftestSummary(alphabet=list(self.alphabet), seed=self.settings.seed, checks=checks)

    def _sweep(self, name: str, items: Sequence[T], check: Check) -> CheckResult:
        return _sweep(name, items, check, self.settings.workers)

    def _disagreement(self, f: fm.Formula, g: fm.Formula) -> Optional[str]:
        for t in self.lassos:
            if eval_linear(f, t) != eval_linear(g, t):
                return f"{format_formula(f)} vs {format_formula(g)} on {format_trace(t)}"
        return None

    def complete_monitoring(self) -> CheckResult:
        def check(f: fm.Formula) -> Optional[str]:
            failures = linear_completeness(synth_complete(f, self.alphabet), f, self.alphabet,
                                           self.settings.trace_bound)
            return f"{format_formula(f)} on {format_trace(failures[0])}" if failures else None
        return self._sweep("complete-monitoring", self.hml, check)

    def partial_monitoring(self) -> CheckResult:
        def check(f: fm.Formula) -> Optional[str]:
            m = synth_partial(f, self.alphabet)
            bound = self.settings.trace_bound
            failures = (linear_soundness(m, f, self.alphabet, bound)
                        + linear_completeness(m, f, self.alphabet, bound, partial_mode(f)))
            return f"{format_formula(f)} on {format_trace(failures[0])}" if failures else None
        return self._sweep("partial-monitoring", self.ltmu, check)

    def transformation(self) -> CheckResult:
        bound = self.settings.trace_bound + 1

        def check(m: mn.Monitor) -> Optional[str]:
            if not is_reactive(m, self.alphabet):
                return None
            n = pipeline(m, self.alphabet)
            if not mn.is_deterministic(n):
                return f"{format_monitor(n)} is not deterministic"
            if not verdict_equivalent(m, n, self.alphabet):
                return f"{format_monitor(m)} and {format_monitor(n)} differ (exact)"
            if not verdict_equivalent(m, n, self.alphabet, bound=bound):
                return f"{format_monitor(m)} and {format_monitor(n)} differ (bounded)"
            nfa = alternating_to_nfa(monitor_to_alternating(m, self.alphabet))
            if len(nfa.states) > 2 ** mn.length(m):
                return f"{format_monitor(m)}: {len(nfa.states)} NFA states"
            return None
        return self._sweep("transformation", self.monitors, check)

    def regressions(self) -> CheckResult:
        return self._sweep("regression-vectors", regression_vectors(),
                           lambda item: None if item[1]() else f"{item[0]} differs")

    def slim_and_tight(self) -> CheckResult:
        def check(f: fm.Formula) -> Optional[str]:
            slim, steps = to_slim(f, self.alphabet)
            if len(steps) > fm.length(f):
                return f"{format_formula(f)}: {len(steps)} steps"
            for step in steps:
                if fm.length(step.after) >= fm.length(step.before):
                    return f"{step.rule} does not shrink {format_formula(step.before)}"
            if not is_slim(slim, self.alphabet):
                return f"{format_formula(slim)} is not slim"
            disagreement = self._disagreement(f, slim)
            if disagreement:
                return disagreement
            if not is_tight(synth_complete(slim, self.alphabet), slim, self.alphabet):
                return f"monitor for {format_formula(slim)} is not tight"
            return None
        return self._sweep("slim-and-tight", self.hml, check)

    def cross_semantics(self) -> CheckResult:
        def check(f: fm.Formula) -> Optional[str]:
            for t in self.lassos:
                if eval_finfinite(f, t) != eval_linear(f, t):
                    return f"{format_formula(f)} on {format_trace(t)}"
            return None
        return self._sweep("finfinite-agrees-on-lassos", self.hml + self.ltmu, check)

    def trace_processes(self) -> CheckResult:
        traces = self.finite + self.lassos

        def check(f: fm.Formula) -> Optional[str]:
            for g in traces:
                if eval_finfinite(f, g) != eval_branching(f, trace_process(g, self.alphabet)):
                    return f"{format_formula(f)} on {format_trace(g)}"
            return None
        return self._sweep("trace-process-correspondence", self.hml + self.ltmu, check)

    def _sampled_lts(self, exhaustive: int) -> List[Lts]:
        systems = list(corpus.all_lts(self.alphabet, 1))
        for n_states in range(2, self.settings.lts_states + 1):
            count = min(self.sample, 40) if n_states <= exhaustive else self.sample
            systems += [corpus.random_lts(self.rng, self.alphabet, n_states) for _ in range(count)]
        return systems

    def branching_synthesis(self) -> CheckResult:
        """Instrumented runs on sampled systems, then every rooted LTS up to
        ``lts_states`` states (up to bisimilarity) while enumeration stays feasible.

        On the enumerated shapes verdicts go through the trace view: a shape
        is flagged when one of its traces is rejected, and both that and the
        trace-side truth of ``f`` are shared by shapes with the same traces.
        """
        shml = [f for f in self.hml if classify(f).sHML]
        bound = min(self.settings.trace_bound, self.settings.formula_depth) + 1
        exhaustive = corpus.exhaustive_lts_states(self.alphabet, self.settings.lts_states)
        sampled = self._sampled_lts(exhaustive)
        shapes = corpus.rooted_lts_shapes(self.alphabet, exhaustive)
        union = ShapeUnion(shapes)
        by_traces: Dict[FrozenSet[TraceSpec], List[int]] = {}
        for i, shape in enumerate(shapes):
            produced = produced_finfinite_traces(corpus.shape_lts(self.alphabet, shape), 0, bound)
            by_traces.setdefault(produced, []).append(i)
        traces = frozenset().union(*by_traces)
        logger.info("branching sweep: %d sampled systems, %d shapes up to %d states, %d trace sets",
                    len(sampled), len(shapes), exhaustive, len(by_traces))

        def check(f: fm.Formula) -> Optional[str]:
            m = synth_branching(f, self.alphabet, VIOLATION)
            for lts in sampled:
                failures = branching_rejects(m, f, lts, bound)
                if failures:
                    return f"{format_formula(f)} at state {failures[0]} of {lts}"
            holds = union.evaluate(f)
            good = {g for g in traces if eval_finfinite(f, g)}
            rejected = {g for g in traces if g.cycle is None and rejects(m, g.prefix)}
            for produced, members in by_traces.items():
                all_good, flagged = produced <= good, not produced.isdisjoint(rejected)
                for i in members:
                    if flagged == ((i, 0) in holds):
                        return f"{format_formula(f)}: rejection disagrees on {shapes[i]}"
                    if all_good != ((i, 0) in holds):
                        return f"{format_formula(f)}: process and trace views differ on {shapes[i]}"
            return None
        return self._sweep("branching-synthesis", shml, check)

    def combinators(self) -> CheckResult:
        pairs = [(corpus.random_reactive_monitor(self.rng, self.alphabet, 2),
                  corpus.random_reactive_monitor(self.rng, self.alphabet, 2))
                 for _ in range(self.sample)]
        bound = COMBINATOR_TRACE_BOUND

        def check(pair) -> Optional[str]:
            m1, m2 = pair
            with_sum = mn.is_regular(m1) and mn.is_regular(m2)
            terms = [m1, m2, mn.Conj(m1, m2), mn.Disj(m1, m2)] + ([mn.Sum(m1, m2)] if with_sum else [])
            pending = [((), [weak_after(t, ()) for t in terms])]
            while pending:
                s, reached = pending.pop()
                mismatch = _combinator_mismatch(s, m1, m2, reached)
                if mismatch:
                    return f"{mismatch}: {format_monitor(m1)}, {format_monitor(m2)} on {'.'.join(s) or 'eps'}"
                if len(s) < bound:
                    for action in self.alphabet:
                        pending.append((s + (action,), [weak_step(r, action) for r in reached]))
            return None
        return self._sweep("monitor-combinators", pairs, check)

    def zipping(self) -> CheckResult:
        items = [(corpus.random_regular_monitor(self.rng, self.alphabet),
                  corpus.random_lts(self.rng, self.alphabet, 3, tau=True),
                  tuple(self.rng.choice(self.alphabet.actions) for _ in range(self.rng.randint(0, 4))))
                 for _ in range(self.random_count)]

        def check(item) -> Optional[str]:
            m, lts, s = item
            reached = instrumented_after(m, lts, s)
            monitors, states = weak_after(m, s), lts.weak_after({lts.initial}, s)
            for n in monitors:
                for q in states:
                    if (n, q) not in reached:
                        return f"zipping: {format_monitor(m)} on {'.'.join(s) or 'eps'}"
            for n, q in reached:
                if q not in states or (n not in monitors and n != mn.END):
                    return f"unzipping: {format_monitor(m)} on {'.'.join(s) or 'eps'}"
            return None
        return self._sweep("zipping", items, check)

    def maximality(self) -> CheckResult:
        def check(f: fm.Formula) -> Optional[str]:
            return self._disagreement(f, extract_complete_formula(synth_complete(f, self.alphabet), self.alphabet))
        return self._sweep("maximality-round-trip", self.hml, check)


def run_selftest(settings: SweepSettings) -> SelftestSummary:
    summary = Selftest(settings).run()
    logger.info("selftest finished with %d failures", summary.failures)
    return summary
