"""
Command handlers. Each one parses its inputs, calls one library operation
and returns an ``Outcome`` that ``main`` turns into text or a JSON report.
"""
import argparse
from dataclasses import dataclass, field
from typing import Any, Dict, List

from recmon.config import get_config
from recmon.errors import InputError
from recmon.models.schemas import InstrumentedOutcome, RewriteStepModel
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import classify
from recmon.syntax.parser import parse_formula, parse_monitor, parse_process, parse_trace
from recmon.syntax.printer import format_formula, format_monitor, format_process, format_trace

from recmon.cli.files import load_lts, read_alphabet_header
from recmon.cli.selftest import SweepSettings, run_selftest
from recmon.engine.instrument import Exhaustive, RandomRun, instrument_run, state_label
from recmon.engine.verdicts import finite_verdict, lasso_verdict
from recmon.engine.steps import accepts, rejects
from recmon.normalize.slim import to_slim
from recmon.semantics.evaluator import eval_branching, eval_finfinite, eval_linear, satisfying_states
from recmon.semantics.lts import Lts, lts_from_process
from recmon.synthesis.dispatch import SynthesisMode, resolve_mode, synthesize
from recmon.synthesis.extract import extract_complete_formula
from recmon.transform.construct import (
    ACCEPT,
    alternating_to_nfa,
    monitor_dfas,
    monitor_to_alternating,
    pipeline,
    verdict_equivalent,
)


@dataclass
class Outcome:
    result: Any
    text: List[str]
    inputs: Dict[str, str] = field(default_factory=dict)
    exit_code: int = 0
    diagnostics: List[str] = field(default_factory=list)


def resolve_alphabet(args: argparse.Namespace) -> Alphabet:
    """``--alphabet``, else the ``alphabet:`` header of ``--lts``, else ``RECMON_ALPHABET``."""
    if args.alphabet:
        return Alphabet.parse(args.alphabet)
    lts_path = getattr(args, "lts", None)
    if lts_path:
        try:
            with open(lts_path, encoding="utf-8") as handle:
                header = read_alphabet_header(handle.read())
        except OSError as exc:
            raise InputError(f"cannot read LTS file {lts_path}: {exc.strerror}")
        if header is not None:
            return header
    return Alphabet.of(get_config().alphabet)


def _system(args: argparse.Namespace, alphabet: Alphabet, inputs: Dict[str, str]) -> Lts:
    if getattr(args, "lts", None):
        inputs["lts"] = args.lts
        return load_lts(args.lts, alphabet)
    if getattr(args, "process", None):
        process = parse_process(args.process, alphabet)
        inputs["process"] = format_process(process)
        return lts_from_process(process, alphabet)
    raise InputError("give a system with --lts FILE or --process TERM")


def cmd_classify(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    f = parse_formula(args.formula, alphabet)
    fragment = classify(f)
    flags = fragment.model_dump()
    return Outcome(flags, [f"{name}: {str(value).lower()}" for name, value in flags.items()],
                   {"formula": format_formula(f)})


def cmd_synth(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    f = parse_formula(args.formula, alphabet)
    mode = resolve_mode(f, SynthesisMode(args.mode))
    m = synthesize(f, alphabet, mode)
    printed = format_monitor(m)
    return Outcome(printed, [printed], {"formula": format_formula(f), "mode": mode.value})


def cmd_verdict(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    m = parse_monitor(args.monitor, alphabet)
    t = parse_trace(args.trace, alphabet)
    inputs = {"monitor": format_monitor(m), "trace": format_trace(t)}
    if t.is_lasso:
        verdict = lasso_verdict(m, t, alphabet)
        return Outcome({"verdict": verdict.value}, [verdict.value], inputs)
    accepted, rejected = accepts(m, t.prefix), rejects(m, t.prefix)
    verdict = finite_verdict(m, t.prefix)
    return Outcome({"verdict": verdict.value, "accepts": accepted, "rejects": rejected},
                   [verdict.value, f"accepts: {str(accepted).lower()}", f"rejects: {str(rejected).lower()}"],
                   inputs)


def cmd_check(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    f = parse_formula(args.formula, alphabet)
    inputs = {"formula": format_formula(f), "semantics": args.semantics}
    if args.semantics == "branching":
        holds = eval_branching(f, _system(args, alphabet, inputs))
    else:
        if args.trace is None:
            raise InputError(f"{args.semantics} semantics needs --trace")
        t = parse_trace(args.trace, alphabet)
        inputs["trace"] = format_trace(t)
        evaluate = eval_linear if args.semantics == "linear" else eval_finfinite
        holds = evaluate(f, t, alphabet)
    return Outcome(holds, [str(holds).lower()], inputs, exit_code=0 if holds else 1)


def cmd_mc(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    f = parse_formula(args.formula, alphabet)
    inputs = {"formula": format_formula(f)}
    lts = _system(args, alphabet, inputs)
    holds = eval_branching(f, lts)
    states = sorted(state_label(s) for s in satisfying_states(f, lts))
    return Outcome({"holds": holds, "states": states},
                   [str(holds).lower(), "satisfying states: " + (", ".join(states) or "none")],
                   inputs, exit_code=0 if holds else 1)


def cmd_transform(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    m = parse_monitor(args.monitor, alphabet)
    inputs = {"monitor": format_monitor(m), "stage": args.stage, "polarity": args.polarity}
    if args.stage == "regular":
        printed = format_monitor(pipeline(m, alphabet))
        return Outcome(printed, [printed], inputs)
    if args.stage == "dfa":
        d_acc, d_rej = monitor_dfas(m, alphabet)
        text = (d_acc if args.polarity == ACCEPT else d_rej).to_text()
        return Outcome(text, text.splitlines(), inputs)
    automaton = monitor_to_alternating(m, alphabet, args.polarity)
    if args.stage == "alternating":
        text = automaton.to_text(label=format_monitor)
    else:
        nfa = alternating_to_nfa(automaton)
        text = nfa.to_text()
    return Outcome(text, text.splitlines(), inputs)


def cmd_normalize(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    f = parse_formula(args.formula, alphabet)
    slim, steps = to_slim(f, alphabet)
    models = [RewriteStepModel(rule=s.rule, before=format_formula(s.before), after=format_formula(s.after))
              for s in steps]
    text = [format_formula(slim)]
    text += [f"{i}. {s.rule}: {s.before} => {s.after}" for i, s in enumerate(models, start=1)]
    return Outcome({"formula": format_formula(slim), "steps": [s.model_dump() for s in models]},
                   text, {"formula": format_formula(f)})


def cmd_equiv(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    m = parse_monitor(args.first, alphabet)
    n = parse_monitor(args.second, alphabet)
    same = verdict_equivalent(m, n, alphabet, bound=args.bound)
    inputs = {"first": format_monitor(m), "second": format_monitor(n)}
    return Outcome(same, [str(same).lower()], inputs, exit_code=0 if same else 1)


def cmd_simulate(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    m = parse_monitor(args.monitor, alphabet)
    inputs = {"monitor": format_monitor(m)}
    lts = _system(args, alphabet, inputs)
    if args.random:
        transcript = instrument_run(m, lts, RandomRun(seed, args.fuel))
        result = {"trace": ".".join(transcript.trace) or "eps", "verdict": transcript.verdict.value,
                  "events": [e.model_dump() for e in transcript.events]}
        text = transcript.lines() + [f"verdict: {transcript.verdict.value}"]
        return Outcome(result, text, inputs)
    outcomes = instrument_run(m, lts, Exhaustive(args.depth))
    models = [InstrumentedOutcome(trace=".".join(word) or "eps", verdict=verdict.value)
              for word, verdict in sorted(outcomes, key=lambda o: (len(o[0]), o[0], o[1].value))]
    return Outcome([o.model_dump() for o in models], [f"{o.trace} -> {o.verdict}" for o in models], inputs)


def cmd_extract(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    m = parse_monitor(args.monitor, alphabet)
    printed = format_formula(extract_complete_formula(m, alphabet))
    return Outcome(printed, [printed], {"monitor": format_monitor(m)})


def cmd_selftest(args: argparse.Namespace, alphabet: Alphabet, seed: int) -> Outcome:
    settings = SweepSettings(alphabet=alphabet, formula_depth=args.formula_depth,
                             trace_bound=args.trace_bound, random_count=args.random_count,
                             seed=seed, workers=get_config().workers, lts_states=args.lts_states)
    summary = run_selftest(settings)
    text = [f"{c.name}: {c.instances} instances, {c.failures} failures"
            + (f" (first: {c.first_failure})" if c.first_failure else "") for c in summary.checks]
    text.append(f"total failures: {summary.failures}")
    return Outcome(summary.model_dump(), text, {"alphabet": str(alphabet)},
                   exit_code=0 if summary.failures == 0 else 1)


COMMANDS = {
    "classify": cmd_classify,
    "synth": cmd_synth,
    "verdict": cmd_verdict,
    "check": cmd_check,
    "mc": cmd_mc,
    "transform": cmd_transform,
    "normalize": cmd_normalize,
    "equiv": cmd_equiv,
    "simulate": cmd_simulate,
    "extract": cmd_extract,
    "selftest": cmd_selftest,
}
