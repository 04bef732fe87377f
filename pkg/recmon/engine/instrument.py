"""
Instrumentation of a monitor with a running process.

Rules: iMon (both move on the same action), iTer (the process moves on an
action the monitor can neither take nor prepare for with a tau, and the
monitor is aborted to end), iAsyP and iAsyM (either side moves silently).
"""
import logging
import random
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Set, Tuple, Union

from recmon.config import get_config
from recmon.errors import CapExceededError, OpenTermError
from recmon.models.schemas import TranscriptEvent
from recmon.syntax import monitor as mn
from recmon.syntax import process as pr
from recmon.syntax.alphabet import TAU
from recmon.syntax.printer import format_monitor, format_process

from recmon.engine.steps import step
from recmon.semantics.lts import Lts, State

logger = logging.getLogger(__name__)

Config = Tuple[mn.Monitor, State]
Move = Tuple[str, mn.Monitor, State, str]


@dataclass(frozen=True)
class Exhaustive:
    depth: int


@dataclass(frozen=True)
class RandomRun:
    seed: int
    fuel: int


@dataclass
class Transcript:
    events: List[TranscriptEvent] = field(default_factory=list)
    trace: Tuple[str, ...] = ()
    monitor: Optional[mn.Monitor] = None
    state: Optional[State] = None

    @property
    def verdict(self) -> mn.Verdict:
        return mn.verdict_of(self.monitor) or mn.Verdict.NONE

    def lines(self) -> List[str]:
        return [f"{e.monitor} | {e.state} --{e.label}--> {e.next_monitor} | {e.next_state}  [{e.rule}]"
                for e in self.events]


def state_label(state: State) -> str:
    if isinstance(state, (pr.Nil, pr.Act, pr.Choice, pr.PRec, pr.PVar)):
        return format_process(state)
    return str(state)


def moves(m: mn.Monitor, lts: Lts, p: State) -> List[Move]:
    """Every instrumented step available from ``<m, p>``."""
    result: List[Move] = []
    monitor_tau = step(m, TAU)
    for action in lts.alphabet:
        targets = lts.successors(p, action)
        if not targets:
            continue
        followers = step(m, action)
        for q in targets:
            if followers:
                result.extend((action, n, q, "iMon") for n in followers)
            elif not monitor_tau:
                result.append((action, mn.END, q, "iTer"))
    result.extend((TAU, m, q, "iAsyP") for q in lts.successors(p, TAU))
    result.extend((TAU, n, p, "iAsyM") for n in monitor_tau)
    return result


def _silent_closure(configs: Iterable[Config], lts: Lts, cap: int) -> FrozenSet[Config]:
    seen: Set[Config] = set(configs)
    frontier = list(seen)
    while frontier:
        m, p = frontier.pop()
        for label, n, q, _ in moves(m, lts, p):
            if label == TAU and (n, q) not in seen:
                seen.add((n, q))
                if len(seen) > cap:
                    raise CapExceededError(f"instrumented closure exceeded {cap} configurations")
                frontier.append((n, q))
    return frozenset(seen)


def instrumented_after(m: mn.Monitor, lts: Lts, trace: Iterable[str], state: State = None,
                       cap: Optional[int] = None) -> FrozenSet[Config]:
    """Every ``<n, q>`` with ``<m, p> =trace=> <n, q>``."""
    cap = cap if cap is not None else get_config().tau_cap
    p = lts.initial if state is None else state
    current = _silent_closure({(m, p)}, lts, cap)
    for action in trace:
        moved = {(n, q) for c in current for label, n, q, _ in moves(c[0], lts, c[1]) if label == action}
        current = _silent_closure(moved, lts, cap)
    return current


def instrument_run(m: mn.Monitor, lts: Lts, mode: Union[Exhaustive, RandomRun],
                   state: State = None, cap: Optional[int] = None):
    """Run ``m`` instrumented with ``lts`` from ``state`` (default: initial state).

    Exhaustive mode returns the set of ``(trace, verdict)`` pairs reachable
    with traces up to ``mode.depth``; random mode returns a ``Transcript``.
    """
    if not mn.is_closed(m):
        raise OpenTermError(f"monitor has free variables {sorted(mn.free_vars(m))}")
    p = lts.initial if state is None else state
    if isinstance(mode, RandomRun):
        return _random_run(m, lts, p, mode)

    cap = cap if cap is not None else get_config().tau_cap
    outcomes: Set[Tuple[Tuple[str, ...], mn.Verdict]] = set()
    start = (m, p, ())
    seen = {start}
    frontier = [start]
    while frontier:
        n, q, word = frontier.pop()
        verdict = mn.verdict_of(n)
        if verdict is not None:
            outcomes.add((word, verdict))
        for label, n2, q2, _ in moves(n, lts, q):
            if label == TAU:
                nxt = (n2, q2, word)
            elif len(word) < mode.depth:
                nxt = (n2, q2, word + (label,))
            else:
                continue
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > cap:
                    raise CapExceededError(f"instrumented exploration exceeded {cap} configurations")
                frontier.append(nxt)
    logger.debug("instrumented exploration: %d configurations, %d outcomes", len(seen), len(outcomes))
    return frozenset(outcomes)


def _random_run(m: mn.Monitor, lts: Lts, p: State, mode: RandomRun) -> Transcript:
    rng = random.Random(mode.seed)
    transcript = Transcript(monitor=m, state=p)
    prefer_monitor = True
    for number in range(1, mode.fuel + 1):
        if mn.verdict_of(m) is not None:
            break
        available = moves(m, lts, p)
        if not available:
            break
        external = [mv for mv in available if mv[0] != TAU]
        monitor_tau = [mv for mv in available if mv[3] == "iAsyM"]
        process_tau = [mv for mv in available if mv[3] == "iAsyP"]
        kinds = [k for k, group in (("tau", monitor_tau or process_tau), ("ext", external)) if group]
        if rng.choice(kinds) == "ext":
            chosen = rng.choice(external)
        else:
            # alternate which side gets its silent move
            side = monitor_tau if (prefer_monitor and monitor_tau) or not process_tau else process_tau
            prefer_monitor = not prefer_monitor
            chosen = rng.choice(side)
        label, n, q, rule = chosen
        transcript.events.append(TranscriptEvent(
            step=number, monitor=format_monitor(m), state=state_label(p), label=label, rule=rule,
            next_monitor=format_monitor(n), next_state=state_label(q)))
        if label != TAU:
            transcript.trace += (label,)
        m, p = n, q
    transcript.monitor, transcript.state = m, p
    return transcript
