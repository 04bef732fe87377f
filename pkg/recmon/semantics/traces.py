"""
Trace-processes, trace enumeration and the traces an LTS produces.
"""
from itertools import product
from typing import FrozenSet, Iterator, List, Set, Tuple

from recmon.syntax.alphabet import Alphabet
from recmon.syntax.trace import TraceSpec

from recmon.semantics.lts import Lts, State


def words(alphabet: Alphabet, max_length: int, min_length: int = 0) -> Iterator[Tuple[str, ...]]:
    """All words over ``alphabet`` by increasing length."""
    for n in range(min_length, max_length + 1):
        yield from product(alphabet.actions, repeat=n)


def finite_traces(alphabet: Alphabet, bound: int) -> List[TraceSpec]:
    return [TraceSpec(word, None) for word in words(alphabet, bound)]


def lassos(alphabet: Alphabet, bound: int) -> List[TraceSpec]:
    """Distinct lassos ``u·v^ω`` with ``|u| + |v| <= bound``."""
    seen: Set[TraceSpec] = set()
    result: List[TraceSpec] = []
    for total in range(1, bound + 1):
        for cycle_length in range(1, total + 1):
            for prefix in product(alphabet.actions, repeat=total - cycle_length):
                for cycle in product(alphabet.actions, repeat=cycle_length):
                    lasso = TraceSpec(prefix, cycle)
                    if lasso not in seen:
                        seen.add(lasso)
                        result.append(lasso)
    return result


def trace_process(g: TraceSpec, alphabet: Alphabet) -> Lts:
    """Deterministic tau-free LTS producing exactly the prefixes of ``g``.

    States are integers; the initial state is 0. A lasso's last cycle state
    loops back to the start of the cycle.
    """
    letters = list(g.prefix) + list(g.cycle or ())
    transitions = [(i, action, i + 1) for i, action in enumerate(letters)]
    if g.cycle is not None:
        last = len(letters) - 1
        transitions[-1] = (last, letters[-1], len(g.prefix))
        states = range(len(letters))
    else:
        states = range(len(letters) + 1)
    return Lts(alphabet, 0, transitions, states)


def produced_finfinite_traces(lts: Lts, state: State, bound: int) -> FrozenSet[TraceSpec]:
    """Finite traces of length <= ``bound`` and lassos of size <= ``bound`` produced from ``state``.

    Works on the determinized graph of tau-closed state sets. A lasso is
    produced iff its run on that graph never reaches the empty set; since
    the graph is finite and deterministic the run is eventually periodic.
    """
    start = lts.tau_closure(state)
    result: Set[TraceSpec] = set()

    def step(current: FrozenSet[State], action: str) -> FrozenSet[State]:
        return lts.weak_after(current, (action,))

    frontier = [((), start)]
    while frontier:
        word, current = frontier.pop()
        result.add(TraceSpec(word, None))
        if len(word) < bound:
            for action in lts.alphabet:
                nxt = step(current, action)
                if nxt:
                    frontier.append((word + (action,), nxt))

    for lasso in lassos(lts.alphabet, bound):
        current = lts.weak_after(start, lasso.prefix)
        seen: Set[FrozenSet[State]] = set()
        while current and current not in seen:
            seen.add(current)
            current = lts.weak_after(current, lasso.cycle)
        if current:
            result.add(lasso)
    return frozenset(result)
