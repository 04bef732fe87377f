"""
Finite labelled transition systems with internal moves.
"""
import logging
from functools import cached_property
from typing import Dict, FrozenSet, Hashable, Iterable, Optional, Set, Tuple

import networkx as nx

from recmon.config import get_config
from recmon.errors import AlphabetError, CapExceededError, OpenTermError, UnguardedError
from recmon.syntax import process as pr
from recmon.syntax.alphabet import TAU, Alphabet

logger = logging.getLogger(__name__)

State = Hashable
Transition = Tuple[State, str, State]


class Lts:
    """A finite LTS over an alphabet plus ``tau``.

    The graph is a ``networkx.MultiDiGraph`` whose edges carry a ``label``
    attribute. Weak transitions are computed once and cached.
    """

    def __init__(self, alphabet: Alphabet, initial: State,
                 transitions: Iterable[Transition], states: Iterable[State] = ()):
        self.alphabet = alphabet
        self.initial = initial
        self.graph = nx.MultiDiGraph()
        self.graph.add_node(initial)
        self.graph.add_nodes_from(states)
        for src, label, dst in transitions:
            if label != TAU and label not in alphabet:
                raise AlphabetError(f"transition label {label!r} is not in alphabet {{{alphabet}}}")
            self.graph.add_edge(src, dst, label=label)

    @property
    def states(self) -> Tuple[State, ...]:
        return tuple(self.graph.nodes)

    @property
    def transitions(self) -> FrozenSet[Transition]:
        return frozenset((src, data["label"], dst) for src, dst, data in self.graph.edges(data=True))

    def successors(self, state: State, label: str) -> FrozenSet[State]:
        return frozenset(dst for _, dst, data in self.graph.out_edges(state, data=True)
                         if data["label"] == label)

    @cached_property
    def _tau_closure(self) -> Dict[State, FrozenSet[State]]:
        tau_graph = nx.DiGraph()
        tau_graph.add_nodes_from(self.graph.nodes)
        tau_graph.add_edges_from((src, dst) for src, dst, data in self.graph.edges(data=True)
                                 if data["label"] == TAU)
        return {s: frozenset(nx.descendants(tau_graph, s) | {s}) for s in tau_graph.nodes}

    def tau_closure(self, state: State) -> FrozenSet[State]:
        return self._tau_closure[state]

    @cached_property
    def _weak(self) -> Dict[Tuple[State, str], FrozenSet[State]]:
        weak: Dict[Tuple[State, str], FrozenSet[State]] = {}
        for state in self.graph.nodes:
            for action in self.alphabet:
                reached: Set[State] = set()
                for before in self._tau_closure[state]:
                    for after in self.successors(before, action):
                        reached |= self._tau_closure[after]
                weak[(state, action)] = frozenset(reached)
        return weak

    def weak_successors(self, state: State, action: str) -> FrozenSet[State]:
        """States ``q`` with ``state =action=> q``."""
        return self._weak[(state, action)]

    def weak_after(self, states: Iterable[State], trace: Iterable[str]) -> FrozenSet[State]:
        current: Set[State] = set()
        for state in states:
            current |= self._tau_closure[state]
        for action in trace:
            nxt: Set[State] = set()
            for state in current:
                nxt |= self._weak[(state, action)]
            current = nxt
        return frozenset(current)

    def __repr__(self) -> str:
        return (f"Lts(states={self.graph.number_of_nodes()}, "
                f"transitions={self.graph.number_of_edges()}, initial={self.initial!r})")


def process_successors(p: pr.Process) -> FrozenSet[Tuple[str, pr.Process]]:
    """SOS moves of a closed guarded process; ``rec`` moves as its unfolding."""
    if isinstance(p, pr.Act):
        return frozenset({(p.action, p.body)})
    if isinstance(p, pr.Choice):
        return process_successors(p.left) | process_successors(p.right)
    if isinstance(p, pr.PRec):
        return process_successors(pr.substitute(p.body, p.var, p))
    if isinstance(p, pr.PVar):
        raise OpenTermError(f"free process variable {p.name!r}")
    return frozenset()


def lts_from_process(p: pr.Process, alphabet: Alphabet, cap: Optional[int] = None) -> Lts:
    """Explore the states reachable from ``p``."""
    if pr.free_vars(p):
        raise OpenTermError(f"process has free variables {sorted(pr.free_vars(p))}")
    if not pr.is_guarded(p):
        raise UnguardedError("process recursion must be guarded by a prefix")
    cap = cap if cap is not None else get_config().tau_cap

    seen = {p}
    frontier = [p]
    transitions = []
    while frontier:
        state = frontier.pop()
        for label, target in process_successors(state):
            transitions.append((state, label, target))
            if target not in seen:
                seen.add(target)
                if len(seen) > cap:
                    raise CapExceededError(f"process exploration exceeded {cap} states")
                frontier.append(target)
    logger.debug("process LTS: %d states, %d transitions", len(seen), len(transitions))
    return Lts(alphabet, p, transitions, seen)
