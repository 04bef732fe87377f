"""
Alternating, nondeterministic and deterministic finite automata.
"""
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Sequence, Set, Tuple

from recmon.syntax.alphabet import Alphabet

Antichain = FrozenSet[FrozenSet[int]]


def minimal_sets(sets: Iterable[FrozenSet]) -> FrozenSet[FrozenSet]:
    """Keep only the inclusion-minimal sets."""
    ordered = sorted(set(sets), key=len)
    kept: List[FrozenSet] = []
    for candidate in ordered:
        if not any(k <= candidate for k in kept):
            kept.append(candidate)
    return frozenset(kept)


@dataclass
class AlternatingAutomaton:
    """Alternating automaton whose transition function is stored as antichains.

    ``delta[(q, a)]`` lists the minimal sets ``S`` with ``δ(q, a)(S) = 1``;
    an empty antichain is *false*, ``{∅}`` is *true*.
    """

    states: Tuple[Hashable, ...]
    alphabet: Alphabet
    start: int
    accepting: FrozenSet[int]
    delta: Dict[Tuple[int, str], Antichain]

    def accepts(self, word: Sequence[str]) -> bool:
        def accepted(q: int, i: int) -> bool:
            if i == len(word):
                return q in self.accepting
            return any(all(accepted(p, i + 1) for p in choice)
                       for choice in self.delta[(q, word[i])])

        return accepted(self.start, 0)

    def to_text(self, label=str) -> str:
        lines = [f"start {self.start}"]
        for i, state in enumerate(self.states):
            lines.append(f"state {i} {label(state)}")
        lines.extend(f"accept {i}" for i in sorted(self.accepting))
        for (q, a), choices in sorted(self.delta.items()):
            if choices:
                text = " | ".join("{" + ",".join(map(str, sorted(c))) + "}" for c in
                                  sorted(choices, key=lambda c: sorted(c)))
                lines.append(f"edge {q} {a} {text}")
        return "\n".join(lines)


@dataclass
class Nfa:
    states: Tuple[Hashable, ...]
    alphabet: Alphabet
    start: Hashable
    delta: Dict[Tuple[Hashable, str], FrozenSet[Hashable]]
    accepting: FrozenSet[Hashable]

    def accepts(self, word: Iterable[str]) -> bool:
        current = {self.start}
        for action in word:
            current = set().union(*(self.delta.get((q, action), frozenset()) for q in current))
            if not current:
                return False
        return bool(current & self.accepting)

    def to_text(self) -> str:
        index = {state: i for i, state in enumerate(self.states)}
        lines = [f"start {index[self.start]}"]
        lines.extend(f"state {index[s]}" for s in self.states)
        lines.extend(f"accept {index[s]}" for s in self.states if s in self.accepting)
        for (src, a), targets in self.delta.items():
            for dst in targets:
                lines.append(f"edge {index[src]} {a} {index[dst]}")
        return "\n".join(lines)


@dataclass
class Dfa:
    """Total deterministic automaton over states ``0..n-1``."""

    size: int
    alphabet: Alphabet
    start: int
    delta: Dict[Tuple[int, str], int]
    accepting: FrozenSet[int]
    _coaccessible: FrozenSet[int] = field(default=None, repr=False, compare=False)

    @property
    def states(self) -> range:
        return range(self.size)

    def run(self, word: Iterable[str], state: int = None) -> int:
        state = self.start if state is None else state
        for action in word:
            state = self.delta[(state, action)]
        return state

    def accepts(self, word: Iterable[str]) -> bool:
        return self.run(word) in self.accepting

    def coaccessible(self) -> FrozenSet[int]:
        """States from which an accepting state is reachable."""
        if self._coaccessible is None:
            predecessors: Dict[int, Set[int]] = {q: set() for q in self.states}
            for (src, _), dst in self.delta.items():
                predecessors[dst].add(src)
            seen = set(self.accepting)
            queue = deque(seen)
            while queue:
                q = queue.popleft()
                for p in predecessors[q]:
                    if p not in seen:
                        seen.add(p)
                        queue.append(p)
            self._coaccessible = frozenset(seen)
        return self._coaccessible

    def is_empty(self) -> bool:
        return self.start not in self.coaccessible()

    def minimize(self) -> "Dfa":
        blocks = [self.accepting, frozenset(self.states) - self.accepting]
        partition = refine_partition(self.states, self.alphabet, self.delta, blocks)
        return quotient(self, partition)

    def equivalent(self, other: "Dfa") -> bool:
        """Language equivalence by a product search."""
        start = (self.start, other.start)
        seen = {start}
        queue = deque([start])
        while queue:
            p, q = queue.popleft()
            if (p in self.accepting) != (q in other.accepting):
                return False
            for action in self.alphabet:
                nxt = (self.delta[(p, action)], other.delta[(q, action)])
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        return True

    def to_text(self) -> str:
        lines = [f"start {self.start}"]
        lines.extend(f"state {q}" for q in self.states)
        lines.extend(f"accept {q}" for q in sorted(self.accepting))
        lines.extend(f"edge {q} {a} {self.delta[(q, a)]}" for q in self.states for a in self.alphabet)
        return "\n".join(lines)


def refine_partition(states: Iterable[int], alphabet: Alphabet,
                     delta: Dict[Tuple[int, str], int],
                     blocks: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    """Hopcroft refinement of ``blocks`` into the coarsest stable partition."""
    inverse: Dict[Tuple[str, int], Set[int]] = {}
    for (src, action), dst in delta.items():
        inverse.setdefault((action, dst), set()).add(src)

    partition: List[FrozenSet[int]] = [frozenset(b) for b in blocks if b]
    waiting: List[FrozenSet[int]] = list(partition)
    while waiting:
        splitter = waiting.pop()
        for action in alphabet:
            pre: Set[int] = set()
            for q in splitter:
                pre |= inverse.get((action, q), set())
            if not pre:
                continue
            refined: List[FrozenSet[int]] = []
            for block in partition:
                inside = block & pre
                outside = block - pre
                if inside and outside:
                    refined.extend([inside, outside])
                    if block in waiting:
                        waiting.remove(block)
                        waiting.extend([inside, outside])
                    else:
                        waiting.append(inside if len(inside) <= len(outside) else outside)
                else:
                    refined.append(block)
            partition = refined
    return partition


def quotient(dfa: Dfa, partition: List[FrozenSet[int]]) -> Dfa:
    """Collapse each block, numbering blocks in breadth-first order from the start."""
    block_of = {q: i for i, block in enumerate(partition) for q in block}
    order: Dict[int, int] = {block_of[dfa.start]: 0}
    queue = deque([block_of[dfa.start]])
    representative = {i: next(iter(block)) for i, block in enumerate(partition)}
    delta: Dict[Tuple[int, str], int] = {}
    while queue:
        block = queue.popleft()
        for action in dfa.alphabet:
            target = block_of[dfa.delta[(representative[block], action)]]
            if target not in order:
                order[target] = len(order)
                queue.append(target)
            delta[(order[block], action)] = order[target]
    accepting = frozenset(order[block_of[q]] for q in dfa.accepting if block_of[q] in order)
    return Dfa(len(order), dfa.alphabet, 0, delta, accepting)


def nfa_to_dfa(nfa: Nfa) -> Dfa:
    """Subset construction; the empty subset is kept as a rejecting sink so the result is total."""
    start = frozenset({nfa.start})
    index: Dict[FrozenSet, int] = {start: 0}
    queue = deque([start])
    delta: Dict[Tuple[int, str], int] = {}
    accepting: Set[int] = set()
    while queue:
        subset = queue.popleft()
        if subset & nfa.accepting:
            accepting.add(index[subset])
        for action in nfa.alphabet:
            target: Set = set()
            for q in subset:
                target |= nfa.delta.get((q, action), frozenset())
            target = frozenset(target)
            if target not in index:
                index[target] = len(index)
                queue.append(target)
            delta[(index[subset], action)] = index[target]
    return Dfa(len(index), nfa.alphabet, 0, delta, frozenset(accepting))
