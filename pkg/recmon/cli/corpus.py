"""
Generators for the self-test corpus: formulas, monitors and LTSs.
"""
import random
from itertools import chain, combinations, permutations, product
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet

from recmon.semantics.lts import Lts


def action_sets(alphabet: Alphabet) -> List[frozenset]:
    """Non-empty subsets of the alphabet, smallest first."""
    return [frozenset(c) for c in chain.from_iterable(
        combinations(alphabet.actions, n) for n in range(1, len(alphabet) + 1))]


def hml_formulas(alphabet: Alphabet, depth: int) -> List[fm.Formula]:
    """Every HML formula of modal/boolean depth at most ``depth``, up to commutativity of & and |."""
    level: List[fm.Formula] = [fm.TT, fm.FF]
    sets = action_sets(alphabet)
    for _ in range(depth):
        below = level
        nxt = {fm.TT: None, fm.FF: None}
        for f in below:
            for actions in sets:
                nxt[fm.Box(actions, f)] = None
                nxt[fm.Diamond(actions, f)] = None
        for i, f in enumerate(below):
            for g in below[i:]:
                nxt[fm.And(f, g)] = None
                nxt[fm.Or(f, g)] = None
        level = list(nxt)
    return level


def random_hml(rng: random.Random, alphabet: Alphabet, depth: int) -> fm.Formula:
    if depth == 0 or rng.random() < 0.15:
        return rng.choice((fm.TT, fm.FF))
    kind = rng.randrange(4)
    if kind < 2:
        actions = rng.choice(action_sets(alphabet))
        body = random_hml(rng, alphabet, depth - 1)
        return fm.Box(actions, body) if kind == 0 else fm.Diamond(actions, body)
    left, right = random_hml(rng, alphabet, depth - 1), random_hml(rng, alphabet, depth - 1)
    return fm.And(left, right) if kind == 2 else fm.Or(left, right)


def random_fixpoint_formula(rng: random.Random, alphabet: Alphabet, greatest: bool = True,
                            max_length: int = 20, modal_only: Optional[str] = None) -> fm.Formula:
    """Random closed guarded formula using only ``max`` (or only ``min``) fixpoints.

    ``modal_only`` restricts modalities to ``"box"`` or ``"diamond"``.
    """
    sets = action_sets(alphabet)
    binder = fm.Max if greatest else fm.Min

    def gen(budget: int, bound: Sequence[str], usable: Sequence[str]) -> fm.Formula:
        roll = rng.random()
        if budget <= 1 or roll < 0.12:
            if usable and rng.random() < 0.6:
                return fm.Var(rng.choice(list(usable)))
            return rng.choice((fm.TT, fm.FF))
        if roll < 0.55:
            kind = modal_only or rng.choice(("box", "diamond"))
            body = gen(budget - 2, bound, bound)
            actions = rng.choice(sets)
            return fm.Box(actions, body) if kind == "box" else fm.Diamond(actions, body)
        if roll < 0.75 and len(bound) < 3:
            var = f"X{len(bound)}"
            return binder(var, gen(budget - 1, list(bound) + [var], usable))
        split = rng.randint(1, max(1, budget - 2))
        left = gen(split, bound, usable)
        right = gen(max(1, budget - 1 - split), bound, usable)
        if modal_only == "box":
            return fm.And(left, right)
        if modal_only == "diamond":
            return fm.Or(left, right)
        return fm.And(left, right) if rng.random() < 0.5 else fm.Or(left, right)

    while True:
        f = gen(max_length, [], [])
        if fm.length(f) <= max_length:
            return f


def random_reactive_monitor(rng: random.Random, alphabet: Alphabet, depth: int = 3,
                            parallel: bool = True) -> mn.Monitor:
    """Random closed monitor in which every state can analyse every action."""

    def full_sum(level: int, bound: Sequence[str]) -> mn.Monitor:
        return mn.choice(mn.Prefix(a, gen(level - 1, bound, True)) for a in alphabet)

    def gen(level: int, bound: Sequence[str], guarded: bool) -> mn.Monitor:
        roll = rng.random()
        if level <= 0 or roll < 0.2:
            if bound and guarded and rng.random() < 0.5:
                return mn.MVar(rng.choice(list(bound)))
            return rng.choice((mn.YES, mn.NO, mn.END))
        if roll < 0.55:
            return full_sum(level, bound)
        if roll < 0.7 and len(bound) < 2:
            var = f"x{len(bound)}"
            return mn.Rec(var, full_sum(level, list(bound) + [var]))
        if parallel:
            op = mn.Conj if rng.random() < 0.5 else mn.Disj
            return op(gen(level - 1, bound, guarded), gen(level - 1, bound, guarded))
        return full_sum(level, bound)

    return gen(depth, [], False)


def random_regular_monitor(rng: random.Random, alphabet: Alphabet, depth: int = 3) -> mn.Monitor:
    """Random closed regular monitor; sums may be partial or repeat actions."""

    def gen(level: int, bound: Sequence[str], guarded: bool) -> mn.Monitor:
        roll = rng.random()
        if level <= 0 or roll < 0.25:
            if bound and guarded and rng.random() < 0.5:
                return mn.MVar(rng.choice(list(bound)))
            return rng.choice((mn.YES, mn.NO, mn.END))
        if roll < 0.6:
            return mn.Prefix(rng.choice(alphabet.actions), gen(level - 1, bound, True))
        if roll < 0.8:
            return mn.Sum(gen(level - 1, bound, guarded), gen(level - 1, bound, guarded))
        var = f"x{len(bound)}"
        return mn.Rec(var, gen(level - 1, list(bound) + [var], False))

    return gen(depth, [], False)


def all_lts(alphabet: Alphabet, n_states: int) -> Iterator[Lts]:
    """Every tau-free LTS on states ``0..n_states-1`` with initial state 0."""
    slots = [(s, a, t) for s in range(n_states) for a in alphabet for t in range(n_states)]
    for mask in product((False, True), repeat=len(slots)):
        yield Lts(alphabet, 0, [slot for slot, on in zip(slots, mask) if on], range(n_states))


EXHAUSTIVE_LTS_SLOTS = 18

Edge = Tuple[int, str, int]
Shape = Tuple[int, Tuple[Edge, ...]]


def _rooted_quotient(edges: Sequence[Edge]) -> Shape:
    """Reachable part of ``edges`` from state 0, collapsed by strong bisimilarity,
    with the non-initial states numbered so the edge tuple is smallest."""
    succ: Dict[int, Set[Tuple[str, int]]] = {}
    for src, action, dst in edges:
        succ.setdefault(src, set()).add((action, dst))
    reach, frontier = {0}, [0]
    while frontier:
        for _, dst in succ.get(frontier.pop(), ()):
            if dst not in reach:
                reach.add(dst)
                frontier.append(dst)

    block = {s: 0 for s in reach}
    while True:
        signature = {s: (block[s], frozenset((a, block[t]) for a, t in succ.get(s, ()))) for s in reach}
        ids: Dict[tuple, int] = {}
        refined = {s: ids.setdefault(signature[s], len(ids)) for s in sorted(reach)}
        if len(ids) == len(set(block.values())):
            break
        block = refined

    root = block[0]
    others = sorted(set(block.values()) - {root})
    quotient = {(block[s], a, block[t]) for s in reach for a, t in succ.get(s, ())}
    best: Optional[Tuple[Edge, ...]] = None
    for order in permutations(others):
        rename = {root: 0, **{b: i + 1 for i, b in enumerate(order)}}
        candidate = tuple(sorted((rename[s], a, rename[t]) for s, a, t in quotient))
        if best is None or candidate < best:
            best = candidate
    return len(others) + 1, best or ()


def rooted_lts_shapes(alphabet: Alphabet, max_states: int) -> List[Shape]:
    """One minimal representative per bisimilarity class of rooted tau-free LTSs
    with at most ``max_states`` states, as ``(state count, edges)`` with initial state 0.

    Every state of every such LTS is bisimilar to the initial state of some
    representative, so a bisimulation-invariant property only needs checking
    at the representatives' initial states.
    """
    actions = tuple(alphabet.actions)
    seen: Set[Shape] = set()
    result: List[Shape] = []
    for n_states in range(1, max_states + 1):
        slots = [(s, a, t) for s in range(n_states) for a in actions for t in range(n_states)]
        for mask in product((False, True), repeat=len(slots)):
            key = _rooted_quotient([slot for slot, on in zip(slots, mask) if on])
            if key not in seen:
                seen.add(key)
                result.append(key)
    return result


def shape_lts(alphabet: Alphabet, shape: Shape) -> Lts:
    n_states, edges = shape
    return Lts(alphabet, 0, edges, range(n_states))


def exhaustive_lts_states(alphabet: Alphabet, max_states: int) -> int:
    """Largest state count up to ``max_states`` small enough to enumerate every LTS."""
    n = 0
    while n < max_states and (n + 1) ** 2 * len(alphabet) <= EXHAUSTIVE_LTS_SLOTS:
        n += 1
    return n


def random_lts(rng: random.Random, alphabet: Alphabet, n_states: int,
               density: float = 0.35, tau: bool = False) -> Lts:
    labels = list(alphabet.actions) + (["tau"] if tau else [])
    transitions = [(s, a, t) for s in range(n_states) for a in labels for t in range(n_states)
                   if rng.random() < density]
    return Lts(alphabet, 0, transitions, range(n_states))
