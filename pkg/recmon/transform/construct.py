"""
From parallel monitors to automata and back to regular monitors.

The alternating automaton has the submonitors of ``m`` as states. Its
transition function is the least solution of closure conditions read off
the monitor syntax, evaluated under System N so that every state stays a
submonitor.
"""
import logging
from collections import deque
from functools import lru_cache
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

from recmon.errors import InconsistentMonitorError, OpenTermError, ReactivityError
from recmon.syntax import monitor as mn
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.printer import format_monitor

from recmon.engine.analysis import is_reactive, verdict_table
from recmon.engine.steps import System, can_analyse, tau_closure
from recmon.transform.automata import (
    AlternatingAutomaton,
    Antichain,
    Dfa,
    Nfa,
    minimal_sets,
    nfa_to_dfa,
    refine_partition,
)

logger = logging.getLogger(__name__)

ACCEPT = "accept"
REJECT = "reject"

_TRUE: Antichain = frozenset({frozenset()})
_FALSE: Antichain = frozenset()


def _prepare(m: mn.Monitor, alphabet: Alphabet) -> mn.Monitor:
    if not mn.is_closed(m):
        raise OpenTermError(f"monitor has free variables {sorted(mn.free_vars(m))}")
    if not mn.has_unique_binders(m):
        m = mn.rename_binders(m)
    if not mn.is_regular(m) and not is_reactive(m, alphabet):
        raise ReactivityError(f"parallel monitor {format_monitor(m)} is not reactive")
    return m


def monitor_to_alternating(m: mn.Monitor, alphabet: Alphabet, polarity: str = ACCEPT) -> AlternatingAutomaton:
    """Alternating automaton recognising the traces ``m`` accepts (or rejects).

    Raises:
        ReactivityError: ``m`` is a non-reactive parallel monitor.
    """
    if polarity not in (ACCEPT, REJECT):
        raise ValueError(f"unknown polarity {polarity!r}")
    m = _prepare(m, alphabet)
    binders = mn.binder_map(m)
    states = mn.submonitors(m)
    index = {q: i for i, q in enumerate(states)}
    target = mn.YES if polarity == ACCEPT else mn.NO
    meet, join = (mn.Conj, mn.Disj) if polarity == ACCEPT else (mn.Disj, mn.Conj)

    accepting = frozenset(i for i, q in enumerate(states)
                          if target in tau_closure({q}, System.N, binders))

    def analyses(q: mn.Monitor, action: str) -> bool:
        return can_analyse(q, action, System.N, binders)

    delta: Dict[Tuple[int, str], Antichain] = {
        (i, a): (_TRUE if i in accepting else _FALSE) for i in range(len(states)) for a in alphabet
    }
    changed = True
    rounds = 0
    while changed:
        changed = False
        rounds += 1
        for i, q in enumerate(states):
            if i in accepting:
                continue
            for a in alphabet:
                new = minimal_sets(delta[(i, a)] | _contribution(q, a, index, delta, binders,
                                                                  meet, join, analyses))
                if new != delta[(i, a)]:
                    delta[(i, a)] = new
                    changed = True
    logger.debug("alternating automaton (%s): %d states, %d rounds", polarity, len(states), rounds)
    return AlternatingAutomaton(tuple(states), alphabet, index[m], accepting, delta)


def _contribution(q, a, index, delta, binders, meet, join, analyses) -> Antichain:
    if isinstance(q, mn.Prefix):
        return frozenset({frozenset({index[q.body]})}) if q.action == a else _FALSE
    if isinstance(q, mn.Sum):
        return delta[(index[q.left], a)] | delta[(index[q.right], a)]
    if isinstance(q, mn.Rec):
        return delta[(index[q.body], a)]
    if isinstance(q, mn.MVar):
        body = binders.get(q.name)
        return delta[(index[body], a)] if body is not None else _FALSE
    if isinstance(q, meet):
        lefts, rights = delta[(index[q.left], a)], delta[(index[q.right], a)]
        return frozenset(s | t for s in lefts for t in rights)
    if isinstance(q, join):
        # either side decides, provided both sides can follow the action
        if analyses(q.left, a) and analyses(q.right, a):
            return delta[(index[q.left], a)] | delta[(index[q.right], a)]
        return _FALSE
    return _FALSE


def alternating_to_nfa(automaton: AlternatingAutomaton) -> Nfa:
    """Powerset construction. Accepting states are dropped from subsets since they accept
    every continuation; a subset accepts when it becomes empty."""
    final = automaton.accepting
    start = frozenset({automaton.start}) - final
    seen = {start}
    order: List[FrozenSet[int]] = [start]
    queue = deque([start])
    delta: Dict[Tuple[FrozenSet[int], str], FrozenSet[FrozenSet[int]]] = {}
    while queue:
        subset = queue.popleft()
        for a in automaton.alphabet:
            combos: FrozenSet[FrozenSet[int]] = frozenset({frozenset()})
            for q in subset:
                options = automaton.delta[(q, a)]
                combos = minimal_sets(c | o for c in combos for o in options)
                if not combos:
                    break
            targets = minimal_sets(c - final for c in combos)
            delta[(subset, a)] = targets
            for target in targets:
                if target not in seen:
                    seen.add(target)
                    order.append(target)
                    queue.append(target)
    accepting = frozenset(s for s in order if not s)
    return Nfa(tuple(order), automaton.alphabet, start, delta, accepting)


@lru_cache(maxsize=1024)
def monitor_dfas(m: mn.Monitor, alphabet: Alphabet) -> Tuple[Dfa, Dfa]:
    """Minimal DFAs for the accepted and the rejected finite traces of ``m``."""
    result = []
    for polarity in (ACCEPT, REJECT):
        nfa = alternating_to_nfa(monitor_to_alternating(m, alphabet, polarity))
        dfa = nfa_to_dfa(nfa).minimize()
        logger.debug("%s DFA: %d NFA states -> %d DFA states", polarity, len(nfa.states), dfa.size)
        result.append(dfa)
    return result[0], result[1]


def _check_disjoint(d_acc: Dfa, d_rej: Dfa) -> None:
    start = (d_acc.start, d_rej.start)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if p in d_acc.accepting and q in d_rej.accepting:
            raise InconsistentMonitorError("some finite trace is both accepted and rejected")
        for a in d_acc.alphabet:
            nxt = (d_acc.delta[(p, a)], d_rej.delta[(q, a)])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)


def consistent_exact(m: mn.Monitor, alphabet: Alphabet) -> bool:
    try:
        _check_disjoint(*monitor_dfas(m, alphabet))
    except InconsistentMonitorError:
        return False
    return True


def dfa_to_regular_monitor(d_acc: Dfa, d_rej: Dfa, reactive: bool = False) -> mn.Monitor:
    """Deterministic regular monitor accepting ``L(d_acc)`` and rejecting ``L(d_rej)``.

    The product automaton is minimised as a machine with outputs
    yes / no / end / undecided; each undecided state becomes a ``rec`` binder.
    Moves into verdict-free states are omitted unless ``reactive`` is set,
    in which case they become ``a.end``.

    Raises:
        InconsistentMonitorError: the two languages intersect.
    """
    alphabet = d_acc.alphabet
    co_acc, co_rej = d_acc.coaccessible(), d_rej.coaccessible()

    start = (d_acc.start, d_rej.start)
    index = {start: 0}
    pairs = [start]
    queue = deque([start])
    delta: Dict[Tuple[int, str], int] = {}
    while queue:
        pair = queue.popleft()
        for a in alphabet:
            nxt = (d_acc.delta[(pair[0], a)], d_rej.delta[(pair[1], a)])
            if nxt not in index:
                index[nxt] = len(pairs)
                pairs.append(nxt)
                queue.append(nxt)
            delta[(index[pair], a)] = index[nxt]

    def output(pair) -> str:
        p, q = pair
        if p in d_acc.accepting and q in d_rej.accepting:
            raise InconsistentMonitorError("some finite trace is both accepted and rejected")
        if p in d_acc.accepting:
            return "yes"
        if q in d_rej.accepting:
            return "no"
        if p not in co_acc and q not in co_rej:
            return "end"
        return "open"

    outputs = [output(pair) for pair in pairs]
    blocks: Dict[str, Set[int]] = {}
    for i, out in enumerate(outputs):
        blocks.setdefault(out, set()).add(i)
    partition = refine_partition(range(len(pairs)), alphabet, delta,
                                 [frozenset(b) for b in blocks.values()])
    block_of = {q: i for i, block in enumerate(partition) for q in block}

    # number blocks breadth-first so variable names are reproducible
    names: Dict[int, str] = {}
    queue = deque([block_of[0]])
    seen = {block_of[0]}
    while queue:
        b = queue.popleft()
        names[b] = f"x{len(names)}"
        rep = next(iter(partition[b]))
        for a in alphabet:
            t = block_of[delta[(rep, a)]]
            if t not in seen:
                seen.add(t)
                queue.append(t)

    def emit(block: int, stack: List[int]) -> Tuple[mn.Monitor, FrozenSet[int]]:
        rep = next(iter(partition[block]))
        out = outputs[rep]
        if out != "open":
            return mn.verdict_term(mn.Verdict(out)), frozenset()
        if block in stack:
            return mn.MVar(names[block]), frozenset({block})
        stack.append(block)
        parts = []
        used: FrozenSet[int] = frozenset()
        for a in alphabet:
            target = block_of[delta[(rep, a)]]
            if outputs[next(iter(partition[target]))] == "end" and not reactive:
                continue
            body, body_used = emit(target, stack)
            parts.append(mn.Prefix(a, body))
            used |= body_used
        stack.pop()
        term = mn.choice(parts)
        if block in used:
            return mn.Rec(names[block], term), used - {block}
        return term, used

    monitor, _ = emit(block_of[0], [])
    return monitor


def determinize(m: mn.Monitor, alphabet: Alphabet) -> mn.Monitor:
    """Verdict-equivalent, syntactically deterministic regular monitor.

    Raises:
        InconsistentMonitorError: ``m`` accepts and rejects some trace.
    """
    mn.require_regular(m, "determinize")
    d_acc, d_rej = monitor_dfas(m, alphabet)
    _check_disjoint(d_acc, d_rej)
    return dfa_to_regular_monitor(d_acc, d_rej)


def pipeline(m: mn.Monitor, alphabet: Alphabet, reactive: bool = False) -> mn.Monitor:
    """Regular or reactive parallel monitor to a deterministic regular monitor."""
    d_acc, d_rej = monitor_dfas(m, alphabet)
    _check_disjoint(d_acc, d_rej)
    return dfa_to_regular_monitor(d_acc, d_rej, reactive=reactive)


def verdict_equivalent(m: mn.Monitor, n: mn.Monitor, alphabet: Alphabet,
                       bound: Optional[int] = None) -> bool:
    """Do ``m`` and ``n`` accept and reject the same finite traces?

    With ``bound`` the comparison covers traces up to that length only;
    otherwise it is exact and both monitors must convert to DFAs.
    """
    if bound is not None:
        return verdict_table(m, alphabet, bound) == verdict_table(n, alphabet, bound)
    m_acc, m_rej = monitor_dfas(m, alphabet)
    n_acc, n_rej = monitor_dfas(n, alphabet)
    return m_acc.equivalent(n_acc) and m_rej.equivalent(n_rej)
