"""
Knaster-Tarski evaluation of recHML over finite models.

A model is a finite universe (trace positions or LTS states) with a
diamond and a box operator on subsets of it. Least fixpoints iterate up
from the empty set, greatest fixpoints down from the universe; inner
fixpoints are recomputed in every outer round.
"""
from abc import ABC, abstractmethod
from typing import Dict, FrozenSet, Hashable, List, Optional

from recmon.errors import AlphabetError, InputError
from recmon.syntax import formula as fm
from recmon.syntax.fragments import require_evaluable
from recmon.syntax.trace import TraceSpec

from recmon.semantics.lts import Lts

Point = Hashable
Environment = Dict[str, FrozenSet[Point]]


class FixpointEvaluator(ABC):
    """Evaluate formulas to the set of points satisfying them.

    ``max_rounds`` records the longest fixpoint iteration seen; monotone
    convergence keeps it at most ``len(universe) + 1``.
    """

    def __init__(self, universe: FrozenSet[Point]):
        self.universe = universe
        self.max_rounds = 0

    @abstractmethod
    def diamond(self, actions: FrozenSet[str], target: FrozenSet[Point]) -> FrozenSet[Point]:
        """Points with an ``actions`` step into ``target``."""

    @abstractmethod
    def box(self, actions: FrozenSet[str], target: FrozenSet[Point]) -> FrozenSet[Point]:
        """Points whose every ``actions`` step lands in ``target``."""

    def evaluate(self, f: fm.Formula, env: Optional[Environment] = None) -> FrozenSet[Point]:
        env = env or {}
        if isinstance(f, fm.Tt):
            return self.universe
        if isinstance(f, fm.Ff):
            return frozenset()
        if isinstance(f, fm.Var):
            return env[f.name]
        if isinstance(f, fm.And):
            return self.evaluate(f.left, env) & self.evaluate(f.right, env)
        if isinstance(f, fm.Or):
            return self.evaluate(f.left, env) | self.evaluate(f.right, env)
        if isinstance(f, fm.Diamond):
            return self.diamond(f.actions, self.evaluate(f.body, env))
        if isinstance(f, fm.Box):
            return self.box(f.actions, self.evaluate(f.body, env))

        current = frozenset() if isinstance(f, fm.Min) else self.universe
        rounds = 0
        while True:
            rounds += 1
            nxt = self.evaluate(f.body, {**env, f.var: current})
            if nxt == current:
                break
            current = nxt
        self.max_rounds = max(self.max_rounds, rounds)
        return current


class TraceModel(FixpointEvaluator):
    """Suffix positions of a finite trace or lasso.

    Position ``i`` has label ``labels[i]`` and successor ``succ[i]``; the
    terminal position of a finite trace has neither.
    """

    def __init__(self, trace: TraceSpec):
        labels: List[Optional[str]] = list(trace.prefix)
        succ: List[Optional[int]] = list(range(1, len(labels) + 1))
        if trace.cycle is None:
            labels.append(None)
            succ.append(None)
        else:
            start = len(labels)
            labels.extend(trace.cycle)
            succ.extend(range(start + 1, start + len(trace.cycle)))
            succ.append(start)
        self.labels = labels
        self.succ = succ
        super().__init__(frozenset(range(len(labels))))

    def diamond(self, actions, target):
        return frozenset(i for i in self.universe
                         if self.succ[i] is not None
                         and self.labels[i] in actions and self.succ[i] in target)

    def box(self, actions, target):
        return frozenset(i for i in self.universe
                         if self.succ[i] is None
                         or self.labels[i] not in actions or self.succ[i] in target)


class BranchingModel(FixpointEvaluator):
    """States of an LTS; modalities use weak transitions."""

    def __init__(self, lts: Lts):
        self.lts = lts
        super().__init__(frozenset(lts.states))

    def diamond(self, actions, target):
        return frozenset(p for p in self.universe
                         if any(self.lts.weak_successors(p, a) & target for a in actions))

    def box(self, actions, target):
        return frozenset(p for p in self.universe
                         if all(self.lts.weak_successors(p, a) <= target for a in actions))


def _check_trace(t: TraceSpec, alphabet) -> None:
    if alphabet is None:
        return
    for action in t.prefix + (t.cycle or ()):
        alphabet.check(action)


def eval_linear(f: fm.Formula, t: TraceSpec, alphabet=None) -> bool:
    """Does the lasso ``t`` satisfy ``f`` under the linear-time semantics?"""
    require_evaluable(f, "linear-time evaluation")
    if not t.is_lasso:
        raise InputError("linear-time semantics needs an infinite (lasso) trace")
    _check_trace(t, alphabet)
    return 0 in TraceModel(t).evaluate(f)


def eval_finfinite(f: fm.Formula, g: TraceSpec, alphabet=None) -> bool:
    """Does the finite trace or lasso ``g`` satisfy ``f`` under the finfinite semantics?"""
    require_evaluable(f, "finfinite evaluation")
    _check_trace(g, alphabet)
    return 0 in TraceModel(g).evaluate(f)


def eval_branching(f: fm.Formula, lts: Lts, state: Point = None) -> bool:
    """Does ``state`` (default: the initial state) satisfy ``f``?"""
    require_evaluable(f, "branching-time evaluation")
    state = lts.initial if state is None else state
    if state not in lts.graph:
        raise InputError(f"state {state!r} is not in the LTS")
    for action in fm.actions_of(f):
        if action not in lts.alphabet:
            raise AlphabetError(f"formula action {action!r} is not in the LTS alphabet")
    return state in BranchingModel(lts).evaluate(f)


def satisfying_states(f: fm.Formula, lts: Lts) -> FrozenSet[Point]:
    require_evaluable(f, "branching-time evaluation")
    return BranchingModel(lts).evaluate(f)
