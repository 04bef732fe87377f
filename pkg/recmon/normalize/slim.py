"""
Slim normal form for HML formulas.

A slim formula is ``tt``, ``ff``, a box family ``[a1]f1 & ... & [an]fn`` or
a diamond family ``<a1>f1 | ... | <an>fn`` over distinct actions, with slim
children that are never ``tt`` under a box nor ``ff`` under a diamond. A
family over the whole alphabet whose children are all ``ff`` (box) or all
``tt`` (diamond) is not slim either.

Normalization works innermost-first. Every recorded rewrite strictly
decreases formula length.
"""
import logging
from typing import Dict, List, NamedTuple, Optional, Tuple

from recmon.errors import FragmentError
from recmon.syntax import formula as fm
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.fragments import require

logger = logging.getLogger(__name__)

BOX = "box"
DIAMOND = "diamond"

Family = Dict[str, fm.Formula]


class RewriteStep(NamedTuple):
    rule: str
    before: fm.Formula
    after: fm.Formula


def _flatten(f: fm.Formula, op) -> List[fm.Formula]:
    if isinstance(f, op):
        return _flatten(f.left, op) + _flatten(f.right, op)
    return [f]


def as_family(f: fm.Formula) -> Optional[Tuple[str, Family]]:
    """Read a conjunction of boxes or a disjunction of diamonds as a family.

    Returns None when ``f`` has another shape or an action repeats.
    """
    for kind, op, modal in ((BOX, fm.And, fm.Box), (DIAMOND, fm.Or, fm.Diamond)):
        leaves = _flatten(f, op)
        if not all(isinstance(leaf, modal) for leaf in leaves):
            continue
        family: Family = {}
        for leaf in leaves:
            for action in leaf.actions:
                if action in family:
                    return None
                family[action] = leaf.body
        return kind, family
    return None


class _Slimmer:
    def __init__(self, alphabet: Alphabet):
        self.alphabet = alphabet
        self.steps: List[RewriteStep] = []

    def record(self, rule: str, before: fm.Formula, after: fm.Formula) -> None:
        logger.debug("%s: length %d -> %d", rule, fm.length(before), fm.length(after))
        self.steps.append(RewriteStep(rule, before, after))

    def formula(self, kind: str, family: Family) -> fm.Formula:
        if kind == BOX:
            return fm.conjoin(fm.Box(frozenset({a}), family[a]) for a in self.alphabet.ordered(family))
        return fm.disjoin(fm.Diamond(frozenset({a}), family[a]) for a in self.alphabet.ordered(family))

    def normalize(self, f: fm.Formula) -> fm.Formula:
        if isinstance(f, (fm.Tt, fm.Ff)):
            return f
        if isinstance(f, fm.Box):
            body = self.normalize(f.body)
            if isinstance(body, fm.Tt):
                self.record("modal-trivial", fm.Box(f.actions, body), fm.TT)
                return fm.TT
            return self.close(BOX, {a: body for a in f.actions})
        if isinstance(f, fm.Diamond):
            body = self.normalize(f.body)
            if isinstance(body, fm.Ff):
                self.record("modal-trivial", fm.Diamond(f.actions, body), fm.FF)
                return fm.FF
            return self.close(DIAMOND, {a: body for a in f.actions})
        if isinstance(f, fm.And):
            return self.conj(self.normalize(f.left), self.normalize(f.right))
        if isinstance(f, fm.Or):
            return self.disj(self.normalize(f.left), self.normalize(f.right))
        raise FragmentError("slim normalization is defined on HML only")

    def prune(self, kind: str, family: Family) -> fm.Formula:
        """Drop ``[a]tt`` members of a box family and ``<a>ff`` members of a diamond family."""
        trivial = fm.Tt if kind == BOX else fm.Ff
        kept = {a: body for a, body in family.items() if not isinstance(body, trivial)}
        if len(kept) < len(family):
            after = self.formula(kind, kept) if kept else (fm.TT if kind == BOX else fm.FF)
            self.record("modal-trivial", self.formula(kind, family), after)
            if not kept:
                return after
        return self.close(kind, kept)

    def close(self, kind: str, family: Family) -> fm.Formula:
        if not family:
            return fm.TT if kind == BOX else fm.FF
        current = self.formula(kind, family)
        if set(family) == set(self.alphabet):
            if kind == BOX and all(isinstance(b, fm.Ff) for b in family.values()):
                self.record("box-cover", current, fm.FF)
                return fm.FF
            if kind == DIAMOND and all(isinstance(b, fm.Tt) for b in family.values()):
                self.record("diamond-cover", current, fm.TT)
                return fm.TT
        return current

    def conj(self, left: fm.Formula, right: fm.Formula) -> fm.Formula:
        whole = fm.And(left, right)
        if isinstance(left, fm.Ff) or isinstance(right, fm.Ff):
            self.record("absorb-trivial", whole, fm.FF)
            return fm.FF
        if isinstance(left, fm.Tt) or isinstance(right, fm.Tt):
            kept = right if isinstance(left, fm.Tt) else left
            self.record("absorb-trivial", whole, kept)
            return kept
        (lk, lf), (rk, rf) = as_family(left), as_family(right)
        if lk == rk == BOX:
            shared = lf.keys() & rf.keys()
            if not shared:
                return self.close(BOX, {**lf, **rf})
            raw = {**lf, **rf, **{a: fm.And(lf[a], rf[a]) for a in shared}}
            self.record("box-merge", whole, self.formula(BOX, raw))
            merged = {**lf, **rf, **{a: self.conj(lf[a], rf[a]) for a in shared}}
            return self.prune(BOX, merged)
        if lk == rk == DIAMOND:
            shared = lf.keys() & rf.keys()
            raw = {a: fm.And(lf[a], rf[a]) for a in shared}
            self.record("diamond-conjunction", whole, self.formula(DIAMOND, raw) if raw else fm.FF)
            return self.prune(DIAMOND, {a: self.conj(lf[a], rf[a]) for a in shared})
        boxes, diamonds = (lf, rf) if lk == BOX else (rf, lf)
        raw = {a: (fm.And(boxes[a], d) if a in boxes else d) for a, d in diamonds.items()}
        self.record("diamond-and-box", whole, self.formula(DIAMOND, raw))
        merged = {a: (self.conj(boxes[a], d) if a in boxes else d) for a, d in diamonds.items()}
        return self.prune(DIAMOND, merged)

    def disj(self, left: fm.Formula, right: fm.Formula) -> fm.Formula:
        whole = fm.Or(left, right)
        if isinstance(left, fm.Tt) or isinstance(right, fm.Tt):
            self.record("absorb-trivial", whole, fm.TT)
            return fm.TT
        if isinstance(left, fm.Ff) or isinstance(right, fm.Ff):
            kept = right if isinstance(left, fm.Ff) else left
            self.record("absorb-trivial", whole, kept)
            return kept
        (lk, lf), (rk, rf) = as_family(left), as_family(right)
        if lk == rk == DIAMOND:
            shared = lf.keys() & rf.keys()
            if not shared:
                return self.close(DIAMOND, {**lf, **rf})
            raw = {**lf, **rf, **{a: fm.Or(lf[a], rf[a]) for a in shared}}
            self.record("diamond-merge", whole, self.formula(DIAMOND, raw))
            merged = {**lf, **rf, **{a: self.disj(lf[a], rf[a]) for a in shared}}
            return self.prune(DIAMOND, merged)
        if lk == rk == BOX:
            shared = lf.keys() & rf.keys()
            raw = {a: fm.Or(lf[a], rf[a]) for a in shared}
            self.record("box-disjunction", whole, self.formula(BOX, raw) if raw else fm.TT)
            return self.prune(BOX, {a: self.disj(lf[a], rf[a]) for a in shared})
        boxes, diamonds = (lf, rf) if lk == BOX else (rf, lf)
        raw = {a: (fm.Or(b, diamonds[a]) if a in diamonds else b) for a, b in boxes.items()}
        self.record("box-or-diamond", whole, self.formula(BOX, raw))
        merged = {a: (self.disj(b, diamonds[a]) if a in diamonds else b) for a, b in boxes.items()}
        return self.prune(BOX, merged)


def to_slim(f: fm.Formula, alphabet: Alphabet) -> Tuple[fm.Formula, List[RewriteStep]]:
    """Slim formula equivalent to ``f`` on infinite traces, with the rewrites applied.

    Raises:
        FragmentError: ``f`` is not in HML.
    """
    require(f, "HML", operation="slim normalization")
    slimmer = _Slimmer(alphabet)
    result = slimmer.normalize(f)
    logger.debug("to_slim: %d steps, length %d -> %d", len(slimmer.steps), fm.length(f), fm.length(result))
    return result, slimmer.steps


def is_slim(f: fm.Formula, alphabet: Alphabet) -> bool:
    if isinstance(f, (fm.Tt, fm.Ff)):
        return True
    shape = as_family(f)
    if shape is None:
        return False
    kind, family = shape
    trivial, absorbing = (fm.Tt, fm.Ff) if kind == BOX else (fm.Ff, fm.Tt)
    if any(isinstance(body, trivial) or not is_slim(body, alphabet) for body in family.values()):
        return False
    covers = set(family) == set(alphabet)
    return not (covers and all(isinstance(body, absorbing) for body in family.values()))
