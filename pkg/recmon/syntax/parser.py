"""
Lark grammars and tree builders for formulas, monitors, processes and traces.
"""
from functools import lru_cache
from typing import List, Union

from lark import Lark, Token, Transformer
from lark.exceptions import UnexpectedInput, VisitError

from recmon.errors import AlphabetError, ParseError, RecmonError
from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax import process as pr
from recmon.syntax.alphabet import TAU, Alphabet
from recmon.syntax.trace import TraceSpec

_COMMON = r"""
NAME: /[A-Za-z_][A-Za-z0-9_']*/
%import common.WS
%ignore WS
"""

# A fixpoint body extends as far right as possible, so an unparenthesised
# fixpoint may only appear as the last operand ("open" rules).
FORMULA_GRAMMAR = r"""
?start: formula

?formula: disj
        | open_disj

?disj: conj
     | disj "|" conj               -> or_
?open_disj: open_conj
     | disj "|" open_conj          -> or_

?conj: temporal
     | conj "&" temporal           -> and_
?open_conj: open_unary
     | conj "&" open_unary         -> and_

?temporal: unary
     | unary "until" unary         -> until
     | unary "release" unary       -> release

?unary: atom
      | "[" acts "]" unary         -> box
      | "<" acts ">" unary         -> diamond
      | "next" unary               -> next_
?open_unary: fixpoint
      | "[" acts "]" open_unary    -> box
      | "<" acts ">" open_unary    -> diamond
      | "next" open_unary          -> next_

?fixpoint: "max" NAME "." formula  -> max_
         | "min" NAME "." formula  -> min_

?atom: "tt"                        -> tt
     | "ff"                        -> ff
     | NAME                        -> var
     | "(" formula ")"

acts: NAME ("," NAME)*             -> act_list
    | "*"                          -> act_all
    | "~" "{" NAME ("," NAME)* "}" -> act_complement
""" + _COMMON

MONITOR_GRAMMAR = r"""
?start: monitor

?monitor: par_or
        | open_par_or

?par_or: par_and
       | par_or "||" par_and          -> disj
?open_par_or: open_par_and
       | par_or "||" open_par_and     -> disj

?par_and: sum
        | par_and "&&" sum            -> conj
?open_par_and: open_sum
        | par_and "&&" open_sum       -> conj

?sum: prefix
    | sum "+" prefix                  -> choice
?open_sum: open_prefix
    | sum "+" open_prefix             -> choice

?prefix: atom
       | NAME "." prefix              -> act
?open_prefix: recursion
       | NAME "." open_prefix         -> act

?recursion: "rec" NAME "." monitor    -> rec

?atom: "yes"                          -> yes
     | "no"                           -> no
     | "end"                          -> end
     | NAME                           -> var
     | "(" monitor ")"
""" + _COMMON

PROCESS_GRAMMAR = r"""
?start: process

?process: psum
        | open_psum

?psum: pprefix
     | psum "+" pprefix              -> choice
?open_psum: open_pprefix
     | psum "+" open_pprefix         -> choice

?pprefix: patom
        | NAME "." pprefix           -> act
?open_pprefix: precursion
        | NAME "." open_pprefix      -> act

?precursion: "rec" NAME "." process  -> rec

?patom: "nil"                        -> nil
      | NAME                         -> var
      | "(" process ")"
""" + _COMMON

TRACE_GRAMMAR = r"""
start: [word] [cycle]
word: NAME ("." NAME)*
cycle: "(" word ")"
""" + _COMMON

_GRAMMARS = {
    "formula": FORMULA_GRAMMAR,
    "monitor": MONITOR_GRAMMAR,
    "process": PROCESS_GRAMMAR,
    "trace": TRACE_GRAMMAR,
}

_RESERVED = {
    "formula": {"tt", "ff", "max", "min", "next", "until", "release"},
    "monitor": {"yes", "no", "end", "rec"},
    "process": {"nil", "rec"},
    "trace": set(),
}


@lru_cache(maxsize=None)
def _parser(kind: str) -> Lark:
    return Lark(_GRAMMARS[kind], parser="lalr", maybe_placeholders=True)


def _check_name(kind: str, token: Token) -> str:
    name = str(token)
    if name in _RESERVED[kind]:
        raise ParseError(kind, name, f"{name!r} is a reserved word", token.line, token.column)
    return name


class _FormulaBuilder(Transformer):
    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def tt(self, _):
        return fm.TT

    def ff(self, _):
        return fm.FF

    def var(self, children):
        return fm.Var(_check_name("formula", children[0]))

    def and_(self, children):
        return fm.And(children[0], children[1])

    def or_(self, children):
        return fm.Or(children[0], children[1])

    def box(self, children):
        return fm.Box(children[0], children[1])

    def diamond(self, children):
        return fm.Diamond(children[0], children[1])

    def max_(self, children):
        return fm.Max(_check_name("formula", children[0]), children[1])

    def min_(self, children):
        return fm.Min(_check_name("formula", children[0]), children[1])

    def next_(self, children):
        return fm.Diamond(self.alphabet.all, children[0])

    def until(self, children):
        left, right = children
        y = fm.fresh_name("Y", set(fm.free_vars(left) | fm.free_vars(right)))
        step = fm.And(left, fm.Diamond(self.alphabet.all, fm.Var(y)))
        return fm.Min(y, fm.Or(right, step))

    def release(self, children):
        left, right = children
        y = fm.fresh_name("Y", set(fm.free_vars(left) | fm.free_vars(right)))
        step = fm.And(right, fm.Diamond(self.alphabet.all, fm.Var(y)))
        return fm.Max(y, fm.Or(fm.And(right, left), step))

    def act_list(self, children):
        return frozenset(self.alphabet.check(str(t)) for t in children)

    def act_all(self, _):
        return self.alphabet.all

    def act_complement(self, children):
        excluded = {self.alphabet.check(str(t)) for t in children}
        remaining = self.alphabet.complement(excluded)
        if not remaining:
            raise AlphabetError(f"complement of {sorted(excluded)} is empty")
        return remaining


class _MonitorBuilder(Transformer):
    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def yes(self, _):
        return mn.YES

    def no(self, _):
        return mn.NO

    def end(self, _):
        return mn.END

    def var(self, children):
        return mn.MVar(_check_name("monitor", children[0]))

    def act(self, children):
        return mn.Prefix(self.alphabet.check(str(children[0])), children[1])

    def choice(self, children):
        return mn.Sum(children[0], children[1])

    def conj(self, children):
        return mn.Conj(children[0], children[1])

    def disj(self, children):
        return mn.Disj(children[0], children[1])

    def rec(self, children):
        return mn.Rec(_check_name("monitor", children[0]), children[1])


class _ProcessBuilder(Transformer):
    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def nil(self, _):
        return pr.NIL

    def var(self, children):
        return pr.PVar(_check_name("process", children[0]))

    def act(self, children):
        action = str(children[0])
        if action != TAU:
            self.alphabet.check(action)
        return pr.Act(action, children[1])

    def choice(self, children):
        return pr.Choice(children[0], children[1])

    def rec(self, children):
        return pr.PRec(_check_name("process", children[0]), children[1])


class _TraceBuilder(Transformer):
    def __init__(self, alphabet: Alphabet):
        super().__init__()
        self.alphabet = alphabet

    def word(self, children) -> List[str]:
        letters: List[str] = []
        for token in children:
            letters.extend(self._letters(str(token)))
        return letters

    def _letters(self, token: str) -> List[str]:
        if token in self.alphabet.actions:
            return [token]
        if token != TAU and self.alphabet.compact and all(c in self.alphabet for c in token):
            return list(token)
        return [self.alphabet.check(token)]

    def cycle(self, children):
        return children[0]

    def start(self, children):
        word, cycle = children
        return TraceSpec(tuple(word or ()), tuple(cycle) if cycle is not None else None)


_BUILDERS = {
    "formula": _FormulaBuilder,
    "monitor": _MonitorBuilder,
    "process": _ProcessBuilder,
    "trace": _TraceBuilder,
}

AST = Union[fm.Formula, mn.Monitor, pr.Process, TraceSpec]


def parse(kind: str, text: str, alphabet: Alphabet) -> AST:
    """Parse ``text`` as a formula, monitor, process or trace over ``alphabet``.

    Bound variables are renamed apart so every binder is unique.

    Raises:
        ParseError: on a syntax error (with line and column).
        AlphabetError: on an action outside the alphabet or a misplaced ``tau``.
    """
    if kind not in _GRAMMARS:
        raise ValueError(f"unknown syntax kind {kind!r}")
    if kind == "trace" and text.strip() in ("", "eps", "ε"):
        return TraceSpec((), None)

    try:
        tree = _parser(kind).parse(text)
    except UnexpectedInput as exc:
        line = exc.line if exc.line and exc.line > 0 else None
        column = exc.column if exc.column and exc.column > 0 else None
        reason = "unexpected end of input" if column is None else "unexpected input"
        raise ParseError(kind, text, reason, line, column) from None

    try:
        result = _BUILDERS[kind](alphabet).transform(tree)
    except VisitError as exc:
        if isinstance(exc.orig_exc, RecmonError):
            raise exc.orig_exc from None
        raise

    if kind == "formula":
        return fm.rename_binders(result)
    if kind == "monitor":
        return mn.rename_binders(result)
    if kind == "process":
        return pr.rename_binders(result)
    return result


def parse_formula(text: str, alphabet: Alphabet) -> fm.Formula:
    return parse("formula", text, alphabet)


def parse_monitor(text: str, alphabet: Alphabet) -> mn.Monitor:
    return parse("monitor", text, alphabet)


def parse_process(text: str, alphabet: Alphabet) -> pr.Process:
    return parse("process", text, alphabet)


def parse_trace(text: str, alphabet: Alphabet) -> TraceSpec:
    return parse("trace", text, alphabet)
