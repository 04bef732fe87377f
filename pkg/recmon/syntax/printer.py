"""
Pretty printers. Output always parses back to the same tree.
"""
from typing import Iterable, Optional

from recmon.syntax import formula as fm
from recmon.syntax import monitor as mn
from recmon.syntax import process as pr
from recmon.syntax.alphabet import Alphabet
from recmon.syntax.trace import TraceSpec


def _actions(actions: Iterable[str], alphabet: Optional[Alphabet]) -> str:
    ordered = alphabet.ordered(actions) if alphabet else sorted(actions)
    return ",".join(ordered)


def format_formula(f: fm.Formula, alphabet: Optional[Alphabet] = None) -> str:
    # levels: 0 anything, 1 operand of |, 2 operand of &, 3 modal body
    def level(node) -> int:
        if isinstance(node, fm.Or):
            return 1
        if isinstance(node, fm.And):
            return 2
        if isinstance(node, fm.Fixpoint):
            return 0
        return 3

    def fmt(node, ctx: int) -> str:
        if isinstance(node, fm.Tt):
            text = "tt"
        elif isinstance(node, fm.Ff):
            text = "ff"
        elif isinstance(node, fm.Var):
            text = node.name
        elif isinstance(node, fm.Or):
            text = f"{fmt(node.left, 1)} | {fmt(node.right, 2)}"
        elif isinstance(node, fm.And):
            text = f"{fmt(node.left, 2)} & {fmt(node.right, 3)}"
        elif isinstance(node, fm.Box):
            text = f"[{_actions(node.actions, alphabet)}]{fmt(node.body, 3)}"
        elif isinstance(node, fm.Diamond):
            text = f"<{_actions(node.actions, alphabet)}>{fmt(node.body, 3)}"
        else:
            op = "max" if isinstance(node, fm.Max) else "min"
            body = node.body
            text = f"{op} {node.var}.{fmt(body, 0 if isinstance(body, fm.Fixpoint) else 3)}"
        if ctx > level(node) or (ctx > 0 and isinstance(node, fm.Fixpoint)):
            return f"({text})"
        return text

    return fmt(f, 0)


def format_monitor(m: mn.Monitor) -> str:
    def level(node) -> int:
        if isinstance(node, mn.Disj):
            return 1
        if isinstance(node, mn.Conj):
            return 2
        if isinstance(node, mn.Sum):
            return 3
        if isinstance(node, mn.Rec):
            return 0
        return 4

    def fmt(node, ctx: int) -> str:
        if isinstance(node, mn.Yes):
            text = "yes"
        elif isinstance(node, mn.No):
            text = "no"
        elif isinstance(node, mn.End):
            text = "end"
        elif isinstance(node, mn.MVar):
            text = node.name
        elif isinstance(node, mn.Prefix):
            text = f"{node.action}.{fmt(node.body, 4)}"
        elif isinstance(node, mn.Sum):
            text = f"{fmt(node.left, 3)} + {fmt(node.right, 4)}"
        elif isinstance(node, mn.Conj):
            text = f"{fmt(node.left, 2)} && {fmt(node.right, 3)}"
        elif isinstance(node, mn.Disj):
            text = f"{fmt(node.left, 1)} || {fmt(node.right, 2)}"
        else:
            body = node.body
            text = f"rec {node.var}.{fmt(body, 0 if isinstance(body, mn.Rec) else 4)}"
        if ctx > level(node):
            return f"({text})"
        return text

    return fmt(m, 0)


def format_process(p: pr.Process) -> str:
    def fmt(node, ctx: int) -> str:
        if isinstance(node, pr.Nil):
            return "nil"
        if isinstance(node, pr.PVar):
            return node.name
        if isinstance(node, pr.Act):
            return f"{node.action}.{fmt(node.body, 2)}"
        if isinstance(node, pr.Choice):
            text = f"{fmt(node.left, 1)} + {fmt(node.right, 2)}"
            return f"({text})" if ctx > 1 else text
        body = node.body
        text = f"rec {node.var}.{fmt(body, 0 if isinstance(body, pr.PRec) else 2)}"
        return f"({text})" if ctx > 0 else text

    return fmt(p, 0)


def format_trace(t: TraceSpec) -> str:
    return str(t)
