"""
LTS text files.

    # comments start with '#'
    alphabet: a b
    initial: s0
    states: s0 s1 s2
    s0 -a-> s1
    s1 -tau-> s0

``states:`` is optional and only needed for states without transitions.
"""
import re
from pathlib import Path
from typing import List, Optional, Tuple, Union

from recmon.errors import AlphabetError, InputError
from recmon.syntax.alphabet import Alphabet

from recmon.semantics.lts import Lts

_EDGE = re.compile(r"^(\S+)\s+-(\S+)->\s+(\S+)$")
_HEADER = re.compile(r"^(alphabet|initial|states)\s*:\s*(.*)$")


def read_alphabet_header(text: str) -> Optional[Alphabet]:
    for line in text.splitlines():
        match = _HEADER.match(line.split("#", 1)[0].strip())
        if match and match.group(1) == "alphabet":
            return Alphabet.parse(match.group(2))
    return None


def parse_lts(text: str, alphabet: Optional[Alphabet] = None) -> Lts:
    """Build an LTS from file text.

    The ``alphabet:`` header is used when ``alphabet`` is None; when both are
    given they must agree.
    """
    header = read_alphabet_header(text)
    if header is not None and alphabet is not None and set(header) != set(alphabet):
        raise AlphabetError(f"LTS alphabet {{{header}}} differs from --alphabet {{{alphabet}}}")
    alphabet = alphabet or header
    if alphabet is None:
        raise AlphabetError("LTS file has no 'alphabet:' header and no alphabet was given")

    initial = None
    states: List[str] = []
    transitions: List[Tuple[str, str, str]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        header_match = _HEADER.match(line)
        if header_match:
            key, value = header_match.groups()
            if key == "initial":
                initial = value.strip()
            elif key == "states":
                states.extend(value.split())
            continue
        edge = _EDGE.match(line)
        if edge is None:
            raise InputError(f"line {number}: expected 'STATE -act-> STATE', got {line!r}")
        transitions.append(edge.groups())
    if not initial:
        raise InputError("LTS file has no 'initial:' line")
    return Lts(alphabet, initial, transitions, states)


def load_lts(path: Union[str, Path], alphabet: Optional[Alphabet] = None) -> Lts:
    path = Path(path)
    if not path.exists():
        raise InputError(f"LTS file {path} not found")
    return parse_lts(path.read_text(encoding="utf-8"), alphabet)


def dump_lts(lts: Lts) -> str:
    """Text form of ``lts``. States that are not plain names are renumbered ``s0``, ``s1``, ..."""
    ordered = [lts.initial] + sorted((s for s in lts.states if s != lts.initial), key=repr)
    plain = all(isinstance(s, str) and s and not re.search(r"\s|#", s) for s in ordered)
    names = {s: (s if plain else f"s{i}") for i, s in enumerate(ordered)}
    lines = [f"alphabet: {' '.join(lts.alphabet)}", f"initial: {names[lts.initial]}",
             f"states: {' '.join(names[s] for s in names)}"]
    for src, label, dst in sorted(lts.transitions, key=lambda t: (names[t[0]], t[1], names[t[2]])):
        lines.append(f"{names[src]} -{label}-> {names[dst]}")
    return "\n".join(lines) + "\n"
