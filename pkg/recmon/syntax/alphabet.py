"""
Finite action alphabets.
"""
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Iterator, Tuple

from recmon.errors import AlphabetError

TAU = "tau"

_ACTION_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_']*$")


@dataclass(frozen=True)
class Alphabet:
    """Ordered, non-empty set of external actions. ``tau`` is never a member."""

    actions: Tuple[str, ...]

    def __post_init__(self):
        if not self.actions:
            raise AlphabetError("alphabet must not be empty")
        if len(set(self.actions)) != len(self.actions):
            raise AlphabetError(f"duplicate actions in alphabet {list(self.actions)}")
        for action in self.actions:
            if action == TAU:
                raise AlphabetError("'tau' is reserved for internal moves")
            if not _ACTION_NAME.match(action):
                raise AlphabetError(f"invalid action name {action!r}")

    @classmethod
    def of(cls, actions: Iterable[str]) -> "Alphabet":
        return cls(tuple(actions))

    @classmethod
    def parse(cls, text: str) -> "Alphabet":
        """Read ``a,b,c`` or ``a b c``."""
        return cls(tuple(part for part in re.split(r"[\s,]+", text.strip()) if part))

    def __contains__(self, action: object) -> bool:
        return action in self.actions

    def __iter__(self) -> Iterator[str]:
        return iter(self.actions)

    def __len__(self) -> int:
        return len(self.actions)

    def __str__(self) -> str:
        return ",".join(self.actions)

    @property
    def all(self) -> FrozenSet[str]:
        return frozenset(self.actions)

    def check(self, action: str) -> str:
        """Return ``action`` if it belongs to the alphabet, raise otherwise."""
        if action == TAU:
            raise AlphabetError("'tau' is not allowed here")
        if action not in self.actions:
            raise AlphabetError(f"action {action!r} is not in alphabet {{{self}}}")
        return action

    def complement(self, actions: Iterable[str]) -> FrozenSet[str]:
        return self.all - frozenset(actions)

    def ordered(self, actions: Iterable[str]) -> Tuple[str, ...]:
        """Sort a subset into alphabet order."""
        chosen = set(actions)
        return tuple(a for a in self.actions if a in chosen)

    @property
    def compact(self) -> bool:
        """True when every action is a single character."""
        return all(len(a) == 1 for a in self.actions)
