"""
Finite traces and lassos ``u·v^ω``.
"""
from dataclasses import dataclass
from typing import Iterator, Optional, Tuple


def _primitive_root(word: Tuple[str, ...]) -> Tuple[str, ...]:
    n = len(word)
    for k in range(1, n + 1):
        if n % k == 0 and word[:k] * (n // k) == word:
            return word[:k]
    return word


@dataclass(frozen=True)
class TraceSpec:
    """A finite trace (``cycle is None``) or the lasso ``prefix·cycle^ω``.

    Lassos are kept in canonical form: the cycle is primitive and the prefix
    does not end with the cycle's last letter, so equal infinite words compare
    equal.
    """

    prefix: Tuple[str, ...] = ()
    cycle: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        if self.cycle is None:
            return
        cycle = tuple(self.cycle)
        if not cycle:
            raise ValueError("a lasso cycle must not be empty")
        cycle = _primitive_root(cycle)
        prefix = self.prefix
        while prefix and prefix[-1] == cycle[-1]:
            prefix = prefix[:-1]
            cycle = (cycle[-1],) + cycle[:-1]
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "cycle", cycle)

    @classmethod
    def finite(cls, *actions: str) -> "TraceSpec":
        return cls(tuple(actions), None)

    @classmethod
    def lasso(cls, prefix, cycle) -> "TraceSpec":
        return cls(tuple(prefix), tuple(cycle))

    @property
    def is_lasso(self) -> bool:
        return self.cycle is not None

    def __len__(self) -> int:
        return len(self.prefix) + len(self.cycle or ())

    def letters(self) -> Iterator[str]:
        """Letters of the word; infinite for lassos."""
        yield from self.prefix
        if self.cycle is None:
            return
        while True:
            yield from self.cycle

    def take(self, n: int) -> Tuple[str, ...]:
        result = []
        for action in self.letters():
            if len(result) >= n:
                break
            result.append(action)
        return tuple(result)

    def __str__(self) -> str:
        text = ".".join(self.prefix)
        if self.cycle is not None:
            text += "(" + ".".join(self.cycle) + ")"
        return text or "eps"
