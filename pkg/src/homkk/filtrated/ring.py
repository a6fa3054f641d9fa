"""The ring of natural transformations on filtrated K-theory over ``1 <- 2 <- ... <- n``.

``NT([a,b], [c,d])`` is ``Z`` in even degree iff ``c <= a <= d <= b``, ``Z`` in odd
degree iff ``a+1 <= c <= b+1 <= d`` and zero otherwise; ``τ_{[a,b]}^{[c,d]}``
denotes its generator.
"""

import re
from dataclasses import dataclass
from enum import Enum

from homkk.errors import InputValidationError

_LABEL = re.compile(r"^\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*$")


@dataclass(frozen=True, order=True)
class Interval:
    """``[a, b]``; ``a > b`` is the empty interval of the zero convention ``M[a+1, a] = 0``."""

    a: int
    b: int

    @classmethod
    def parse(cls, label: str) -> "Interval":
        match = _LABEL.match(label)
        if match is None:
            msg = f"interval label {label!r} is not of the form '[a,b]'"
            raise InputValidationError(msg)
        return cls(int(match.group(1)), int(match.group(2)))

    @property
    def is_empty(self) -> bool:
        return self.a > self.b

    @property
    def label(self) -> str:
        return f"[{self.a},{self.b}]"

    def check(self, n: int) -> None:
        if not 1 <= self.a <= self.b <= n:
            msg = f"interval {self.label} is not inside [1,{n}]"
            raise InputValidationError(msg)

    def __str__(self) -> str:
        return self.label


def intervals(n: int) -> list[Interval]:
    """All nonempty ``[a, b]`` with ``1 <= a <= b <= n``, sorted."""
    return [Interval(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


class TauKind(Enum):
    EVEN = "even"
    ODD = "odd"
    ZERO = "zero"

    @property
    def degree(self) -> int:
        return 1 if self is TauKind.ODD else 0


def tau(n: int, src: Interval, dst: Interval) -> TauKind:
    """Kind of ``NT(src, dst)``.

    Raises
    ------
    InputValidationError
        If an interval is not inside ``[1, n]``

    """
    src.check(n)
    dst.check(n)
    a, b, c, d = src.a, src.b, dst.a, dst.b
    if c <= a <= d <= b:
        return TauKind.EVEN
    if a + 1 <= c <= b + 1 <= d:
        return TauKind.ODD
    return TauKind.ZERO


def tau_compose(n: int, src: Interval, mid: Interval, dst: Interval) -> bool:
    """Whether ``τ_{mid}^{dst} ∘ τ_{src}^{mid} = τ_{src}^{dst}`` is nonzero."""
    for interval in (src, mid, dst):
        interval.check(n)
    a, b = src.a, src.b
    e, g = mid.a, mid.b
    c, d = dst.a, dst.b
    return (
        c <= e <= a <= d <= g <= b
        or e <= a <= c - 1 <= g <= b < d
        or a < c <= e <= b + 1 <= d <= g
    )


def i_target(src: Interval) -> Interval:
    """``i: M[a+1, b] -> M[a, b]``."""
    return Interval(src.a - 1, src.b)


def r_target(src: Interval) -> Interval:
    """``r: M[a, b+1] -> M[a, b]``."""
    return Interval(src.a, src.b - 1)


def delta_target(src: Interval, n: int) -> Interval:
    """``δ: M[1, a-1] -> M[a, n]``, odd."""
    return Interval(src.b + 1, n)


def i_sources(n: int) -> list[Interval]:
    return [Interval(a, b) for a in range(2, n + 1) for b in range(a, n + 1)]


def r_sources(n: int) -> list[Interval]:
    return [Interval(a, b) for a in range(1, n + 1) for b in range(a + 1, n + 1)]


def delta_sources(n: int) -> list[Interval]:
    return [Interval(1, m) for m in range(1, n)]
