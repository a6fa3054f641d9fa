"""KK-classes modelled through the split UCT.

A class ``A -> B`` is a pair ``(t0, t1)`` with ``t0`` a map ``K_A -> K_B`` and ``t1`` an
Ext class of the opposite parity. Composition is the 2x2 matrix product in which
the product of two Ext parts vanishes.
"""

import logging
from dataclasses import dataclass

from homkk.errors import CompositionError
from homkk.linear.ext import ExtElement, pull_ext, push_ext
from homkk.linear.groups import GradedGroup, GradedMap, inverse_map

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "UCT"})


@dataclass(frozen=True)
class UctClass:
    """Pair ``(even, odd)``: a Hom part and an Ext part of the complementary parity."""

    even: GradedMap
    odd: ExtElement

    def __post_init__(self) -> None:
        if (self.even.source, self.even.target) != (self.odd.source, self.odd.target):
            msg = "Hom part and Ext part have different source or target"
            raise CompositionError(msg)
        if self.odd.degree != (self.even.degree + 1) % 2:
            msg = "Ext part must have the parity complementary to the Hom part"
            raise CompositionError(msg)

    @property
    def source(self) -> GradedGroup:
        return self.even.source

    @property
    def target(self) -> GradedGroup:
        return self.even.target

    @property
    def degree(self) -> int:
        return self.even.degree

    @classmethod
    def from_map(cls, f: GradedMap) -> "UctClass":
        """Class with the given Hom part and zero Ext part."""
        return cls(f, ExtElement.zero(f.source, f.target, (f.degree + 1) % 2))

    def equals(self, other: "UctClass") -> bool:
        return self.even.equals(other.even) and self.odd.equals(other.odd)

    def __neg__(self) -> "UctClass":
        return UctClass(-self.even, -self.odd)


def uct_identity(group: GradedGroup) -> UctClass:
    return UctClass.from_map(GradedMap.identity(group))


def uct_compose(s: UctClass, t: UctClass) -> UctClass:
    """Return ``s ∘ t``: ``(s0 t0, s0 t1 + s1 t0)``."""
    if t.target != s.source:
        msg = "cannot compose UCT classes: target of the right factor differs from the source of the left factor"
        raise CompositionError(msg)
    even = s.even.compose(t.even)
    odd = push_ext(t.odd, s.even) + pull_ext(s.odd, t.even)
    return UctClass(even, odd)


def uct_invert(t: UctClass) -> UctClass | None:
    """Two-sided inverse ``(t0^-1, -t0^-1 t1 t0^-1)``, or ``None`` if ``t0`` is not invertible."""
    inverse0 = inverse_map(t.even)
    if inverse0 is None:
        logger.debug("Hom part is not invertible; the UCT class has no inverse.")
        return None
    odd = -pull_ext(push_ext(t.odd, inverse0), inverse0)
    return UctClass(inverse0, odd)
