"""Finitely presented Z/2-graded abelian groups and their homomorphisms.

A group is a pair of presentations, one per parity; the group in parity ``p`` is
the cokernel of ``rels_p``. Presentations are never assumed minimal, so every
equality below is a lattice-membership test.
"""

import itertools
import logging
from collections.abc import Iterator, Mapping, Sequence
from dataclasses import dataclass
from enum import IntEnum
from functools import cached_property

from homkk.errors import CompositionError, NotExactError, RelationError, ShapeError
from homkk.linear.matrix import (
    IntMatrix,
    SmithDecomposition,
    Vector,
    block_diagonal,
    hermite_basis,
    hstack,
    kernel_basis,
    lattice_contains,
    smith_normal_form,
    solve_matrix,
)

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "GROUPS"})


class Parity(IntEnum):
    """Grading parity; degrees are added modulo 2."""

    EVEN = 0
    ODD = 1

    def shift(self, degree: int) -> "Parity":
        return Parity((self + degree) % 2)


PARITIES = (Parity.EVEN, Parity.ODD)


@dataclass(frozen=True)
class MinimalForm:
    """Invariant-factor coordinates of a presentation.

    ``to_min`` maps generator coordinates to coordinates in ``⊕ Z/factors[j]``;
    ``from_min`` maps back. Both are compatible with the relations.
    """

    factors: tuple[int, ...]
    to_min: IntMatrix
    from_min: IntMatrix


@dataclass(frozen=True)
class Presentation:
    """Abelian group ``Z^gens / (column span of rels)``."""

    gens: int
    rels: IntMatrix

    def __post_init__(self) -> None:
        if self.rels.nrows != self.gens:
            msg = f"relation matrix has {self.rels.nrows} rows for {self.gens} generators"
            raise ShapeError(msg)

    @classmethod
    def free(cls, rank: int) -> "Presentation":
        return cls(rank, IntMatrix.zeros(rank, 0))

    @classmethod
    def from_invariants(cls, factors: Sequence[int]) -> "Presentation":
        """``⊕ Z/d`` over ``factors``; a factor 0 is a free summand."""
        torsion = [j for j, d in enumerate(factors) if d != 0]
        rels = IntMatrix.from_columns(
            [tuple(factors[j] if i == j else 0 for i in range(len(factors))) for j in torsion],
            len(factors),
        )
        return cls(len(factors), rels)

    @classmethod
    def direct_sum(cls, *parts: "Presentation") -> "Presentation":
        return cls(sum(p.gens for p in parts), block_diagonal(*(p.rels for p in parts)))

    @cached_property
    def smith(self) -> SmithDecomposition:
        return smith_normal_form(self.rels)

    @cached_property
    def minimal(self) -> MinimalForm:
        diagonal = self.smith.diagonal
        all_factors = [diagonal[i] if i < len(diagonal) else 0 for i in range(self.gens)]
        keep = [i for i, d in enumerate(all_factors) if d != 1]
        return MinimalForm(
            factors=tuple(all_factors[i] for i in keep),
            to_min=self.smith.U.select_rows(keep),
            from_min=self.smith.U_inverse.select_columns(keep),
        )

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        return self.minimal.factors

    @property
    def is_trivial(self) -> bool:
        return not self.minimal.factors

    @property
    def order(self) -> int | None:
        """Number of elements, ``None`` for infinite groups."""
        if 0 in self.minimal.factors:
            return None
        return int(_product(self.minimal.factors))

    def contains_relation(self, vector: Sequence[int]) -> bool:
        """Whether ``vector`` lies in the relator lattice, i.e. represents zero."""
        return lattice_contains(self.rels, vector)

    def normal_form(self, vector: Sequence[int]) -> Vector:
        """Canonical coordinates in ``⊕ Z/d_j``; equal exactly for equal elements."""
        coords = self.minimal.to_min.apply(vector)
        return tuple(c % d if d else c for c, d in zip(coords, self.minimal.factors, strict=True))

    def elements(self) -> Iterator[Vector]:
        """Enumerate one representative per element of a finite group."""
        if self.order is None:
            msg = "cannot enumerate an infinite group"
            raise ValueError(msg)
        for coords in itertools.product(*(range(d) for d in self.minimal.factors)):
            yield self.minimal.from_min.apply(coords) if coords else (0,) * self.gens


def _product(values: Sequence[int]) -> int:
    result = 1
    for v in values:
        result *= v
    return result


@dataclass(frozen=True)
class GradedGroup:
    """Z/2-graded group given by one presentation per parity."""

    even: Presentation
    odd: Presentation

    @classmethod
    def zero(cls) -> "GradedGroup":
        return cls(Presentation.free(0), Presentation.free(0))

    @classmethod
    def free(cls, even_rank: int = 0, odd_rank: int = 0) -> "GradedGroup":
        return cls(Presentation.free(even_rank), Presentation.free(odd_rank))

    @classmethod
    def from_invariants(cls, even: Sequence[int] = (), odd: Sequence[int] = ()) -> "GradedGroup":
        return cls(Presentation.from_invariants(even), Presentation.from_invariants(odd))

    @classmethod
    def concentrated(cls, presentation: Presentation, parity: Parity = Parity.EVEN) -> "GradedGroup":
        """Ungraded group placed in a single parity."""
        empty = Presentation.free(0)
        return cls(presentation, empty) if parity is Parity.EVEN else cls(empty, presentation)

    @classmethod
    def direct_sum(cls, *parts: "GradedGroup") -> "GradedGroup":
        return cls(
            Presentation.direct_sum(*(p.even for p in parts)),
            Presentation.direct_sum(*(p.odd for p in parts)),
        )

    def component(self, parity: int) -> Presentation:
        return self.even if parity % 2 == 0 else self.odd

    def gens(self, parity: int) -> int:
        return self.component(parity).gens

    def suspend(self) -> "GradedGroup":
        return GradedGroup(self.odd, self.even)

    def invariant_factors(self) -> dict[str, tuple[int, ...]]:
        return {"even": self.even.invariant_factors, "odd": self.odd.invariant_factors}

    @property
    def is_trivial(self) -> bool:
        return self.even.is_trivial and self.odd.is_trivial

    @property
    def is_free(self) -> bool:
        return all(d == 0 for p in PARITIES for d in self.component(p).invariant_factors)

    @property
    def order(self) -> int | None:
        even, odd = self.even.order, self.odd.order
        return None if even is None or odd is None else even * odd


def invariant_factors(group: GradedGroup) -> dict[str, tuple[int, ...]]:
    """Per-parity invariant factors ``d_1 | d_2 | ...`` with 0 for free summands."""
    return group.invariant_factors()


@dataclass(frozen=True)
class GroupElement:
    """An element of one parity of a presented graded group."""

    group: GradedGroup
    parity: Parity
    vector: Vector

    def __post_init__(self) -> None:
        if len(self.vector) != self.group.gens(self.parity):
            msg = f"element with {len(self.vector)} coordinates in a parity with {self.group.gens(self.parity)} generators"
            raise ShapeError(msg)

    def is_zero(self) -> bool:
        return self.group.component(self.parity).contains_relation(self.vector)

    def normal_form(self) -> Vector:
        return self.group.component(self.parity).normal_form(self.vector)

    def factors(self) -> tuple[int, ...]:
        return self.group.component(self.parity).invariant_factors

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, self.parity, tuple(-x for x in self.vector))

    def __add__(self, other: "GroupElement") -> "GroupElement":
        if other.group != self.group or other.parity != self.parity:
            msg = "cannot add elements of different groups"
            raise CompositionError(msg)
        return GroupElement(self.group, self.parity, tuple(x + y for x, y in zip(self.vector, other.vector, strict=True)))

    def equals(self, other: "GroupElement") -> bool:
        return (self + (-other)).is_zero()


@dataclass(frozen=True)
class GradedMap:
    """Homomorphism of degree 0 or 1, stored per source parity.

    ``components[p]`` maps the generators of ``source`` in parity ``p`` to
    coordinates of ``target`` in parity ``p + degree``.
    """

    source: GradedGroup
    target: GradedGroup
    degree: int
    components: tuple[IntMatrix, IntMatrix]

    def __post_init__(self) -> None:
        if self.degree not in (0, 1):
            msg = f"degree must be 0 or 1, got {self.degree}"
            raise ShapeError(msg)
        for p in PARITIES:
            expected = (self.target.gens(p + self.degree), self.source.gens(p))
            if self.components[p].shape != expected:
                msg = f"{p.name.lower()} component has shape {self.components[p].shape}, expected {expected}"
                raise ShapeError(msg)

    @classmethod
    def identity(cls, group: GradedGroup) -> "GradedMap":
        return cls(group, group, 0, (IntMatrix.identity(group.even.gens), IntMatrix.identity(group.odd.gens)))

    @classmethod
    def zero(cls, source: GradedGroup, target: GradedGroup, degree: int = 0) -> "GradedMap":
        return cls(
            source,
            target,
            degree,
            tuple(IntMatrix.zeros(target.gens(p + degree), source.gens(p)) for p in PARITIES),  # type: ignore[arg-type]
        )

    def component(self, parity: int) -> IntMatrix:
        return self.components[parity % 2]

    def compose(self, other: "GradedMap") -> "GradedMap":
        """Return ``self ∘ other``."""
        if other.target != self.source:
            msg = "cannot compose: target of the right factor differs from the source of the left factor"
            raise CompositionError(msg)
        return GradedMap(
            other.source,
            self.target,
            (self.degree + other.degree) % 2,
            (self.component(other.degree) @ other.component(0), self.component(1 + other.degree) @ other.component(1)),
        )

    def _check_parallel(self, other: "GradedMap") -> None:
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            msg = "maps have different source, target or degree"
            raise CompositionError(msg)

    def __add__(self, other: "GradedMap") -> "GradedMap":
        self._check_parallel(other)
        return GradedMap(self.source, self.target, self.degree, (self.components[0] + other.components[0], self.components[1] + other.components[1]))

    def __sub__(self, other: "GradedMap") -> "GradedMap":
        self._check_parallel(other)
        return GradedMap(self.source, self.target, self.degree, (self.components[0] - other.components[0], self.components[1] - other.components[1]))

    def __neg__(self) -> "GradedMap":
        return GradedMap(self.source, self.target, self.degree, (-self.components[0], -self.components[1]))

    def relation_violations(self) -> list[tuple[Parity, int]]:
        """Relators (parity, column) whose image is not a relation of the target."""
        violations = []
        for p in PARITIES:
            image = self.component(p) @ self.source.component(p).rels
            target = self.target.component(p + self.degree)
            violations.extend((p, j) for j, col in enumerate(image.columns()) if not target.contains_relation(col))
        return violations

    def is_relation_compatible(self) -> bool:
        return not self.relation_violations()

    def check_relations(self) -> None:
        """Raise :class:`RelationError` naming the first relator that is not respected."""
        violations = self.relation_violations()
        if violations:
            parity, column = violations[0]
            msg = f"map sends {parity.name.lower()} relator {column} outside the target relator lattice"
            raise RelationError(msg)

    def is_zero(self) -> bool:
        return all(
            self.target.component(p + self.degree).contains_relation(col) for p in PARITIES for col in self.component(p).columns()
        )

    def equals(self, other: "GradedMap") -> bool:
        return (self - other).is_zero()

    def suspend(self) -> "GradedMap":
        """The same map viewed between suspended groups."""
        return GradedMap(self.source.suspend(), self.target.suspend(), self.degree, (self.components[1], self.components[0]))


def presentation_kernel(f: IntMatrix, source: Presentation, target: Presentation) -> tuple[Presentation, IntMatrix]:
    """Kernel of ``f: source -> target`` as a presentation plus its inclusion matrix.

    The kernel lattice ``{x : f x in span(target.rels)}`` is the projection of
    ``ker [f | target.rels]``; a Hermite basis ``A`` of it becomes the generators and
    the source relators are rewritten in that basis.
    """
    n = source.gens
    if n == 0:
        return Presentation.free(0), IntMatrix.zeros(0, 0)
    stacked = hstack(target.gens, f, target.rels)
    projected = kernel_basis(stacked).select_rows(range(n))
    basis = hermite_basis(projected)
    rels = solve_matrix(basis, source.rels) if basis.ncols else IntMatrix.zeros(0, source.rels.ncols)
    if rels is None:
        logger.warning("Source relators do not lie in the kernel lattice; the map is not relation-compatible.")
        msg = "map is not relation-compatible"
        raise RelationError(msg)
    return Presentation(basis.ncols, rels), basis


def kernel_of(f: GradedMap) -> tuple[GradedGroup, GradedMap]:
    """Kernel of ``f`` with its inclusion into ``f.source``.

    Raises
    ------
    RelationError
        If ``f`` does not respect the relations

    """
    f.check_relations()
    parts = [presentation_kernel(f.component(p), f.source.component(p), f.target.component(p + f.degree)) for p in PARITIES]
    kernel = GradedGroup(parts[0][0], parts[1][0])
    inclusion = GradedMap(kernel, f.source, 0, (parts[0][1], parts[1][1]))
    logger.debug("Kernel invariants %s.", kernel.invariant_factors())
    return kernel, inclusion


def quotient_by_images(target: GradedGroup, maps: Sequence[GradedMap]) -> tuple[GradedGroup, GradedMap]:
    """Quotient of ``target`` by the sum of the images of ``maps``, with its projection."""
    for m in maps:
        if m.target != target:
            msg = "image map does not land in the group being divided"
            raise CompositionError(msg)
    parts = [
        Presentation(target.gens(q), hstack(target.gens(q), target.component(q).rels, *(m.component(q - m.degree) for m in maps)))
        for q in PARITIES
    ]
    quotient = GradedGroup(parts[0], parts[1])
    projection = GradedMap(target, quotient, 0, (IntMatrix.identity(target.even.gens), IntMatrix.identity(target.odd.gens)))
    return quotient, projection


def cokernel_of(f: GradedMap) -> tuple[GradedGroup, GradedMap]:
    """Cokernel of ``f`` with the projection from ``f.target``.

    Raises
    ------
    RelationError
        If ``f`` does not respect the relations

    """
    f.check_relations()
    return quotient_by_images(f.target, [f])


def lift_through(g: GradedMap, f: GradedMap) -> GradedMap | None:
    """Find ``h`` with ``g ∘ h == f`` modulo relations, or ``None`` if none exists."""
    if g.target != f.target:
        msg = "cannot lift: the two maps have different targets"
        raise CompositionError(msg)
    degree = (f.degree - g.degree) % 2
    components = []
    for p in PARITIES:
        z = g.target.component(p + f.degree)
        g_block = g.component(p + degree)
        solution = solve_matrix(hstack(z.gens, g_block, z.rels), f.component(p))
        if solution is None:
            return None
        components.append(solution.select_rows(range(g_block.ncols)))
    return GradedMap(f.source, g.source, degree, (components[0], components[1]))


def is_injective(f: GradedMap) -> bool:
    return kernel_of(f)[0].is_trivial


def is_surjective(f: GradedMap) -> bool:
    return cokernel_of(f)[0].is_trivial


def is_isomorphism(f: GradedMap) -> bool:
    return is_surjective(f) and is_injective(f)


def inverse_map(f: GradedMap) -> GradedMap | None:
    """Two-sided inverse of an isomorphism, ``None`` if ``f`` is not invertible."""
    if not is_isomorphism(f):
        return None
    return lift_through(f, GradedMap.identity(f.target))


def homology(f: GradedMap, g: GradedMap) -> GradedGroup:
    """Homology ``ker g / im f`` of a composable pair.

    Raises
    ------
    NotExactError
        If ``g ∘ f`` is not zero, so the pair is not a complex

    """
    composite = g.compose(f)
    if not composite.is_zero():
        msg = "the two maps do not compose to zero"
        raise NotExactError(msg)
    kernel, inclusion = kernel_of(g)
    lifted = lift_through(inclusion, f)
    if lifted is None:  # pragma: no cover - impossible once g∘f = 0
        msg = "image does not lie in the kernel"
        raise NotExactError(msg)
    return cokernel_of(lifted)[0]


def _offsets(parts: Sequence[GradedGroup], parity: int) -> list[int]:
    offsets = [0]
    for part in parts:
        offsets.append(offsets[-1] + part.gens(parity))
    return offsets


def block_map(
    sources: Sequence[GradedGroup],
    targets: Sequence[GradedGroup],
    blocks: Mapping[tuple[int, int], GradedMap],
    degree: int = 0,
) -> GradedMap:
    """Map ``⊕ sources -> ⊕ targets`` whose block ``(i, j)`` sends ``sources[j]`` to ``targets[i]``.

    Missing blocks are zero. Every block must have the given degree.
    """
    source = GradedGroup.direct_sum(*sources)
    target = GradedGroup.direct_sum(*targets)
    components = []
    for p in PARITIES:
        q = p + degree
        rows = _offsets(targets, q)
        cols = _offsets(sources, p)
        entries = [[0] * cols[-1] for _ in range(rows[-1])]
        for (i, j), block in blocks.items():
            if block.degree != degree or block.source != sources[j] or block.target != targets[i]:
                msg = f"block ({i}, {j}) does not map summand {j} to summand {i} in degree {degree}"
                raise CompositionError(msg)
            matrix = block.component(p)
            for r in range(matrix.nrows):
                for c in range(matrix.ncols):
                    entries[rows[i] + r][cols[j] + c] += matrix[r, c]
        components.append(IntMatrix.from_rows(entries, cols[-1]) if entries else IntMatrix.zeros(0, cols[-1]))
    return GradedMap(source, target, degree, (components[0], components[1]))


def summand_inclusion(parts: Sequence[GradedGroup], index: int) -> GradedMap:
    return block_map([parts[index]], parts, {(index, 0): GradedMap.identity(parts[index])})


def summand_projection(parts: Sequence[GradedGroup], index: int) -> GradedMap:
    return block_map(parts, [parts[index]], {(0, index): GradedMap.identity(parts[index])})
