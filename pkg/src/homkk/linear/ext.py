"""Hom and Ext of presented graded groups.

Ext classes are encoded against the canonical resolution of the source,
``0 -> Z^k -> Z^gens -> G -> 0`` with ``Z^k -> Z^gens`` the column Hermite basis of
the relator lattice. An :class:`ExtElement` of degree ``d`` stores, for every source
parity ``p``, a matrix whose ``k_p`` columns are elements of the target in parity
``p + d``. Two encodings are equal when they differ by a coboundary, i.e. by the
restriction of a map out of ``Z^gens``.
"""

import logging
from collections.abc import Callable
from dataclasses import dataclass
from functools import cached_property, lru_cache

from homkk.errors import CompositionError, NotExactError, RelationError, ShapeError
from homkk.linear.groups import (
    PARITIES,
    GradedGroup,
    GradedMap,
    GroupElement,
    Parity,
    Presentation,
    is_injective,
    is_surjective,
    kernel_of,
    lift_through,
    presentation_kernel,
)
from homkk.linear.matrix import IntMatrix, Vector, hermite_basis, hstack, lattice_contains, solve_matrix

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "EXT"})


@dataclass(frozen=True)
class CanonicalResolution:
    """``0 -> Z^{k_p} --basis_p--> Z^{gens_p} -> G_p -> 0`` for both parities."""

    group: GradedGroup
    bases: tuple[IntMatrix, IntMatrix]

    def basis(self, parity: int) -> IntMatrix:
        return self.bases[parity % 2]

    def rank(self, parity: int) -> int:
        return self.bases[parity % 2].ncols


@lru_cache(maxsize=1024)
def canonical_resolution(group: GradedGroup) -> CanonicalResolution:
    """Deterministic length-1 free resolution of ``group`` (column Hermite basis of the relators)."""
    return CanonicalResolution(group, (hermite_basis(group.even.rels), hermite_basis(group.odd.rels)))


@dataclass(frozen=True)
class ExtElement:
    """A class in ``Ext^1(source, target)`` of the given degree.

    ``vectors[p]`` has shape ``(target.gens(p + degree), k_p)`` where ``k_p`` is the
    rank of the canonical resolution of ``source`` in parity ``p``.
    """

    source: GradedGroup
    target: GradedGroup
    degree: int
    vectors: tuple[IntMatrix, IntMatrix]

    def __post_init__(self) -> None:
        resolution = canonical_resolution(self.source)
        for p in PARITIES:
            expected = (self.target.gens(p + self.degree), resolution.rank(p))
            if self.vectors[p].shape != expected:
                msg = f"{p.name.lower()} vectors have shape {self.vectors[p].shape}, expected {expected}"
                raise ShapeError(msg)

    @classmethod
    def zero(cls, source: GradedGroup, target: GradedGroup, degree: int) -> "ExtElement":
        resolution = canonical_resolution(source)
        return cls(source, target, degree, tuple(IntMatrix.zeros(target.gens(p + degree), resolution.rank(p)) for p in PARITIES))  # type: ignore[arg-type]

    def vector(self, parity: int) -> IntMatrix:
        return self.vectors[parity % 2]

    def _check_parallel(self, other: "ExtElement") -> None:
        if (self.source, self.target, self.degree) != (other.source, other.target, other.degree):
            msg = "Ext classes live in different groups"
            raise CompositionError(msg)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        self._check_parallel(other)
        return ExtElement(self.source, self.target, self.degree, (self.vectors[0] + other.vectors[0], self.vectors[1] + other.vectors[1]))

    def __sub__(self, other: "ExtElement") -> "ExtElement":
        self._check_parallel(other)
        return ExtElement(self.source, self.target, self.degree, (self.vectors[0] - other.vectors[0], self.vectors[1] - other.vectors[1]))

    def __neg__(self) -> "ExtElement":
        return ExtElement(self.source, self.target, self.degree, (-self.vectors[0], -self.vectors[1]))

    def is_zero(self) -> bool:
        return ext_group(self.source, self.target).element(self).is_zero()

    def equals(self, other: "ExtElement") -> bool:
        return (self - other).is_zero()


@dataclass(frozen=True)
class _Block:
    """One summand ``X(G_p, H_q)`` of a graded Hom or Ext group."""

    source_parity: Parity
    offset: int
    presentation: Presentation
    lattice: IntMatrix | None = None  # Hom blocks: kernel basis in vec coordinates


@dataclass(frozen=True)
class ExtGroup:
    """``Ext^1(G, H)`` as a presented graded group with encoder and decoder.

    The degree-``d`` component is ``⊕_p Ext(G_p, H_{p+d})``; each block is
    ``Hom(Z^k, H_min) / (B^T ⊗ I)`` for the canonical basis ``B`` and the minimal
    presentation ``H_min`` of the target parity.
    """

    source: GradedGroup
    target: GradedGroup
    group: GradedGroup
    blocks: tuple[tuple[_Block, ...], tuple[_Block, ...]]

    def encode(self, e: ExtElement) -> Vector:
        if (e.source, e.target) != (self.source, self.target):
            msg = "Ext class does not belong to this Ext group"
            raise CompositionError(msg)
        coords: list[int] = []
        for block in self.blocks[e.degree]:
            target = self.target.component(block.source_parity + e.degree)
            coords.extend((target.minimal.to_min @ e.vector(block.source_parity)).vec())
        return tuple(coords)

    def element(self, e: ExtElement) -> GroupElement:
        return GroupElement(self.group, Parity(e.degree), self.encode(e))

    def decode(self, degree: int, vector: Vector) -> ExtElement:
        resolution = canonical_resolution(self.source)
        vectors: list[IntMatrix] = [IntMatrix.zeros(0, 0), IntMatrix.zeros(0, 0)]
        for block in self.blocks[degree % 2]:
            p = block.source_parity
            target = self.target.component(p + degree)
            m_min = len(target.minimal.factors)
            k = resolution.rank(p)
            chunk = vector[block.offset : block.offset + m_min * k]
            vectors[p] = target.minimal.from_min @ IntMatrix.unvec(chunk, m_min, k)
        return ExtElement(self.source, self.target, degree % 2, (vectors[0], vectors[1]))

    def generators(self, degree: int) -> list[ExtElement]:
        n = self.group.gens(degree)
        return [self.decode(degree, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]


def _ext_block(basis: IntMatrix, target: Presentation) -> Presentation:
    k = basis.ncols
    factors = target.minimal.factors
    m = len(factors)
    diag = IntMatrix.diagonal(factors)
    rels = hstack(m * k, IntMatrix.identity(k).kron(diag), basis.transpose().kron(IntMatrix.identity(m)))
    return Presentation(m * k, rels)


@lru_cache(maxsize=1024)
def ext_group(source: GradedGroup, target: GradedGroup) -> ExtGroup:
    """Graded ``Ext^1(source, target)``; degree ``d`` collects ``Ext(G_p, H_{p+d})``."""
    resolution = canonical_resolution(source)
    components: list[Presentation] = []
    all_blocks: list[tuple[_Block, ...]] = []
    for degree in (0, 1):
        blocks = []
        offset = 0
        parts = []
        for p in PARITIES:
            block = _ext_block(resolution.basis(p), target.component(p + degree))
            blocks.append(_Block(p, offset, block))
            parts.append(block)
            offset += block.gens
        components.append(Presentation.direct_sum(*parts))
        all_blocks.append(tuple(blocks))
    group = GradedGroup(components[0], components[1])
    logger.debug("Ext group invariants %s.", group.invariant_factors())
    return ExtGroup(source, target, group, (all_blocks[0], all_blocks[1]))


@dataclass(frozen=True)
class HomGroup:
    """Graded ``Hom(G, H)`` with encoder and decoder.

    Each block ``Hom(G_p, H_q)`` is computed between minimal presentations as the
    kernel of precomposition with the relators of ``G_p``.
    """

    source: GradedGroup
    target: GradedGroup
    group: GradedGroup
    blocks: tuple[tuple[_Block, ...], tuple[_Block, ...]]

    def encode(self, f: GradedMap) -> Vector:
        if (f.source, f.target) != (self.source, self.target):
            msg = "map does not belong to this Hom group"
            raise CompositionError(msg)
        coords: list[int] = []
        for block in self.blocks[f.degree]:
            p = block.source_parity
            src = self.source.component(p).minimal
            dst = self.target.component(p + f.degree).minimal
            vec = (dst.to_min @ f.component(p) @ src.from_min).vec()
            assert block.lattice is not None
            solution = solve_matrix(block.lattice, IntMatrix.column_vector(vec)) if block.lattice.ncols else IntMatrix.zeros(0, 1)
            if solution is None:
                msg = "map is not relation-compatible"
                raise RelationError(msg)
            coords.extend(solution.column(0))
        return tuple(coords)

    def element(self, f: GradedMap) -> GroupElement:
        return GroupElement(self.group, Parity(f.degree), self.encode(f))

    def decode(self, degree: int, vector: Vector) -> GradedMap:
        components: list[IntMatrix] = []
        for block in self.blocks[degree % 2]:
            p = block.source_parity
            src = self.source.component(p).minimal
            dst = self.target.component(p + degree).minimal
            assert block.lattice is not None
            chunk = vector[block.offset : block.offset + block.presentation.gens]
            vec = block.lattice.apply(chunk)
            f_min = IntMatrix.unvec(vec, len(dst.factors), len(src.factors))
            components.append(dst.from_min @ f_min @ src.to_min)
        return GradedMap(self.source, self.target, degree % 2, (components[0], components[1]))

    def generators(self, degree: int) -> list[GradedMap]:
        n = self.group.gens(degree)
        return [self.decode(degree, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]


def _hom_block(source: Presentation, target: Presentation) -> tuple[Presentation, IntMatrix]:
    a = source.minimal.factors
    b = target.minimal.factors
    n, m = len(a), len(b)
    # Hom(Z^n, H_min) -> Hom(Z^n, H_min), f -> f·diag(a); its kernel is Hom(G_p, H_q)
    ambient = Presentation(m * n, IntMatrix.identity(n).kron(IntMatrix.diagonal(b)))
    precompose = IntMatrix.diagonal(a).transpose().kron(IntMatrix.identity(m))
    return presentation_kernel(precompose, ambient, ambient)


@lru_cache(maxsize=1024)
def hom_group(source: GradedGroup, target: GradedGroup) -> HomGroup:
    """Graded ``Hom(source, target)``; degree ``d`` collects ``Hom(G_p, H_{p+d})``."""
    components: list[Presentation] = []
    all_blocks: list[tuple[_Block, ...]] = []
    for degree in (0, 1):
        blocks = []
        parts = []
        offset = 0
        for p in PARITIES:
            presentation, lattice = _hom_block(source.component(p), target.component(p + degree))
            blocks.append(_Block(p, offset, presentation, lattice))
            parts.append(presentation)
            offset += presentation.gens
        components.append(Presentation.direct_sum(*parts))
        all_blocks.append(tuple(blocks))
    group = GradedGroup(components[0], components[1])
    logger.debug("Hom group invariants %s.", group.invariant_factors())
    return HomGroup(source, target, group, (all_blocks[0], all_blocks[1]))


def induced_endomorphism(
    space: HomGroup | ExtGroup,
    degree: int,
    fn: Callable,
) -> GradedMap:
    """Matrix of an additive self-map of one degree of a Hom or Ext group.

    The result is a degree-0 map on the component, placed in even parity.
    """
    component = GradedGroup.concentrated(space.group.component(degree))
    columns = [space.encode(fn(generator)) for generator in space.generators(degree)]
    matrix = IntMatrix.from_columns(columns, component.even.gens)
    return GradedMap(component, component, 0, (matrix, IntMatrix.zeros(0, 0)))


def push_ext(e: ExtElement, h: GradedMap) -> ExtElement:
    """Image of ``e`` under ``h: target -> H'``; degrees add."""
    if h.source != e.target:
        msg = "cannot push: the map does not start at the Ext target"
        raise CompositionError(msg)
    vectors = tuple(h.component(p + e.degree) @ e.vector(p) for p in PARITIES)
    return ExtElement(e.source, h.target, (e.degree + h.degree) % 2, vectors)  # type: ignore[arg-type]


def chain_lift(g: GradedMap) -> tuple[IntMatrix, IntMatrix]:
    """Matrices ``L_q`` with ``B_G[q+d] · L_q = g_q · B_{G'}[q]`` between canonical resolutions."""
    source_resolution = canonical_resolution(g.source)
    target_resolution = canonical_resolution(g.target)
    lifts = []
    for q in PARITIES:
        basis = target_resolution.basis(q + g.degree)
        rhs = g.component(q) @ source_resolution.basis(q)
        if basis.ncols == 0:
            if not rhs.is_zero():
                msg = "map is not relation-compatible; no chain lift exists"
                raise RelationError(msg)
            lifts.append(IntMatrix.zeros(0, rhs.ncols))
            continue
        lift = solve_matrix(basis, rhs)
        if lift is None:
            logger.warning("No chain lift for a map of degree %s at parity %s.", g.degree, q.name)
            msg = "map is not relation-compatible; no chain lift exists"
            raise RelationError(msg)
        lifts.append(lift)
    return lifts[0], lifts[1]


def pull_ext(e: ExtElement, g: GradedMap) -> ExtElement:
    """Precompose ``e`` with ``g: G' -> source`` through a chain lift; degrees add."""
    if g.target != e.source:
        msg = "cannot pull: the map does not end at the Ext source"
        raise CompositionError(msg)
    lifts = chain_lift(g)
    vectors = tuple(e.vector(q + g.degree) @ lifts[q] for q in PARITIES)
    return ExtElement(g.source, e.target, (e.degree + g.degree) % 2, vectors)  # type: ignore[arg-type]


@dataclass(frozen=True)
class FreeResolution:
    """Length-1 free resolution ``P1 --boundary--> P0 --augmentation--> group``."""

    group: GradedGroup
    p1: GradedGroup
    p0: GradedGroup
    boundary: GradedMap
    augmentation: GradedMap

    @cached_property
    def exactness_failures(self) -> list[str]:
        failures = []
        if not (self.p0.is_free and self.p1.is_free):
            failures.append("resolution terms are not free")
        if self.boundary.source != self.p1 or self.boundary.target != self.p0 or self.boundary.degree:
            failures.append("boundary is not a degree-0 map P1 -> P0")
        if self.augmentation.source != self.p0 or self.augmentation.target != self.group or self.augmentation.degree:
            failures.append("augmentation is not a degree-0 map P0 -> G")
        if failures:
            return failures
        if not is_surjective(self.augmentation):
            failures.append("augmentation is not surjective")
        if not self.augmentation.compose(self.boundary).is_zero():
            failures.append("augmentation after boundary is not zero")
        elif not is_injective(self.boundary):
            failures.append("boundary is not injective")
        else:
            kernel, inclusion = kernel_of(self.augmentation)
            if lift_through(self.boundary, inclusion) is None:
                failures.append("kernel of the augmentation is larger than the image of the boundary")
        return failures

    def check(self) -> None:
        if self.exactness_failures:
            logger.warning("Resolution failed its exactness check: %s", self.exactness_failures)
            msg = f"not a free resolution: {'; '.join(self.exactness_failures)}"
            raise NotExactError(msg)


def canonical_free_resolution(group: GradedGroup) -> FreeResolution:
    """The canonical resolution packaged as a :class:`FreeResolution`."""
    resolution = canonical_resolution(group)
    p0 = GradedGroup.free(group.even.gens, group.odd.gens)
    p1 = GradedGroup.free(resolution.rank(0), resolution.rank(1))
    return FreeResolution(
        group,
        p1,
        p0,
        GradedMap(p1, p0, 0, resolution.bases),
        GradedMap(p0, group, 0, (IntMatrix.identity(group.even.gens), IntMatrix.identity(group.odd.gens))),
    )


def transport_ext(resolution: FreeResolution, cocycle: GradedMap) -> ExtElement:
    """Move a class given by ``cocycle: P1 -> H`` on ``resolution`` to the canonical encoding.

    Lifts the identity of the group to chain maps ``α0: Z^gens -> P0`` and
    ``α1: Z^k -> P1`` and returns ``cocycle ∘ α1``.

    Raises
    ------
    NotExactError
        If ``resolution`` is not a free resolution

    """
    resolution.check()
    if cocycle.source != resolution.p1:
        msg = "cocycle must be defined on P1 of the resolution"
        raise CompositionError(msg)
    group = resolution.group
    canonical = canonical_resolution(group)
    identity = GradedMap(GradedGroup.free(group.even.gens, group.odd.gens), group, 0, (IntMatrix.identity(group.even.gens), IntMatrix.identity(group.odd.gens)))
    alpha0 = lift_through(resolution.augmentation, identity)
    if alpha0 is None:  # pragma: no cover - excluded by the exactness check
        msg = "augmentation is not surjective"
        raise NotExactError(msg)
    vectors = []
    for p in PARITIES:
        rhs = alpha0.component(p) @ canonical.basis(p)
        alpha1 = solve_matrix(resolution.boundary.component(p), rhs) if resolution.boundary.component(p).ncols else IntMatrix.zeros(0, rhs.ncols)
        if alpha1 is None:
            msg = "boundary image misses part of the kernel of the augmentation"
            raise NotExactError(msg)
        vectors.append(cocycle.component(p) @ alpha1)
    return ExtElement(group, cocycle.target, cocycle.degree, (vectors[0], vectors[1]))


def to_resolution(e: ExtElement, resolution: FreeResolution) -> GradedMap:
    """Cocycle on ``resolution`` representing the canonical class ``e``."""
    resolution.check()
    if resolution.group != e.source:
        msg = "resolution resolves a different group"
        raise CompositionError(msg)
    canonical = canonical_resolution(e.source)
    components = []
    for p in PARITIES:
        rhs = resolution.augmentation.component(p) @ resolution.boundary.component(p)
        beta1 = solve_matrix(canonical.basis(p), rhs) if canonical.basis(p).ncols else IntMatrix.zeros(0, rhs.ncols)
        if beta1 is None:  # pragma: no cover - excluded by the exactness check
            msg = "boundary image is not in the relator lattice"
            raise NotExactError(msg)
        components.append(e.vector(p) @ beta1)
    return GradedMap(resolution.p1, e.target, e.degree, (components[0], components[1]))


def extension_class(iota: GradedMap, pi: GradedMap) -> ExtElement:
    """Class in ``Ext(C, A)`` of a short exact sequence ``A >-> E ->> C``.

    Lifts the canonical cover of ``C`` through ``pi``, restricts the lift to the
    relator lattice and solves for the result inside ``A``. The degree is
    ``deg iota + deg pi``.

    Raises
    ------
    NotExactError
        If the sequence is not short exact

    """
    if iota.target != pi.source:
        msg = "iota and pi are not composable"
        raise CompositionError(msg)
    failures = []
    if not is_injective(iota):
        failures.append("iota is not injective")
    if not is_surjective(pi):
        failures.append("pi is not surjective")
    if not pi.compose(iota).is_zero():
        failures.append("pi after iota is not zero")
    if not failures:
        kernel, inclusion = kernel_of(pi)
        if lift_through(iota, inclusion) is None:
            failures.append("image of iota is smaller than the kernel of pi")
    if failures:
        logger.warning("Extension rejected: %s", failures)
        msg = f"not a short exact sequence: {'; '.join(failures)}"
        raise NotExactError(msg)

    c_group, a_group, e_group = pi.target, iota.source, iota.target
    cover = GradedMap(GradedGroup.free(c_group.even.gens, c_group.odd.gens), c_group, 0, (IntMatrix.identity(c_group.even.gens), IntMatrix.identity(c_group.odd.gens)))
    lift = lift_through(pi, cover)
    if lift is None:  # pragma: no cover - pi is surjective
        msg = "pi is not surjective"
        raise NotExactError(msg)
    canonical = canonical_resolution(c_group)
    degree = (iota.degree + pi.degree) % 2
    vectors = []
    for q in PARITIES:
        restricted = lift.component(q) @ canonical.basis(q)
        e_parity = q + pi.degree
        e_pres = e_group.component(e_parity)
        iota_block = iota.component(e_parity + iota.degree)
        solution = solve_matrix(hstack(e_pres.gens, iota_block, e_pres.rels), restricted)
        if solution is None:  # pragma: no cover - exactness checked above
            msg = "restricted lift does not land in the image of iota"
            raise NotExactError(msg)
        vectors.append(solution.select_rows(range(iota_block.ncols)))
    return ExtElement(c_group, a_group, degree, (vectors[0], vectors[1]))


def ext_element_in_lattice(e: ExtElement) -> bool:
    """Same as ``e.is_zero()`` but without building the Ext presentation."""
    resolution = canonical_resolution(e.source)
    for p in PARITIES:
        target = e.target.component(p + e.degree)
        basis = resolution.basis(p)
        m = target.gens
        k = basis.ncols
        generators = hstack(m * k, IntMatrix.identity(k).kron(target.rels), basis.transpose().kron(IntMatrix.identity(m)))
        if not lattice_contains(generators, e.vector(p).vec()):
            return False
    return True
