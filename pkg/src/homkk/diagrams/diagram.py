"""Diagrams of graded groups over a unique path space and their canonical resolution."""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import reduce

from homkk.diagrams.spaces import Edge, UniquePathSpace, down_set, path_edges, precedes, require_valid, up_set
from homkk.errors import CompositionError, InputValidationError, RelationError
from homkk.linear.ext import HomGroup, hom_group
from homkk.linear.groups import (
    GradedGroup,
    GradedMap,
    Presentation,
    block_map,
    cokernel_of,
    homology,
    kernel_of,
    presentation_kernel,
)
from homkk.linear.matrix import IntMatrix, Vector

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "DIAGRAM"})


@dataclass(frozen=True)
class Diagram:
    """Graded groups ``G_x`` at vertices and degree-0 maps ``γ_{y,x}: G_x -> G_y`` on edges ``x -> y``."""

    space: UniquePathSpace
    groups: Mapping[str, GradedGroup]
    edge_maps: Mapping[Edge, GradedMap] = field(default_factory=dict)

    @classmethod
    def zero(cls, space: UniquePathSpace) -> "Diagram":
        zero = GradedGroup.zero()
        return cls(space, {x: zero for x in space.vertices}, {e: GradedMap.zero(zero, zero) for e in space.edges})

    def group(self, x: str) -> GradedGroup:
        try:
            return self.groups[x]
        except KeyError as err:
            msg = f"no group at vertex {x!r}"
            raise InputValidationError(msg) from err

    def edge_map(self, edge: Edge) -> GradedMap:
        try:
            return self.edge_maps[edge]
        except KeyError as err:
            msg = f"no map on edge {edge[0]}->{edge[1]}"
            raise InputValidationError(msg) from err

    def validate(self) -> None:
        """Check the space, the vertex and edge labels and every edge map.

        Raises
        ------
        InputValidationError
            Naming the offending vertex or edge

        """
        require_valid(self.space)
        if set(self.groups) != set(self.space.vertices):
            msg = f"groups given for {sorted(self.groups)}, vertices are {list(self.space.vertices)}"
            raise InputValidationError(msg)
        if set(self.edge_maps) != set(self.space.edges):
            msg = f"edge maps given for {sorted(self.edge_maps)}, edges are {list(self.space.edges)}"
            raise InputValidationError(msg)
        for x, y in self.space.edges:
            gamma = self.edge_maps[(x, y)]
            if gamma.degree != 0 or gamma.source != self.groups[x] or gamma.target != self.groups[y]:
                msg = f"edge map {x}->{y} must be a degree-0 map G_{x} -> G_{y}"
                raise CompositionError(msg)
            try:
                gamma.check_relations()
            except RelationError as err:
                logger.warning("Edge map %s->%s is not relation-compatible.", x, y, exc_info=True)
                msg = f"edge map {x}->{y}: {err}"
                raise RelationError(msg) from err

    def suspend(self) -> "Diagram":
        return Diagram(
            self.space,
            {x: g.suspend() for x, g in self.groups.items()},
            {e: m.suspend() for e, m in self.edge_maps.items()},
        )


def path_map(diagram: Diagram, target: str, source: str) -> GradedMap:
    """Composite ``G_source -> G_target`` along the unique path ``source ~> target``."""
    start = GradedMap.identity(diagram.group(source))
    return reduce(lambda acc, edge: diagram.edge_map(edge).compose(acc), path_edges(diagram.space, source, target), start)


def j_object(space: UniquePathSpace, z: str, b: GradedGroup) -> Diagram:
    """``J_z(B)``: ``B`` at every ``x ⪯ z`` with identity edge maps, zero elsewhere."""
    inside = set(down_set(space, z))
    zero = GradedGroup.zero()
    groups = {x: b if x in inside else zero for x in space.vertices}
    edge_maps = {}
    for x, y in space.edges:
        edge_maps[(x, y)] = GradedMap.identity(b) if x in inside else GradedMap.zero(groups[x], groups[y])
    return Diagram(space, groups, edge_maps)


@dataclass(frozen=True)
class VertexCertificate:
    """Homology of the resolution at one vertex: ``ker ψ``, ``ker q / im ψ`` and ``coker q``."""

    vertex: str
    left: GradedGroup
    middle: GradedGroup
    right: GradedGroup

    @property
    def is_exact(self) -> bool:
        return self.left.is_trivial and self.middle.is_trivial and self.right.is_trivial


@dataclass(frozen=True)
class DiagramResolution:
    """``⊕_{x->y} J_y(G_x) --ψ--> ⊕_x J_x(G_x) --q--> G`` evaluated vertex by vertex.

    ``left_summands[z]`` lists the edges ``x -> y`` with ``z ⪯ y`` and
    ``middle_summands[z]`` the vertices ``x`` with ``z ⪯ x``, in the order of the
    direct sums.
    """

    diagram: Diagram
    left: Diagram
    middle: Diagram
    psi: Mapping[str, GradedMap]
    q: Mapping[str, GradedMap]
    left_summands: Mapping[str, tuple[Edge, ...]]
    middle_summands: Mapping[str, tuple[str, ...]]
    certificate: Mapping[str, VertexCertificate]

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.certificate.values())


def _inclusion_of_keys(small: Sequence, large: Sequence, groups: Sequence[GradedGroup], large_groups: Sequence[GradedGroup]) -> GradedMap:
    blocks = {(large.index(key), j): GradedMap.identity(groups[j]) for j, key in enumerate(small)}
    return block_map(groups, large_groups, blocks)


def canonical_diagram_resolution(diagram: Diagram) -> DiagramResolution:
    """Build the canonical length-1 resolution of ``diagram`` and certify its exactness."""
    diagram.validate()
    space = diagram.space
    middle_keys = {z: tuple(x for x in up_set(space, z)) for z in space.vertices}
    left_keys = {z: tuple(e for e in space.edges if precedes(space, z, e[1])) for z in space.vertices}

    def middle_parts(z: str) -> list[GradedGroup]:
        return [diagram.group(x) for x in middle_keys[z]]

    def left_parts(z: str) -> list[GradedGroup]:
        return [diagram.group(e[0]) for e in left_keys[z]]

    psi: dict[str, GradedMap] = {}
    q: dict[str, GradedMap] = {}
    certificate: dict[str, VertexCertificate] = {}
    for z in space.vertices:
        mids = middle_keys[z]
        q_blocks = {(0, j): path_map(diagram, z, x) for j, x in enumerate(mids)}
        q[z] = block_map(middle_parts(z), [diagram.group(z)], q_blocks)

        psi_blocks: dict[tuple[int, int], GradedMap] = {}
        for j, (x, y) in enumerate(left_keys[z]):
            psi_blocks[(mids.index(x), j)] = GradedMap.identity(diagram.group(x))
            psi_blocks[(mids.index(y), j)] = -diagram.edge_map((x, y))
        psi[z] = block_map(left_parts(z), middle_parts(z), psi_blocks)

        certificate[z] = VertexCertificate(
            vertex=z,
            left=kernel_of(psi[z])[0],
            middle=homology(psi[z], q[z]),
            right=cokernel_of(q[z])[0],
        )
        if not certificate[z].is_exact:
            logger.error("Canonical resolution is not exact at vertex %s.", z)

    middle = Diagram(
        space,
        {z: GradedGroup.direct_sum(*middle_parts(z)) for z in space.vertices},
        {(u, v): _inclusion_of_keys(middle_keys[u], middle_keys[v], middle_parts(u), middle_parts(v)) for u, v in space.edges},
    )
    left = Diagram(
        space,
        {z: GradedGroup.direct_sum(*left_parts(z)) for z in space.vertices},
        {(u, v): _inclusion_of_keys(left_keys[u], left_keys[v], left_parts(u), left_parts(v)) for u, v in space.edges},
    )
    logger.debug("Resolved a diagram on %s vertices.", len(space.vertices))
    return DiagramResolution(diagram, left, middle, psi, q, left_keys, middle_keys, certificate)


def _check_same_space(g: Diagram, h: Diagram) -> None:
    if g.space != h.space:
        msg = "diagrams live on different spaces"
        raise CompositionError(msg)


@dataclass(frozen=True)
class HomDiagram:
    """Graded group of diagram morphisms ``G -> H`` with a decoder to vertex families."""

    source: Diagram
    target: Diagram
    group: GradedGroup
    vertex_homs: Mapping[str, HomGroup]
    inclusions: tuple[IntMatrix, IntMatrix]

    def decode(self, degree: int, vector: Vector) -> dict[str, GradedMap]:
        """Vertex family ``(f_x)`` of the morphism with coordinates ``vector``."""
        ambient = self.inclusions[degree % 2].apply(vector)
        family = {}
        offset = 0
        for x in self.source.space.vertices:
            hom = self.vertex_homs[x]
            size = hom.group.gens(degree)
            family[x] = hom.decode(degree, ambient[offset : offset + size])
            offset += size
        return family

    def generators(self, degree: int) -> list[dict[str, GradedMap]]:
        n = self.group.gens(degree)
        return [self.decode(degree, tuple(1 if i == j else 0 for i in range(n))) for j in range(n)]


def hom_diagram(g: Diagram, h: Diagram) -> HomDiagram:
    """Families ``(f_x)`` in ``∏_x Hom(G_x, H_x)`` with ``η_{y,x} f_x = f_y γ_{y,x}`` on every edge."""
    _check_same_space(g, h)
    g.validate()
    h.validate()
    space = g.space
    vertex_homs = {x: hom_group(g.group(x), h.group(x)) for x in space.vertices}
    edge_homs = {(x, y): hom_group(g.group(x), h.group(y)) for x, y in space.edges}
    components: list[Presentation] = []
    inclusions: list[IntMatrix] = []
    for degree in (0, 1):
        domain = Presentation.direct_sum(*(vertex_homs[x].group.component(degree) for x in space.vertices))
        codomain = Presentation.direct_sum(*(edge_homs[e].group.component(degree) for e in space.edges))
        columns: list[Vector] = []
        for x in space.vertices:
            for f in vertex_homs[x].generators(degree):
                coords: list[int] = []
                for edge in space.edges:
                    hom = edge_homs[edge]
                    if edge[0] == x and edge[1] == x:  # pragma: no cover - excluded by acyclicity
                        continue
                    if edge[0] == x:
                        coords.extend(hom.encode(h.edge_map(edge).compose(f)))
                    elif edge[1] == x:
                        coords.extend(hom.encode(-f.compose(g.edge_map(edge))))
                    else:
                        coords.extend([0] * hom.group.gens(degree))
                columns.append(tuple(coords))
        matrix = IntMatrix.from_columns(columns, codomain.gens)
        kernel, inclusion = presentation_kernel(matrix, domain, codomain)
        components.append(kernel)
        inclusions.append(inclusion)
    group = GradedGroup(components[0], components[1])
    logger.debug("Diagram Hom group has invariants %s.", group.invariant_factors())
    return HomDiagram(g, h, group, vertex_homs, (inclusions[0], inclusions[1]))
