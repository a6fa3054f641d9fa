"""Ext² over a unique path space as an explicit cokernel, obstruction classes and the classifier."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass

from homkk.diagrams.diagram import Diagram
from homkk.diagrams.spaces import Edge
from homkk.errors import CompositionError, InputValidationError, NotInvertibleError
from homkk.linear.ext import ExtElement, ExtGroup, ext_group, pull_ext, push_ext
from homkk.linear.groups import GradedGroup, GradedMap, GroupElement, Parity, Presentation, is_isomorphism
from homkk.linear.matrix import IntMatrix, Vector, hstack, solve_linear
from homkk.linear.uct import UctClass

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "DIAGRAM EXT2"})

VertexFamily = Mapping[str, ExtElement]
EdgeFamily = Mapping[Edge, ExtElement]


@dataclass(frozen=True)
class Ext2Diagram:
    """Cokernel of ``(t_x) ↦ (η_{y,x} t_x − t_y γ_{y,x})_{x->y}`` in a fixed Ext degree.

    Vertex terms are ``Ext_d(G_x, H_x)``, edge terms ``Ext_d(G_x, H_y)``; edges are
    ordered by ``(source, target)``. The cokernel is placed in even parity.
    """

    source: Diagram
    target: Diagram
    degree: int
    vertex_ext: Mapping[str, ExtGroup]
    edge_ext: Mapping[Edge, ExtGroup]
    domain: Presentation
    codomain: Presentation
    matrix: IntMatrix
    group: GradedGroup

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.source.space.edges

    def apply(self, family: VertexFamily) -> dict[Edge, ExtElement]:
        """The cokernel map evaluated directly on Ext classes."""
        image = {}
        for x, y in self.edges:
            eta = self.target.edge_map((x, y))
            gamma = self.source.edge_map((x, y))
            image[(x, y)] = push_ext(family[x], eta) - pull_ext(family[y], gamma)
        return image

    def encode_family(self, family: EdgeFamily) -> Vector:
        coords: list[int] = []
        for edge in self.edges:
            e = family[edge]
            if e.degree != self.degree:
                msg = f"class on edge {edge[0]}->{edge[1]} has degree {e.degree}, expected {self.degree}"
                raise CompositionError(msg)
            coords.extend(self.edge_ext[edge].encode(e))
        return tuple(coords)

    def encode(self, family: EdgeFamily) -> GroupElement:
        """Class of an edge family in the cokernel."""
        return GroupElement(self.group, Parity.EVEN, self.encode_family(family))

    def decode_vertex_family(self, vector: Vector) -> dict[str, ExtElement]:
        family = {}
        offset = 0
        for x in self.source.space.vertices:
            ext = self.vertex_ext[x]
            size = ext.group.gens(self.degree)
            family[x] = ext.decode(self.degree, vector[offset : offset + size])
            offset += size
        return family

    def decode_edge_family(self, vector: Vector) -> dict[Edge, ExtElement]:
        """Inverse of :meth:`encode_family` on codomain coordinates."""
        family = {}
        offset = 0
        for edge in self.edges:
            ext = self.edge_ext[edge]
            size = ext.group.gens(self.degree)
            family[edge] = ext.decode(self.degree, vector[offset : offset + size])
            offset += size
        return family

    def preimage(self, family: EdgeFamily) -> dict[str, ExtElement] | None:
        """A vertex family mapping onto ``family``, or ``None`` if its class is nonzero."""
        stacked = hstack(self.codomain.gens, self.matrix, self.codomain.rels)
        solution = solve_linear(stacked, self.encode_family(family))
        if solution is None:
            return None
        return self.decode_vertex_family(solution[: self.matrix.ncols])


def ext2_diagram(g: Diagram, h: Diagram, degree: int = 0) -> Ext2Diagram:
    """Ext² between two diagrams as one integer cokernel.

    ``degree=1`` computes ``Ext²(ΣG, H)``.

    Raises
    ------
    CompositionError
        If the diagrams live on different spaces

    """
    if g.space != h.space:
        msg = "diagrams live on different spaces"
        raise CompositionError(msg)
    g.validate()
    h.validate()
    space = g.space
    d = degree % 2
    vertex_ext = {x: ext_group(g.group(x), h.group(x)) for x in space.vertices}
    edge_ext = {(x, y): ext_group(g.group(x), h.group(y)) for x, y in space.edges}
    domain = Presentation.direct_sum(*(vertex_ext[x].group.component(d) for x in space.vertices))
    codomain = Presentation.direct_sum(*(edge_ext[e].group.component(d) for e in space.edges))

    columns: list[Vector] = []
    for x in space.vertices:
        for t in vertex_ext[x].generators(d):
            coords: list[int] = []
            for edge in space.edges:
                ext = edge_ext[edge]
                if edge[0] == x:
                    coords.extend(ext.encode(push_ext(t, h.edge_map(edge))))
                elif edge[1] == x:
                    coords.extend(ext.encode(-pull_ext(t, g.edge_map(edge))))
                else:
                    coords.extend([0] * ext.group.gens(d))
            columns.append(tuple(coords))
    matrix = IntMatrix.from_columns(columns, codomain.gens)
    group = GradedGroup.concentrated(Presentation(codomain.gens, hstack(codomain.gens, codomain.rels, matrix)))
    logger.debug("Diagram Ext2 in degree %s has invariants %s.", d, group.even.invariant_factors)
    return Ext2Diagram(g, h, d, vertex_ext, edge_ext, domain, codomain, matrix, group)


@dataclass(frozen=True)
class XObject:
    """UCT shadow of an object over ``X``: edge maps ``β⁰_{y,x}`` and odd parts ``β¹_{y,x} ∈ Ext(ΣG_x, G_y)``."""

    diagram: Diagram
    odd_edge: Mapping[Edge, ExtElement]

    def edge_class(self, edge: Edge) -> UctClass:
        return UctClass(self.diagram.edge_map(edge), self.odd_edge[edge])

    def validate(self) -> None:
        self.diagram.validate()
        if set(self.odd_edge) != set(self.diagram.space.edges):
            msg = f"odd parts given for {sorted(self.odd_edge)}, edges are {list(self.diagram.space.edges)}"
            raise InputValidationError(msg)
        for edge in self.diagram.space.edges:
            try:
                self.edge_class(edge)
            except CompositionError as err:
                msg = f"edge {edge[0]}->{edge[1]}: {err}"
                raise CompositionError(msg) from err


def obstruction_x(obj: XObject) -> GroupElement:
    """Class of the family ``(β¹_{y,x})`` in ``Ext²(ΣG, G)``."""
    obj.validate()
    ext2 = ext2_diagram(obj.diagram, obj.diagram, 1)
    return ext2.encode(obj.odd_edge)


def _check_vertex_isomorphisms(a: XObject, b: XObject, t0: Mapping[str, GradedMap]) -> None:
    a.validate()
    b.validate()
    if a.diagram.space != b.diagram.space:
        msg = "objects live on different spaces"
        raise CompositionError(msg)
    space = a.diagram.space
    if set(t0) != set(space.vertices):
        msg = f"t0 given for {sorted(t0)}, vertices are {list(space.vertices)}"
        raise InputValidationError(msg)
    for x in space.vertices:
        t = t0[x]
        if t.degree != 0 or t.source != a.diagram.group(x) or t.target != b.diagram.group(x):
            msg = f"t0 at vertex {x} must be a degree-0 map A_{x} -> B_{x}"
            raise CompositionError(msg)
        t.check_relations()
        if not is_isomorphism(t):
            logger.warning("t0 at vertex %s is not an isomorphism.", x)
            msg = f"t0 at vertex {x} is not an isomorphism"
            raise NotInvertibleError(msg)
    for x, y in space.edges:
        if not t0[y].compose(a.diagram.edge_map((x, y))).equals(b.diagram.edge_map((x, y)).compose(t0[x])):
            logger.warning("Square on edge %s->%s does not commute.", x, y)
            msg = f"square on edge {x}->{y} does not commute"
            raise NotInvertibleError(msg)


def _relative_family(a: XObject, b: XObject, t0: Mapping[str, GradedMap]) -> dict[Edge, ExtElement]:
    return {
        (x, y): pull_ext(b.odd_edge[(x, y)], t0[x]) - push_ext(a.odd_edge[(x, y)], t0[y])
        for x, y in a.diagram.space.edges
    }


def mixed_map(a: XObject, b: XObject, family: VertexFamily) -> dict[Edge, ExtElement]:
    """``(t¹_x) ↦ (t¹_y ∘ α⁰_{y,x} − β⁰_{y,x} ∘ t¹_x)`` on every edge."""
    return {
        (x, y): pull_ext(family[y], a.diagram.edge_map((x, y))) - push_ext(family[x], b.diagram.edge_map((x, y)))
        for x, y in a.diagram.space.edges
    }


def relative_obstruction_x(a: XObject, b: XObject, t0: Mapping[str, GradedMap]) -> GroupElement:
    """Class of ``(β¹_{y,x} t⁰_x − t⁰_y α¹_{y,x})`` modulo the image of the mixed map.

    The mixed map is the negative of the cokernel map of ``ext2_diagram(A, B, 1)``,
    so both have the same image.

    Raises
    ------
    NotInvertibleError
        If some ``t0_x`` is not an isomorphism or some square does not commute

    """
    _check_vertex_isomorphisms(a, b, t0)
    ext2 = ext2_diagram(a.diagram, b.diagram, 1)
    return ext2.encode(_relative_family(a, b, t0))


@dataclass(frozen=True)
class XDecision:
    """Outcome of :func:`classify_x`; ``witness`` holds ``(t¹_x)`` exactly when ``equivalent``."""

    equivalent: bool
    witness: dict[str, ExtElement] | None
    obstruction: GroupElement


def classify_x(a: XObject, b: XObject, t0: Mapping[str, GradedMap]) -> XDecision:
    """Decide whether ``t0`` lifts to an isomorphism of the two objects.

    One stacked integer system is solved for ``(t¹_x)``; a witness is re-verified
    edge by edge against the mixed map.
    """
    _check_vertex_isomorphisms(a, b, t0)
    ext2 = ext2_diagram(a.diagram, b.diagram, 1)
    rhs = _relative_family(a, b, t0)
    obstruction = ext2.encode(rhs)
    preimage = ext2.preimage(rhs)
    if preimage is None:
        logger.info("Objects over X are not equivalent along t0.")
        return XDecision(equivalent=False, witness=None, obstruction=obstruction)

    witness = {x: -t for x, t in preimage.items()}
    lhs = mixed_map(a, b, witness)
    for edge in a.diagram.space.edges:
        if not lhs[edge].equals(rhs[edge]):  # pragma: no cover - the solve is exact
            msg = f"witness failed re-verification on edge {edge[0]}->{edge[1]}"
            raise ArithmeticError(msg)
    return XDecision(equivalent=True, witness=witness, obstruction=obstruction)
