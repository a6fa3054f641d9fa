"""JSON documents read and written by the command line.

Input models validate the raw structure with pydantic and convert to engine
objects through ``to_domain``; shape mismatches found during conversion surface as
:class:`~homkk.errors.InputValidationError`. Integers may be given as JSON numbers
or as decimal strings of any size.
"""

import re
from collections.abc import Callable, Mapping
from typing import Annotated, Any, Literal

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field, TypeAdapter

from homkk.diagrams.diagram import Diagram
from homkk.diagrams.obstruction import XObject
from homkk.diagrams.spaces import Edge, UniquePathSpace
from homkk.errors import InputValidationError, ShapeError
from homkk.filtrated.module import NTModule
from homkk.filtrated.ring import Interval, delta_target, i_target, r_target
from homkk.laurent import LaurentModule, ZObject
from homkk.linear.ext import ExtElement, canonical_resolution
from homkk.linear.groups import GradedGroup, GradedMap, GroupElement, Presentation
from homkk.linear.matrix import IntMatrix

SCHEMA_VERSION = 1

_DECIMAL = re.compile(r"^[+-]?\d+$")


def _decimal(value: Any) -> Any:
    """Accept arbitrary-size decimal strings alongside JSON integers."""
    if isinstance(value, bool):
        msg = "booleans are not integers"
        raise ValueError(msg)  # noqa: TRY004
    if isinstance(value, str):
        if not _DECIMAL.match(value.strip()):
            msg = f"{value!r} is not a decimal integer"
            raise ValueError(msg)
        return int(value.strip())
    return value


BigInt = Annotated[int, BeforeValidator(_decimal)]
Rows = list[list[BigInt]]


class _Document(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")


def _matrix(rows: Rows, nrows: int, ncols: int, what: str) -> IntMatrix:
    """Rows as an ``nrows x ncols`` matrix; ``[]`` stands for any matrix without entries."""
    if not rows and (nrows == 0 or ncols == 0):
        return IntMatrix.zeros(nrows, ncols)
    try:
        matrix = IntMatrix.from_rows(rows, ncols)
    except ShapeError as err:
        msg = f"{what}: {err}"
        raise ShapeError(msg) from err
    if matrix.shape != (nrows, ncols):
        msg = f"{what} has shape {matrix.nrows}x{matrix.ncols}, expected {nrows}x{ncols}"
        raise ShapeError(msg)
    return matrix


class PresentationModel(_Document):
    gens: int = Field(default=0, ge=0)
    rels: Rows = Field(default_factory=list, description="One row per generator, one column per relator")

    def to_domain(self, what: str = "presentation") -> Presentation:
        ncols = len(self.rels[0]) if self.rels else 0
        return Presentation(self.gens, _matrix(self.rels, self.gens, ncols, f"{what} relators"))

    @classmethod
    def from_domain(cls, presentation: Presentation) -> "PresentationModel":
        return cls(gens=presentation.gens, rels=presentation.rels.to_lists())


class GroupModel(_Document):
    even: PresentationModel = Field(default_factory=PresentationModel)
    odd: PresentationModel = Field(default_factory=PresentationModel)

    def to_domain(self, what: str = "group") -> GradedGroup:
        return GradedGroup(self.even.to_domain(f"{what} even"), self.odd.to_domain(f"{what} odd"))

    @classmethod
    def from_domain(cls, group: GradedGroup) -> "GroupModel":
        return cls(even=PresentationModel.from_domain(group.even), odd=PresentationModel.from_domain(group.odd))


class MapModel(_Document):
    """A graded map; ``degree`` may be omitted where the context fixes it."""

    degree: Literal[0, 1] | None = None
    even: Rows = Field(default_factory=list)
    odd: Rows = Field(default_factory=list)

    def to_domain(self, source: GradedGroup, target: GradedGroup, degree: int = 0, what: str = "map") -> GradedMap:
        d = degree if self.degree is None else self.degree
        components = tuple(
            _matrix(rows, target.gens(p + d), source.gens(p), f"{what} {name} component")
            for p, (name, rows) in enumerate((("even", self.even), ("odd", self.odd)))
        )
        return GradedMap(source, target, d, components)  # type: ignore[arg-type]

    @classmethod
    def from_domain(cls, f: GradedMap) -> "MapModel":
        return cls(degree=f.degree, even=f.component(0).to_lists(), odd=f.component(1).to_lists())


class ExtModel(_Document):
    degree: Literal[0, 1] = 1
    even_vectors: Rows = Field(default_factory=list)
    odd_vectors: Rows = Field(default_factory=list)

    def to_domain(self, source: GradedGroup, target: GradedGroup, what: str = "Ext class") -> ExtElement:
        resolution = canonical_resolution(source)
        vectors = tuple(
            _matrix(rows, target.gens(p + self.degree), resolution.rank(p), f"{what} {name} vectors")
            for p, (name, rows) in enumerate((("even", self.even_vectors), ("odd", self.odd_vectors)))
        )
        return ExtElement(source, target, self.degree, vectors)  # type: ignore[arg-type]

    @classmethod
    def from_domain(cls, e: ExtElement) -> "ExtModel":
        return cls(degree=e.degree, even_vectors=e.vector(0).to_lists(), odd_vectors=e.vector(1).to_lists())


class SnfInput(_Document):
    matrix: Rows
    ncols: int | None = Field(default=None, ge=0, description="Only needed for matrices without rows")

    def to_domain(self) -> IntMatrix:
        return IntMatrix.from_rows(self.matrix, self.ncols)


class ZObjectModel(_Document):
    """A Z-action; ``action_inverse`` is computed when absent, ``odd_part`` defaults to zero."""

    group: GroupModel
    action: MapModel
    action_inverse: MapModel | None = None
    odd_part: ExtModel | None = None

    def to_module(self) -> LaurentModule:
        group = self.group.to_domain()
        action = self.action.to_domain(group, group, what="action")
        if self.action_inverse is None:
            return LaurentModule.from_action(group, action)
        module = LaurentModule(group, action, self.action_inverse.to_domain(group, group, what="action_inverse"))
        module.validate()
        return module

    def to_domain(self) -> ZObject:
        module = self.to_module()
        odd = ExtElement.zero(module.group, module.group, 1) if self.odd_part is None else self.odd_part.to_domain(module.group, module.group, "odd_part")
        obj = ZObject(module, odd)
        obj.validate()
        return obj


def parse_edge(key: str) -> Edge:
    """``"x->y"`` as ``(x, y)``."""
    source, arrow, target = key.partition("->")
    if not arrow or not source.strip() or not target.strip():
        msg = f"edge key {key!r} is not of the form 'x->y'"
        raise InputValidationError(msg)
    return source.strip(), target.strip()


def edge_key(edge: Edge) -> str:
    return f"{edge[0]}->{edge[1]}"


class SpaceModel(_Document):
    vertices: list[str]
    edges: list[tuple[str, str]] = Field(default_factory=list)

    def to_domain(self) -> UniquePathSpace:
        return UniquePathSpace.build(self.vertices, self.edges)


class DiagramModel(SpaceModel):
    """A diagram over a unique path space, optionally with odd edge parts."""

    groups: dict[str, GroupModel] = Field(default_factory=dict)
    edge_maps: dict[str, MapModel] = Field(default_factory=dict)
    odd_edge: dict[str, ExtModel] = Field(default_factory=dict)

    def to_diagram(self) -> Diagram:
        space = self.to_domain()
        unknown = sorted(set(self.groups) - set(self.vertices))
        if unknown:
            msg = f"groups given for unknown vertices {unknown}"
            raise InputValidationError(msg)
        groups = {x: self.groups[x].to_domain(f"group at {x}") if x in self.groups else GradedGroup.zero() for x in self.vertices}
        edge_maps = {}
        for key, model in self.edge_maps.items():
            x, y = parse_edge(key)
            if x not in groups or y not in groups:
                msg = f"edge map {key} names an unknown vertex"
                raise InputValidationError(msg)
            edge_maps[(x, y)] = model.to_domain(groups[x], groups[y], what=f"edge map {key}")
        diagram = Diagram(space, groups, edge_maps)
        diagram.validate()
        return diagram

    def to_xobject(self) -> XObject:
        diagram = self.to_diagram()
        odd = {}
        for edge in diagram.space.edges:
            model = self.odd_edge.get(edge_key(edge))
            source, target = diagram.group(edge[0]), diagram.group(edge[1])
            odd[edge] = ExtElement.zero(source, target, 1) if model is None else model.to_domain(source, target, f"odd part on {edge_key(edge)}")
        extra = sorted(set(self.odd_edge) - {edge_key(e) for e in diagram.space.edges})
        if extra:
            msg = f"odd parts given for edges that are not in the space: {extra}"
            raise InputValidationError(msg)
        obj = XObject(diagram, odd)
        obj.validate()
        return obj


class NTModuleModel(_Document):
    """An NT-module; generator maps are keyed by their source interval."""

    n: int = Field(ge=1)
    slots: dict[str, GroupModel] = Field(default_factory=dict)
    i: dict[str, MapModel] = Field(default_factory=dict)
    r: dict[str, MapModel] = Field(default_factory=dict)
    delta: dict[str, MapModel] = Field(default_factory=dict)

    def to_domain(self, max_n: int | None = None) -> NTModule:
        slots = {Interval.parse(key): model.to_domain(f"slot {key}") for key, model in self.slots.items()}
        base = NTModule(self.n, slots)
        base.validate_structure(max_n)

        def maps(raw: Mapping[str, MapModel], target: Callable[[Interval], Interval], degree: int, name: str) -> dict[Interval, GradedMap]:
            result = {}
            for key, model in raw.items():
                src = Interval.parse(key)
                result[src] = model.to_domain(base.slot(src), base.slot(target(src)), degree, f"{name} at {key}")
            return result

        module = NTModule(
            self.n,
            slots,
            maps(self.i, i_target, 0, "i"),
            maps(self.r, r_target, 0, "r"),
            maps(self.delta, lambda s: delta_target(s, self.n), 1, "delta"),
        )
        module.validate_structure(max_n)
        return module

    @classmethod
    def from_domain(cls, module: NTModule) -> "NTModuleModel":
        return cls(
            n=module.n,
            slots={key.label: GroupModel.from_domain(g) for key, g in sorted(module.slots.items())},
            i={key.label: MapModel.from_domain(m) for key, m in sorted(module.gen_i.items())},
            r={key.label: MapModel.from_domain(m) for key, m in sorted(module.gen_r.items())},
            delta={key.label: MapModel.from_domain(m) for key, m in sorted(module.gen_delta.items())},
        )


VERTEX_MAPS = TypeAdapter(dict[str, MapModel])


def vertex_maps(raw: Mapping[str, MapModel], a: Diagram, b: Diagram) -> dict[str, GradedMap]:
    """Degree-0 maps ``A_x -> B_x`` from a vertex-keyed document."""
    unknown = sorted(set(raw) - set(a.space.vertices))
    if unknown:
        msg = f"maps given for unknown vertices {unknown}"
        raise InputValidationError(msg)
    return {x: model.to_domain(a.group(x), b.group(x), 0, f"t0 at {x}") for x, model in raw.items()}


def invariants(group: GradedGroup) -> dict[str, list[int]]:
    return {name: list(factors) for name, factors in group.invariant_factors().items()}


def describe_element(element: GroupElement) -> dict[str, Any]:
    """Normal form, the cyclic factors it lives in and whether it vanishes."""
    return {
        "factors": list(element.factors()),
        "normal_form": list(element.normal_form()),
        "zero": element.is_zero(),
    }

