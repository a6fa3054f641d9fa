"""Diagrams of graded groups over unique path spaces."""

from homkk.diagrams.diagram import (
    Diagram,
    DiagramResolution,
    HomDiagram,
    VertexCertificate,
    canonical_diagram_resolution,
    hom_diagram,
    j_object,
    path_map,
)
from homkk.diagrams.obstruction import (
    Ext2Diagram,
    XDecision,
    XObject,
    classify_x,
    ext2_diagram,
    obstruction_x,
    relative_obstruction_x,
)
from homkk.diagrams.spaces import UniquePathSpace, UpsReport, linear_space, order_relation, validate_ups

__all__ = [
    "Diagram",
    "DiagramResolution",
    "Ext2Diagram",
    "HomDiagram",
    "UniquePathSpace",
    "UpsReport",
    "VertexCertificate",
    "XDecision",
    "XObject",
    "canonical_diagram_resolution",
    "classify_x",
    "ext2_diagram",
    "hom_diagram",
    "j_object",
    "linear_space",
    "obstruction_x",
    "order_relation",
    "path_map",
    "relative_obstruction_x",
    "validate_ups",
]
