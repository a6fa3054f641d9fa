"""Verbs on unique path spaces and diagrams over them."""

import logging
from pathlib import Path
from typing import Any

from homkk.commands.base import BaseCommand
from homkk.diagrams.diagram import canonical_diagram_resolution
from homkk.diagrams.obstruction import classify_x, ext2_diagram, obstruction_x, relative_obstruction_x
from homkk.diagrams.spaces import order_relation, validate_ups
from homkk.serialization import VERTEX_MAPS, DiagramModel, ExtModel, describe_element, edge_key, invariants, vertex_maps

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "DIAGRAM CMD"})


class ValidateUpsCommand(BaseCommand):
    """Report-valued: an invalid space is a computed result, not a failure."""

    verb = "validate-ups"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        space = self.load(paths[0], DiagramModel).to_domain()
        report = validate_ups(space)
        result: dict[str, Any] = {"ok": report.ok, "violation": report.violation, "location": list(report.location)}
        if report.ok:
            result["order"] = sorted([list(pair) for pair in order_relation(space)])
        return result


class ResolveDiagramCommand(BaseCommand):
    verb = "resolve-diagram"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        diagram = self.load(paths[0], DiagramModel).to_diagram()
        resolution = canonical_diagram_resolution(diagram)
        vertices = {}
        for z in diagram.space.vertices:
            certificate = resolution.certificate[z]
            vertices[z] = {
                "left_summands": [edge_key(e) for e in resolution.left_summands[z]],
                "middle_summands": list(resolution.middle_summands[z]),
                "left": invariants(resolution.left.group(z)),
                "middle": invariants(resolution.middle.group(z)),
                "homology": {
                    "left": invariants(certificate.left),
                    "middle": invariants(certificate.middle),
                    "right": invariants(certificate.right),
                },
                "exact": certificate.is_exact,
            }
        return {"exact": resolution.is_exact, "vertices": vertices}


class Ext2XCommand(BaseCommand):
    """``Ext²(G, H)`` in both degrees; one input means ``H = G``."""

    verb = "ext2-x"
    max_inputs = 2

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        diagrams = [self.load(path, DiagramModel).to_diagram() for path in paths]
        g, h = diagrams[0], diagrams[-1]
        result = {}
        for degree in (0, 1):
            ext2 = ext2_diagram(g, h, degree)
            result[f"degree_{degree}"] = {
                "ext2": list(ext2.group.even.invariant_factors),
                "edges": [edge_key(e) for e in ext2.edges],
                "matrix": ext2.matrix.to_lists(),
            }
        return result


class ObstructXCommand(BaseCommand):
    verb = "obstruct-x"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        obj = self.load(paths[0], DiagramModel).to_xobject()
        return {"obstruction": describe_element(obstruction_x(obj))}


class ClassifyXCommand(BaseCommand):
    """Decide equivalence of two objects over ``X`` along vertexwise isomorphisms ``t0``."""

    verb = "classify-x"
    min_inputs = 3
    max_inputs = 3

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        a = self.load(paths[0], DiagramModel).to_xobject()
        b = self.load(paths[1], DiagramModel).to_xobject()
        t0 = vertex_maps(self.load(paths[2], VERTEX_MAPS), a.diagram, b.diagram)
        relative = relative_obstruction_x(a, b, t0)
        decision = classify_x(a, b, t0)
        witness = None
        if decision.witness is not None:
            witness = {x: ExtModel.from_domain(t).model_dump(mode="json") for x, t in sorted(decision.witness.items())}
        return {"equivalent": decision.equivalent, "obstruction": describe_element(relative), "witness": witness}

    def summarize(self, result: dict[str, Any]) -> list[str]:
        verdict = "equivalent" if result["equivalent"] else "not equivalent"
        return [verdict, f"obstruction: {result['obstruction']['normal_form']} in factors {result['obstruction']['factors']}"]
