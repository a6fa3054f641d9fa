"""Verbs on Z-actions: ``ext2-z``, ``obstruct-z``, ``classify-z``."""

import logging
from pathlib import Path
from typing import Any

from homkk.commands.base import BaseCommand
from homkk.laurent import equivalent_z, ext2_laurent, obstruction_z, pv_terms, relative_obstruction_z
from homkk.serialization import ExtModel, MapModel, ZObjectModel, describe_element, invariants

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "LAURENT CMD"})


class Ext2ZCommand(BaseCommand):
    """``Ext²`` of one module with itself, or of two modules."""

    verb = "ext2-z"
    max_inputs = 2

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        modules = [self.load(path, ZObjectModel).to_module() for path in paths]
        a, b = modules[0], modules[-1]
        ext2 = ext2_laurent(a, b)
        return {
            "ext": invariants(ext2.gamma.ext.group),
            "gamma": ext2.gamma.matrix.to_lists(),
            "ext2": list(ext2.group.even.invariant_factors),
        }


class ObstructZCommand(BaseCommand):
    verb = "obstruct-z"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        obj = self.load(paths[0], ZObjectModel).to_domain()
        element = obstruction_z(obj)
        terms = pv_terms(obj, obj)
        return {
            "obstruction": describe_element(element),
            "pv_terms": {
                "hom_kernel": invariants(terms.hom_kernel),
                "hom_cokernel": invariants(terms.hom_cokernel),
                "ext_kernel": invariants(terms.ext_kernel),
                "ext_cokernel": invariants(terms.ext_cokernel),
            },
        }


class ClassifyZCommand(BaseCommand):
    """Decide equivalence of two Z-objects along a given module isomorphism ``t0``."""

    verb = "classify-z"
    min_inputs = 3
    max_inputs = 3

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        a = self.load(paths[0], ZObjectModel).to_domain()
        b = self.load(paths[1], ZObjectModel).to_domain()
        t0 = self.load(paths[2], MapModel).to_domain(a.group, b.group, 0, "t0")
        relative = relative_obstruction_z(a, b, t0)
        decision = equivalent_z(a, b, t0)
        return {
            "equivalent": decision.equivalent,
            "obstruction": describe_element(relative),
            "witness": None if decision.witness is None else ExtModel.from_domain(decision.witness).model_dump(mode="json"),
        }

    def summarize(self, result: dict[str, Any]) -> list[str]:
        verdict = "equivalent" if result["equivalent"] else "not equivalent"
        return [verdict, f"obstruction: {result['obstruction']['normal_form']} in factors {result['obstruction']['factors']}"]
