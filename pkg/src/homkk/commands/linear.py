"""Verbs on single matrices and pairs of graded groups: ``snf``, ``hom``, ``ext``."""

import logging
from pathlib import Path
from typing import Any

from homkk.commands.base import BaseCommand
from homkk.linear.ext import ext_group, hom_group
from homkk.linear.matrix import smith_normal_form
from homkk.serialization import ExtModel, GroupModel, MapModel, SnfInput, invariants

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "LINEAR CMD"})


class SnfCommand(BaseCommand):
    verb = "snf"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        matrix = self.load(paths[0], SnfInput).to_domain()
        smith = smith_normal_form(matrix)
        return {
            "shape": [matrix.nrows, matrix.ncols],
            "U": smith.U.to_lists(),
            "D": smith.D.to_lists(),
            "V": smith.V.to_lists(),
            "diagonal": list(smith.diagonal),
            "rank": smith.rank,
        }

    def summarize(self, result: dict[str, Any]) -> list[str]:
        rows, cols = result["shape"]
        return [f"{rows}x{cols} matrix of rank {result['rank']}", f"invariant factors: {result['diagonal']}"]


class _PairCommand(BaseCommand):
    min_inputs = 2
    max_inputs = 2

    def load_pair(self, paths: list[Path]) -> tuple:
        return (
            self.load(paths[0], GroupModel).to_domain("source"),
            self.load(paths[1], GroupModel).to_domain("target"),
        )


class HomCommand(_PairCommand):
    verb = "hom"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        source, target = self.load_pair(paths)
        hom = hom_group(source, target)
        return {
            "source": invariants(source),
            "target": invariants(target),
            "hom": invariants(hom.group),
            "generators": {
                name: [MapModel.from_domain(g).model_dump(mode="json") for g in hom.generators(degree)]
                for degree, name in ((0, "even"), (1, "odd"))
            },
        }


class ExtCommand(_PairCommand):
    verb = "ext"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        source, target = self.load_pair(paths)
        ext = ext_group(source, target)
        return {
            "source": invariants(source),
            "target": invariants(target),
            "ext": invariants(ext.group),
            "generators": {
                name: [ExtModel.from_domain(e).model_dump(mode="json") for e in ext.generators(degree)]
                for degree, name in ((0, "even"), (1, "odd"))
            },
        }
