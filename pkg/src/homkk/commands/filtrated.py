"""Verbs on NT-modules; resolution, obstruction and bridge also run on generated modules."""

import logging
import random
from dataclasses import asdict
from pathlib import Path
from typing import Any, ClassVar

from homkk.commands.base import BaseCommand
from homkk.constants.json_profile_config import CorpusFields, TopKey
from homkk.filtrated.module import NTModule, check_exact, nt_validate
from homkk.filtrated.obstruction import extension_bridge_n2, obstruction_filtrated
from homkk.filtrated.patterns import random_exact_module
from homkk.filtrated.resolution import build_resolution, verify_resolution
from homkk.serialization import ExtModel, MapModel, NTModuleModel, describe_element, edge_key, invariants

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "NT CMD"})


class NTValidateCommand(BaseCommand):
    verb = "nt-validate"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        module = self.load(paths[0], NTModuleModel).to_domain()
        report = nt_validate(module)
        return {"ok": report.ok, "relation": report.relation, "location": report.location}


class NTExactCommand(BaseCommand):
    verb = "nt-exact"

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        module = self.load(paths[0], NTModuleModel).to_domain()
        validity = nt_validate(module)
        if not validity.ok:
            return {"ok": False, "relation": validity.relation, "location": validity.location}
        report = check_exact(module)
        return {
            "ok": report.ok,
            "location": None if report.location is None else list(report.location),
            "position": report.position,
            "homology": None if report.homology is None else {k: list(v) for k, v in report.homology.items()},
        }


class _GeneratingCommand(BaseCommand):
    """Runs on one input module or on ``--generate COUNT`` seeded exact modules."""

    supports_generate = True
    fixed_n: ClassVar[int | None] = None

    def compute(self, module: NTModule) -> dict[str, Any]:
        raise NotImplementedError

    def generated_sizes(self, count: int) -> list[int]:
        """``n`` for each generated module, cycling through ``2..bound``."""
        if self.fixed_n is not None:
            return [self.fixed_n] * count
        bound = self.options.max_n or self.profile[TopKey.CORPUS.value][CorpusFields.NT_MAX_N.value]
        span = max(bound - 1, 1)
        return [2 + k % span for k in range(count)]

    def execute(self, paths: list[Path]) -> dict[str, Any]:
        if self.options.generate is None:
            return self.compute(self.load(paths[0], NTModuleModel).to_domain())
        rng = random.Random(self.options.seed)
        modules = []
        for k, n in enumerate(self.generated_sizes(self.options.generate)):
            generated = random_exact_module(n, rng)
            logger.debug("Generated module %s with n=%s.", k, n)
            entry = {"module": NTModuleModel.from_domain(generated.module).model_dump(mode="json")}
            entry.update(self.compute(generated.module))
            modules.append(entry)
        return {"modules": modules}


def _interval_map(maps: dict) -> dict[str, Any]:
    return {key.label: MapModel.from_domain(m).model_dump(mode="json") for key, m in sorted(maps.items())}


class NTResolveCommand(_GeneratingCommand):
    verb = "nt-resolve"

    def compute(self, module: NTModule) -> dict[str, Any]:
        resolution = build_resolution(module)
        report = verify_resolution(module, resolution)
        return {
            "q0": {key.label: invariants(g) for key, g in sorted(resolution.q0.items())},
            "q1": {key.label: invariants(g) for key, g in sorted(resolution.q1.items())},
            "f": _interval_map(dict(resolution.f)),
            "phi": {
                f"{j.label}->{i.label}": MapModel.from_domain(m).model_dump(mode="json")
                for (j, i), m in sorted(resolution.phi.items())
                if not m.is_zero()
            },
            "provenance": [asdict(record) for record in resolution.provenance],
            "verified": report.ok,
        }


class NTObstructCommand(_GeneratingCommand):
    verb = "nt-obstruct"

    def compute(self, module: NTModule) -> dict[str, Any]:
        obstruction = obstruction_filtrated(module, build_resolution(module))
        return {
            "family": {edge_key(e): ExtModel.from_domain(t).model_dump(mode="json") for e, t in sorted(obstruction.family.items())},
            "ext2": list(obstruction.ext2.group.even.invariant_factors),
            "obstruction": describe_element(obstruction.element),
        }


class NTBridgeCommand(_GeneratingCommand):
    verb = "nt-bridge"
    fixed_n = 2

    def compute(self, module: NTModule) -> dict[str, Any]:
        report = extension_bridge_n2(module)
        element = report.target.element(report.via_six_term)
        return {
            "target": invariants(report.target.group),
            "via_resolution": ExtModel.from_domain(report.via_resolution).model_dump(mode="json"),
            "via_six_term": ExtModel.from_domain(report.via_six_term).model_dump(mode="json"),
            "class": describe_element(element),
            "agree": report.agree,
            "sign_flip": report.sign_flip,
        }

    def summarize(self, result: dict[str, Any]) -> list[str]:
        entries = result.get("modules", [result])
        lines = []
        for k, entry in enumerate(entries):
            state = "zero" if entry["class"]["zero"] else f"nonzero {entry['class']['normal_form']} in {entry['class']['factors']}"
            flag = " (up to sign)" if entry["sign_flip"] else ""
            lines.append(f"module {k}: agree={entry['agree']}{flag}, class {state}")
        return lines
