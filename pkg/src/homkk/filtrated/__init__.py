"""Filtrated K-theory over ``1 <- 2 <- ... <- n``: NT-modules, resolutions and obstructions."""

from homkk.filtrated.module import ExactnessReport, NTModule, NTReport, check_exact, nt_validate, ss_quotient, tau_apply
from homkk.filtrated.obstruction import (
    BridgeReport,
    CokernelIso,
    FiltratedObstruction,
    cokernel_iso_n2,
    extension_bridge_n2,
    obstruction_filtrated,
    restriction_diagram,
)
from homkk.filtrated.patterns import GeneratedModule, ProjectivePattern, e1_module, faithful_pattern, random_exact_module
from homkk.filtrated.resolution import LiftRecord, NTResolution, ResolutionReport, build_resolution, verify_resolution
from homkk.filtrated.ring import Interval, TauKind, intervals, tau, tau_compose

__all__ = [
    "BridgeReport",
    "CokernelIso",
    "ExactnessReport",
    "FiltratedObstruction",
    "GeneratedModule",
    "Interval",
    "LiftRecord",
    "NTModule",
    "NTReport",
    "NTResolution",
    "ProjectivePattern",
    "ResolutionReport",
    "TauKind",
    "build_resolution",
    "check_exact",
    "cokernel_iso_n2",
    "e1_module",
    "extension_bridge_n2",
    "faithful_pattern",
    "intervals",
    "nt_validate",
    "obstruction_filtrated",
    "random_exact_module",
    "restriction_diagram",
    "ss_quotient",
    "tau",
    "tau_apply",
    "tau_compose",
    "verify_resolution",
]
