"""Length-1 projective resolutions of exact NT-modules.

The resolution is ``FK(P1) --FK(φ)--> FK(P0) --FK(f)--> M`` with ``Q0[J]`` covering
``M[J]_ss`` and ``Q1[J]`` defined as the semisimple quotient of ``N = ker FK(f)``.
Every chosen lift is recorded so that reports can show where each matrix came from.
"""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import cached_property

from homkk.errors import HomkkError, ResolutionError
from homkk.filtrated.module import NTModule, require_exact, ss_quotient
from homkk.filtrated.patterns import ProjectivePattern
from homkk.filtrated.ring import Interval, intervals
from homkk.linear.ext import FreeResolution
from homkk.linear.groups import (
    PARITIES,
    GradedGroup,
    GradedMap,
    homology,
    is_injective,
    is_surjective,
    kernel_of,
    lift_through,
)

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "NT RESOLVE"})


@dataclass(frozen=True)
class LiftRecord:
    """One generator chosen while resolving: which map, at which interval, and its lift."""

    stage: str
    interval: str
    parity: str
    index: int
    invariant_factor: int
    lift: tuple[int, ...]


@dataclass(frozen=True)
class NTResolution:
    """``Q0``, ``Q1``, ``f[J]: Q0[J] -> M[J]`` and ``φ[(J, I)]: Q1[J] -> Q0[I]`` for ``I -> J``.

    ``φ[(J, I)]`` has the parity of ``τ_I^J``.
    """

    module: NTModule
    q0: Mapping[Interval, GradedGroup]
    q1: Mapping[Interval, GradedGroup]
    f: Mapping[Interval, GradedMap]
    phi: Mapping[tuple[Interval, Interval], GradedMap]
    provenance: tuple[LiftRecord, ...] = field(default=())

    @cached_property
    def pattern0(self) -> ProjectivePattern:
        return ProjectivePattern(self.module.n, self.q0)

    @cached_property
    def pattern1(self) -> ProjectivePattern:
        return ProjectivePattern(self.module.n, self.q1)

    @cached_property
    def fk_f(self) -> dict[Interval, GradedMap]:
        """``FK(f)[J]: FK(P0)[J] -> M[J]``."""
        return self.pattern0.extend(self.module, self.f)

    @cached_property
    def fk_phi(self) -> dict[Interval, GradedMap]:
        """``FK(φ)[J]: FK(P1)[J] -> FK(P0)[J]``."""
        values = {
            j: self.pattern0.assemble_into(j, {i: m for (jj, i), m in self.phi.items() if jj == j}, self.pattern1.q(j))
            for j in intervals(self.module.n)
        }
        return self.pattern1.extend(self.pattern0.module, values)

    def slot_resolution(self, interval: Interval) -> FreeResolution:
        """The free resolution of ``M[J]`` obtained by evaluating at ``J``."""
        return FreeResolution(
            self.module.slot(interval),
            self.pattern1.slot(interval),
            self.pattern0.slot(interval),
            self.fk_phi[interval],
            self.fk_f[interval],
        )


def _cover(group: GradedGroup, stage: str, interval: Interval, records: list[LiftRecord]) -> tuple[GradedGroup, tuple]:
    """Free group on the minimal generators of ``group`` and the columns lifting them."""
    ranks = []
    columns = []
    for p in PARITIES:
        minimal = group.component(p).minimal
        ranks.append(len(minimal.factors))
        columns.append(minimal.from_min)
        for k, d in enumerate(minimal.factors):
            records.append(LiftRecord(stage, interval.label, p.name.lower(), k, d, minimal.from_min.column(k)))
    return GradedGroup.free(ranks[0], ranks[1]), (columns[0], columns[1])


def build_resolution(module: NTModule) -> NTResolution:
    """Construct a projective resolution of an exact module.

    Raises
    ------
    NotExactError
        If the module fails validation or exactness
    ResolutionError
        If ``FK(f)`` is not onto or the semisimple quotient of the kernel is not free

    """
    require_exact(module)
    n = module.n
    records: list[LiftRecord] = []

    q0: dict[Interval, GradedGroup] = {}
    f: dict[Interval, GradedMap] = {}
    for j in intervals(n):
        ss, _ = ss_quotient(module, j)
        q0[j], columns = _cover(ss, "f", j, records)
        f[j] = GradedMap(q0[j], module.slot(j), 0, columns)
    pattern0 = ProjectivePattern(n, q0)
    fk_f = pattern0.extend(module, f)
    for j, m in fk_f.items():
        if not is_surjective(m):
            logger.error("FK(f) is not onto at %s.", j)
            msg = f"FK(f) is not surjective at {j.label}"
            raise ResolutionError(msg)

    kernels = {j: kernel_of(m) for j, m in fk_f.items()}
    free = pattern0.module

    def restrict(g: GradedMap, src: Interval, dst: Interval) -> GradedMap:
        lifted = lift_through(kernels[dst][1], g.compose(kernels[src][1]))
        if lifted is None:
            msg = f"kernel of FK(f) is not closed under the generator {src.label} -> {dst.label}"
            raise ResolutionError(msg)
        return lifted

    kernel_module = NTModule(
        n,
        {j: kernels[j][0] for j in intervals(n)},
        {s: restrict(g, s, Interval(s.a - 1, s.b)) for s, g in free.gen_i.items()},
        {s: restrict(g, s, Interval(s.a, s.b - 1)) for s, g in free.gen_r.items()},
        {s: restrict(g, s, Interval(s.b + 1, n)) for s, g in free.gen_delta.items()},
    )

    q1: dict[Interval, GradedGroup] = {}
    phi: dict[tuple[Interval, Interval], GradedMap] = {}
    for j in intervals(n):
        ss, _ = ss_quotient(kernel_module, j)
        if not ss.is_free:
            logger.error("Semisimple quotient of the kernel at %s has torsion %s.", j, ss.invariant_factors())
            msg = f"semisimple quotient of ker FK(f) at {j.label} is not free: {ss.invariant_factors()}"
            raise ResolutionError(msg)
        q1[j], columns = _cover(ss, "phi", j, records)
        section = GradedMap(q1[j], kernels[j][0], 0, columns)
        for i, piece in pattern0.split_from(j, kernels[j][1].compose(section)).items():
            phi[(j, i)] = piece
    logger.info("Resolved an NT-module with n=%s using %s recorded lifts.", n, len(records))
    return NTResolution(module, q0, q1, f, phi, tuple(records))


@dataclass(frozen=True)
class ResolutionReport:
    """Outcome of :func:`verify_resolution`."""

    ok: bool
    failure: str | None = None
    location: str | None = None


def verify_resolution(module: NTModule, resolution: NTResolution) -> ResolutionReport:
    """Check freeness, ``FK(f) ∘ FK(φ) = 0`` and exactness of every evaluated resolution."""
    if resolution.module != module:
        return ResolutionReport(ok=False, failure="resolution belongs to a different module")
    for name, groups in (("Q0", resolution.q0), ("Q1", resolution.q1)):
        for j, g in groups.items():
            if not g.is_free:
                return ResolutionReport(ok=False, failure=f"{name} is not free", location=j.label)
    try:
        fk_f = resolution.fk_f
        fk_phi = resolution.fk_phi
    except HomkkError as err:
        logger.warning("Resolution data does not assemble.", exc_info=True)
        return ResolutionReport(ok=False, failure=f"resolution data does not assemble: {err}")

    for j in intervals(module.n):
        boundary, augmentation = fk_phi[j], fk_f[j]
        if not augmentation.compose(boundary).is_zero():
            return ResolutionReport(ok=False, failure="sum of tau f phi does not vanish", location=j.label)
        if not is_surjective(augmentation):
            return ResolutionReport(ok=False, failure="not exact at the right", location=j.label)
        if not homology(boundary, augmentation).is_trivial:
            return ResolutionReport(ok=False, failure="not exact in the middle", location=j.label)
        if not is_injective(boundary):
            return ResolutionReport(ok=False, failure="not exact at the left", location=j.label)
    return ResolutionReport(ok=True)
