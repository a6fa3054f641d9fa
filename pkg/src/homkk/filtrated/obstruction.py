"""Obstruction classes from filtrated K-theory and the ``n = 2`` extension bridge."""

import logging
from dataclasses import dataclass

from homkk.diagrams.diagram import Diagram
from homkk.diagrams.obstruction import Ext2Diagram, ext2_diagram
from homkk.diagrams.spaces import Edge, linear_space
from homkk.errors import InputValidationError, NotExactError, ResolutionError
from homkk.filtrated.module import NTModule, require_exact, tau_apply
from homkk.filtrated.patterns import shift_source
from homkk.filtrated.resolution import NTResolution, build_resolution, verify_resolution
from homkk.filtrated.ring import Interval, intervals, tau_compose
from homkk.linear.ext import ExtElement, ExtGroup, ext_group, extension_class, pull_ext, push_ext, transport_ext
from homkk.linear.groups import (
    GradedGroup,
    GradedMap,
    GroupElement,
    block_map,
    cokernel_of,
    is_isomorphism,
    kernel_of,
    lift_through,
)
from homkk.linear.matrix import IntMatrix

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "NT OBSTRUCT"})


def restriction_diagram(module: NTModule) -> Diagram:
    """``e ↦ M[e,n]`` on ``1 <- 2 <- ... <- n`` with the maps ``i: M[e+1,n] -> M[e,n]``."""
    n = module.n
    space = linear_space(n)
    groups = {str(e): module.slot(Interval(e, n)) for e in range(1, n + 1)}
    edge_maps = {(str(e + 1), str(e)): module.i(Interval(e + 1, n)) for e in range(1, n)}
    return Diagram(space, groups, edge_maps)


@dataclass(frozen=True)
class FiltratedObstruction:
    """Cocycles ``δ_e`` on the resolution of ``M[e+1,n]``, their Ext classes and the total class."""

    cocycles: dict[int, GradedMap]
    family: dict[Edge, ExtElement]
    ext2: Ext2Diagram
    element: GroupElement


def _cocycle(module: NTModule, resolution: NTResolution, e: int) -> GradedMap:
    """``δ_e`` on ``FK(P1)[e+1,n]``; only the summands ``[e,b]`` with ``b < n`` contribute."""
    n = module.n
    slot = Interval(e + 1, n)
    target = module.slot(Interval(e, n))
    pattern1 = resolution.pattern1
    parts = pattern1.part_groups(slot)
    blocks = {}
    for k, (source, _) in enumerate(pattern1.parts(slot)):
        a, b = source.a, source.b
        if a != e or b >= n or parts[k].is_trivial:
            continue
        total = GradedMap.zero(resolution.q1[source], target)
        for cd in intervals(n):
            if not tau_compose(n, cd, Interval(a, n), source):
                continue
            term = tau_apply(module, cd, Interval(e, n)).compose(resolution.f[cd]).compose(resolution.phi[(source, cd)])
            total = total + term
        blocks[(0, k)] = shift_source(total)
    return block_map(parts, [target], blocks, 1)


def obstruction_filtrated(module: NTModule, resolution: NTResolution) -> FiltratedObstruction:
    """Lift of the obstruction class to ``∏_e Ext(ΣM[e+1,n], M[e,n])`` and its class in Ext².

    Raises
    ------
    ResolutionError
        If ``resolution`` does not verify against ``module``

    """
    report = verify_resolution(module, resolution)
    if not report.ok:
        logger.warning("Refusing obstruction for an invalid resolution: %s at %s.", report.failure, report.location)
        msg = f"resolution is invalid: {report.failure} at {report.location}"
        raise ResolutionError(msg)
    n = module.n
    cocycles: dict[int, GradedMap] = {}
    family: dict[Edge, ExtElement] = {}
    for e in range(1, n):
        cocycles[e] = _cocycle(module, resolution, e)
        family[(str(e + 1), str(e))] = transport_ext(resolution.slot_resolution(Interval(e + 1, n)), cocycles[e])
    ext2 = ext2_diagram(restriction_diagram(module), restriction_diagram(module), 1)
    element = ext2.encode(family)
    logger.debug("Filtrated obstruction has normal form %s.", element.normal_form())
    return FiltratedObstruction(cocycles, family, ext2, element)


@dataclass(frozen=True)
class CokernelIso:
    """``Ext²(ΣG, G)`` of the two-vertex diagram ``K(I) -i_*-> K(A)`` against ``Ext(Σ ker i_*, coker i_*)``."""

    ext2: Ext2Diagram
    target: ExtGroup
    kernel_inclusion: GradedMap
    cokernel_projection: GradedMap
    forward: GradedMap

    def apply(self, e: ExtElement) -> ExtElement:
        """``t ↦ proj ∘ t ∘ incl`` on representatives in ``Ext(ΣK(I), K(A))``."""
        return _restrict_class(e, self.kernel_inclusion, self.cokernel_projection)


def _restrict_class(e: ExtElement, inclusion: GradedMap, projection: GradedMap) -> ExtElement:
    return push_ext(pull_ext(e, inclusion), projection)


def cokernel_iso_n2(i_star: GradedMap) -> CokernelIso:
    """Build and verify the isomorphism from the cokernel onto ``Ext(Σ ker i_*, coker i_*)``.

    Raises
    ------
    NotExactError
        If the induced map is not an isomorphism

    """
    if i_star.degree != 0:
        msg = "i_* must have degree 0"
        raise InputValidationError(msg)
    diagram = Diagram(linear_space(2), {"2": i_star.source, "1": i_star.target}, {("2", "1"): i_star})
    ext2 = ext2_diagram(diagram, diagram, 1)
    _, inclusion = kernel_of(i_star)
    _, projection = cokernel_of(i_star)
    target = ext_group(inclusion.source, projection.target)
    columns = [target.encode(_restrict_class(t, inclusion, projection)) for t in ext2.edge_ext[("2", "1")].generators(1)]
    matrix = IntMatrix.from_columns(columns, target.group.odd.gens)
    forward = GradedMap(ext2.group, GradedGroup.concentrated(target.group.odd), 0, (matrix, IntMatrix.zeros(0, 0)))
    if not forward.is_relation_compatible() or not is_isomorphism(forward):
        logger.error("Cokernel comparison map is not an isomorphism for i_* with source %s.", i_star.source.invariant_factors())
        msg = "cokernel comparison map is not an isomorphism"
        raise NotExactError(msg)
    return CokernelIso(ext2, target, inclusion, projection, forward)


@dataclass(frozen=True)
class BridgeReport:
    """Both computations of the ``n = 2`` obstruction in ``Ext(Σ ker i_*, coker i_*)``."""

    via_resolution: ExtElement
    via_six_term: ExtElement
    agree: bool
    sign_flip: bool
    target: ExtGroup


def extension_bridge_n2(module: NTModule) -> BridgeReport:
    """Compare the filtrated obstruction with minus the six-term extension class.

    The six-term extension is ``coker i_* >-> M[1,1] ->> Σ ker i_*`` with the
    injection induced by ``r`` and the surjection by ``δ``.

    Raises
    ------
    InputValidationError
        If ``n != 2``
    NotExactError
        If the module is not exact

    """
    if module.n != 2:
        msg = f"the extension bridge needs n=2, got n={module.n}"
        raise InputValidationError(msg)
    require_exact(module)
    iso = cokernel_iso_n2(module.i(Interval(2, 2)))

    resolution = build_resolution(module)
    obstruction = obstruction_filtrated(module, resolution)
    via_resolution = iso.apply(obstruction.family[("2", "1")])

    iota = GradedMap(iso.cokernel_projection.target, module.slot(Interval(1, 1)), 0, module.r(Interval(1, 2)).components)
    pi = lift_through(iso.kernel_inclusion, module.delta(Interval(1, 1)))
    if pi is None:
        msg = "δ does not land in ker i_*"
        raise NotExactError(msg)
    via_six_term = -extension_class(iota, pi)

    agree = via_resolution.equals(via_six_term)
    sign_flip = not agree and via_resolution.equals(-via_six_term)
    if sign_flip:
        logger.warning("Bridge classes agree only up to sign.")
    elif not agree:
        logger.error("Bridge classes disagree.")
    return BridgeReport(via_resolution, via_six_term, agree, sign_flip, iso.target)
