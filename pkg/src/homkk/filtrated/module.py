"""Modules over the NT ring: validation, τ evaluation, exactness and semisimple quotients."""

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from functools import reduce

from homkk.config.dotenv_config import get_env_settings
from homkk.errors import CompositionError, InputValidationError, NotExactError
from homkk.filtrated.ring import (
    Interval,
    TauKind,
    delta_sources,
    delta_target,
    i_sources,
    i_target,
    intervals,
    r_sources,
    r_target,
    tau,
)
from homkk.linear.groups import GradedGroup, GradedMap, homology, quotient_by_images

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "NT MODULE"})


@dataclass(frozen=True)
class NTModule:
    """Groups ``M[a,b]`` with generator maps keyed by their source interval.

    ``gen_i[[a+1,b]]: M[a+1,b] -> M[a,b]``, ``gen_r[[a,b+1]]: M[a,b+1] -> M[a,b]`` and
    the odd ``gen_delta[[1,a-1]]: M[1,a-1] -> M[a,n]``. Missing entries are zero maps.
    """

    n: int
    slots: Mapping[Interval, GradedGroup]
    gen_i: Mapping[Interval, GradedMap] = field(default_factory=dict)
    gen_r: Mapping[Interval, GradedMap] = field(default_factory=dict)
    gen_delta: Mapping[Interval, GradedMap] = field(default_factory=dict)

    @classmethod
    def zero(cls, n: int) -> "NTModule":
        return cls(n, {interval: GradedGroup.zero() for interval in intervals(n)})

    def slot(self, interval: Interval) -> GradedGroup:
        if interval.is_empty or interval.b > self.n:
            return GradedGroup.zero()
        try:
            return self.slots[interval]
        except KeyError as err:
            msg = f"module has no slot {interval.label}"
            raise InputValidationError(msg) from err

    def i(self, src: Interval) -> GradedMap:
        return self.gen_i.get(src) or GradedMap.zero(self.slot(src), self.slot(i_target(src)))

    def r(self, src: Interval) -> GradedMap:
        return self.gen_r.get(src) or GradedMap.zero(self.slot(src), self.slot(r_target(src)))

    def delta(self, src: Interval) -> GradedMap:
        return self.gen_delta.get(src) or GradedMap.zero(self.slot(src), self.slot(delta_target(src, self.n)), 1)

    def generators(self) -> list[tuple[str, Interval, GradedMap]]:
        """Every generator as ``(name, source, map)`` in a fixed order."""
        result = [("i", src, self.i(src)) for src in i_sources(self.n)]
        result += [("r", src, self.r(src)) for src in r_sources(self.n)]
        result += [("delta", src, self.delta(src)) for src in delta_sources(self.n)]
        return result

    def validate_structure(self, max_n: int | None = None) -> None:
        """Check the slot labels and the shape of every generator.

        Raises
        ------
        InputValidationError
            If ``n`` is out of range, a slot is missing or a generator has the wrong shape

        """
        bound = get_env_settings().max_n if max_n is None else max_n
        if not 1 <= self.n <= bound:
            msg = f"n={self.n} is outside 1..{bound}"
            raise InputValidationError(msg)
        expected = set(intervals(self.n))
        if set(self.slots) != expected:
            missing = sorted(expected - set(self.slots))
            extra = sorted(set(self.slots) - expected)
            msg = f"slots do not match the intervals of n={self.n}: missing {[str(m) for m in missing]}, unexpected {[str(e) for e in extra]}"
            raise InputValidationError(msg)
        checks = (
            ("i", self.gen_i, set(i_sources(self.n)), i_target, 0),
            ("r", self.gen_r, set(r_sources(self.n)), r_target, 0),
            ("delta", self.gen_delta, set(delta_sources(self.n)), lambda s: delta_target(s, self.n), 1),
        )
        for name, maps, sources, target, degree in checks:
            for src, m in maps.items():
                if src not in sources:
                    msg = f"{name} has no generator with source {src.label}"
                    raise InputValidationError(msg)
                if m.source != self.slot(src) or m.target != self.slot(target(src)) or m.degree != degree:
                    msg = f"{name} at {src.label} must map M{src.label} to M{target(src).label} in degree {degree}"
                    raise CompositionError(msg)


@dataclass(frozen=True)
class NTReport:
    """Outcome of :func:`nt_validate`."""

    ok: bool
    relation: str | None = None
    location: str | None = None

    @classmethod
    def failure(cls, relation: str, location: str) -> "NTReport":
        logger.info("NT-module violates %s at %s.", relation, location)
        return cls(ok=False, relation=relation, location=location)


def _compose_path(*maps: GradedMap) -> GradedMap:
    """``maps[-1] ∘ ... ∘ maps[0]``."""
    return reduce(lambda acc, m: m.compose(acc), maps[1:], maps[0])


def nt_validate(module: NTModule, max_n: int | None = None) -> NTReport:
    """Check relation compatibility of every generator and the relations among ``i``, ``r``, ``δ``.

    (R1) ``r ∘ i = i ∘ r`` on every ``M[a+1,b+1] -> M[a,b]``, with ``M[a+1,a] = 0``.
    (R2) ``i ∘ δ_{[1,b]} = δ_{[1,b-1]} ∘ r`` on ``M[1,b] -> M[b,n]`` for ``b < n``,
    where ``b = 1`` reads ``i ∘ δ_{[1,1]} = 0``.
    (R3) ``δ ∘ r = 0`` on ``M[1,n] -> M[n,n]``.
    """
    module.validate_structure(max_n)
    for name, src, m in module.generators():
        if not m.is_relation_compatible():
            return NTReport.failure("relation-compatibility", f"{name} at {src.label}")

    n = module.n
    for a in range(1, n):
        for b in range(a, n):
            corner = Interval(a + 1, b + 1)
            via_i = _compose_path(module.i(corner), module.r(Interval(a, b + 1)))
            if a + 1 <= b:
                via_r = _compose_path(module.r(corner), module.i(Interval(a + 1, b)))
                if not via_i.equals(via_r):
                    return NTReport.failure("R1", f"M{corner.label} -> M[{a},{b}]")
            elif not via_i.is_zero():
                return NTReport.failure("R1", f"M{corner.label} -> M[{a},{b}]")

    for b in range(1, n):
        top = Interval(1, b)
        left = _compose_path(module.delta(top), module.i(Interval(b + 1, n)))
        if b == 1:
            if not left.is_zero():
                return NTReport.failure("R2", f"M{top.label} -> M[1,{n}]")
            continue
        right = _compose_path(module.r(top), module.delta(Interval(1, b - 1)))
        if not left.equals(right):
            return NTReport.failure("R2", f"M{top.label} -> M[{b},{n}]")

    if n >= 2 and not _compose_path(module.r(Interval(1, n)), module.delta(Interval(1, n - 1))).is_zero():
        return NTReport.failure("R3", f"M[1,{n}] -> M[{n},{n}]")
    return NTReport(ok=True)


def _i_chain(module: NTModule, start: Interval, stop_a: int) -> list[GradedMap]:
    return [module.i(Interval(k, start.b)) for k in range(start.a, stop_a, -1)]


def _r_chain(module: NTModule, start: Interval, stop_b: int) -> list[GradedMap]:
    return [module.r(Interval(start.a, m)) for m in range(start.b, stop_b, -1)]


def tau_apply(module: NTModule, src: Interval, dst: Interval) -> GradedMap:
    """Evaluate ``τ_{src}^{dst}`` along the canonical path.

    Even: ``i`` down to ``[c,b]``, then ``r`` down to ``[c,d]``. Odd: ``i`` down to
    ``[1,b]``, ``δ`` to ``[b+1,n]``, ``i`` down to ``[c,n]``, then ``r`` down to ``[c,d]``.

    Raises
    ------
    CompositionError
        If ``τ_{src}^{dst}`` is zero

    """
    kind = tau(module.n, src, dst)
    maps: list[GradedMap] = [GradedMap.identity(module.slot(src))]
    if kind is TauKind.EVEN:
        maps += _i_chain(module, src, dst.a)
        maps += _r_chain(module, Interval(dst.a, src.b), dst.b)
    elif kind is TauKind.ODD:
        maps += _i_chain(module, src, 1)
        maps.append(module.delta(Interval(1, src.b)))
        maps += _i_chain(module, Interval(src.b + 1, module.n), dst.a)
        maps += _r_chain(module, Interval(dst.a, module.n), dst.b)
    else:
        msg = f"no natural transformation from {src.label} to {dst.label}"
        raise CompositionError(msg)
    return _compose_path(*maps)


@dataclass(frozen=True)
class ExactnessReport:
    """Outcome of :func:`check_exact`; on failure names ``(a, b, c)`` and the node."""

    ok: bool
    location: tuple[int, int, int] | None = None
    position: str | None = None
    homology: dict[str, tuple[int, ...]] | None = None


def six_term_maps(module: NTModule, a: int, b: int, c: int) -> tuple[GradedMap, GradedMap, GradedMap]:
    """``M[b,c] -i-> M[a,c] -r-> M[a,b-1] -δ-> M[b,c]`` for ``a < b <= c``."""
    return (
        tau_apply(module, Interval(b, c), Interval(a, c)),
        tau_apply(module, Interval(a, c), Interval(a, b - 1)),
        tau_apply(module, Interval(a, b - 1), Interval(b, c)),
    )


def check_exact(module: NTModule) -> ExactnessReport:
    """Homology of every six-term sequence ``M[b,c] -> M[a,c] -> M[a,b-1] -> M[b,c]``."""
    n = module.n
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            for c in range(b, n + 1):
                i_map, r_map, d_map = six_term_maps(module, a, b, c)
                nodes = (
                    (f"M[{a},{c}]", i_map, r_map),
                    (f"M[{a},{b - 1}]", r_map, d_map),
                    (f"M[{b},{c}]", d_map, i_map),
                )
                for position, incoming, outgoing in nodes:
                    try:
                        group = homology(incoming, outgoing)
                    except NotExactError:
                        logger.info("Six-term sequence (%s,%s,%s) is not a complex at %s.", a, b, c, position)
                        return ExactnessReport(ok=False, location=(a, b, c), position=position)
                    if not group.is_trivial:
                        logger.info("Six-term sequence (%s,%s,%s) has homology at %s.", a, b, c, position)
                        return ExactnessReport(ok=False, location=(a, b, c), position=position, homology=group.invariant_factors())
    return ExactnessReport(ok=True)


def require_exact(module: NTModule) -> None:
    """Raise :class:`NotExactError` unless the module validates and is exact."""
    report = nt_validate(module)
    if not report.ok:
        msg = f"NT-module violates {report.relation} at {report.location}"
        raise NotExactError(msg)
    exactness = check_exact(module)
    if not exactness.ok:
        logger.warning("Module is not exact at %s of %s.", exactness.position, exactness.location)
        msg = f"NT-module is not exact: six-term sequence {exactness.location} fails at {exactness.position}"
        raise NotExactError(msg)


def ss_quotient(module: NTModule, interval: Interval) -> tuple[GradedGroup, GradedMap]:
    """``M[a,b]_ss``: ``M[a,b]`` modulo the images of all proper natural transformations.

    For ``b < n`` these are generated by ``i`` and ``r`` into ``[a,b]``, for ``b = n``
    by ``i`` and ``δ``.
    """
    interval.check(module.n)
    a, b, n = interval.a, interval.b, module.n
    images = []
    if a < b:
        images.append(module.i(Interval(a + 1, b)))
    if b < n:
        images.append(module.r(Interval(a, b + 1)))
    elif a >= 2:
        images.append(module.delta(Interval(1, a - 1)))
    return quotient_by_images(module.slot(interval), images)
