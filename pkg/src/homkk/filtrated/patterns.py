"""Projective NT-modules ``FK(P)`` built from free groups attached to intervals, and test modules.

``FK(Q)[J] = ⊕_{I -> J} Σ^{ε} Q[I]`` where ``ε`` is the parity of ``τ_I^J``; a
generator ``J -> J'`` is the identity on the summand ``I`` exactly when
``τ_{J}^{J'} ∘ τ_I^J`` is nonzero.
"""

import logging
import random
from collections.abc import Mapping
from dataclasses import dataclass
from functools import cached_property

from homkk.errors import CompositionError, GenerationError
from homkk.filtrated.module import NTModule, tau_apply
from homkk.filtrated.ring import Interval, TauKind, intervals, tau, tau_compose
from homkk.linear.groups import GradedGroup, GradedMap, block_map, is_injective, quotient_by_images
from homkk.linear.matrix import IntMatrix

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "NT PATTERN"})


def shift_source(f: GradedMap) -> GradedMap:
    """The map ``ΣS -> T`` of degree ``deg f + 1`` with the same matrices as ``f: S -> T``."""
    return GradedMap(f.source.suspend(), f.target, (f.degree + 1) % 2, (f.component(1), f.component(0)))


def shift_target(f: GradedMap) -> GradedMap:
    """The map ``S -> ΣT`` of degree ``deg f + 1`` with the same matrices as ``f: S -> T``.

    Suspension is an involution, so this is its own inverse.
    """
    return GradedMap(f.source, f.target.suspend(), (f.degree + 1) % 2, f.components)


@dataclass(frozen=True)
class ProjectivePattern:
    """``FK(P)`` for ``P = ⊕_I R_I ⊗ Q[I]`` with free graded groups ``Q[I]``."""

    n: int
    generators: Mapping[Interval, GradedGroup]

    def q(self, interval: Interval) -> GradedGroup:
        return self.generators.get(interval, GradedGroup.zero())

    def parts(self, slot: Interval) -> list[tuple[Interval, TauKind]]:
        """Summands of ``FK(Q)[slot]`` as ``(I, kind of τ_I^slot)`` in interval order."""
        result = []
        for source in intervals(self.n):
            kind = tau(self.n, source, slot)
            if kind is not TauKind.ZERO:
                result.append((source, kind))
        return result

    def part_groups(self, slot: Interval) -> list[GradedGroup]:
        return [self.q(i).suspend() if kind is TauKind.ODD else self.q(i) for i, kind in self.parts(slot)]

    def slot(self, slot: Interval) -> GradedGroup:
        return GradedGroup.direct_sum(*self.part_groups(slot))

    def index(self, slot: Interval, source: Interval) -> int:
        for k, (i, _) in enumerate(self.parts(slot)):
            if i == source:
                return k
        msg = f"{source.label} is not a summand of slot {slot.label}"
        raise CompositionError(msg)

    def _generator(self, src: Interval, dst: Interval, degree: int) -> GradedMap:
        src_parts, dst_parts = self.part_groups(src), self.part_groups(dst)
        blocks = {}
        for j, (source, _) in enumerate(self.parts(src)):
            if tau(self.n, source, dst) is TauKind.ZERO or not tau_compose(self.n, source, src, dst):
                continue
            part = src_parts[j]
            blocks[(self.index(dst, source), j)] = GradedMap(
                part,
                dst_parts[self.index(dst, source)],
                degree,
                (IntMatrix.identity(part.even.gens), IntMatrix.identity(part.odd.gens)),
            )
        return block_map(src_parts, dst_parts, blocks, degree)

    @cached_property
    def module(self) -> NTModule:
        n = self.n
        return NTModule(
            n,
            {j: self.slot(j) for j in intervals(n)},
            {src: self._generator(src, Interval(src.a - 1, src.b), 0) for src in intervals(n) if src.a >= 2},
            {src: self._generator(src, Interval(src.a, src.b - 1), 0) for src in intervals(n) if src.b > src.a},
            {Interval(1, m): self._generator(Interval(1, m), Interval(m + 1, n), 1) for m in range(1, n)},
        )

    def assemble_into(self, slot: Interval, components: Mapping[Interval, GradedMap], source: GradedGroup) -> GradedMap:
        """Degree-0 map ``source -> FK(Q)[slot]`` from maps ``source -> Q[I]`` of the parity of ``τ_I^slot``."""
        blocks = {}
        for k, (i, kind) in enumerate(self.parts(slot)):
            if i in components:
                blocks[(k, 0)] = shift_target(components[i]) if kind is TauKind.ODD else components[i]
        return block_map([source], self.part_groups(slot), blocks)

    def split_from(self, slot: Interval, f: GradedMap) -> dict[Interval, GradedMap]:
        """Inverse of :meth:`assemble_into` for a degree-0 map into ``FK(Q)[slot]``."""
        if f.degree != 0 or f.target != self.slot(slot):
            msg = f"map does not land in slot {slot.label} of the pattern"
            raise CompositionError(msg)
        pieces = {}
        offsets = [0, 0]
        for (i, kind), part in zip(self.parts(slot), self.part_groups(slot), strict=True):
            rows = [range(offsets[p], offsets[p] + part.gens(p)) for p in (0, 1)]
            block = GradedMap(f.source, part, 0, (f.component(0).select_rows(rows[0]), f.component(1).select_rows(rows[1])))
            pieces[i] = shift_target(block) if kind is TauKind.ODD else block
            offsets = [offsets[p] + part.gens(p) for p in (0, 1)]
        return pieces

    def extend(self, target: NTModule, values: Mapping[Interval, GradedMap]) -> dict[Interval, GradedMap]:
        """Module map ``FK(Q) -> target`` determined by degree-0 maps ``Q[I] -> target[I]``.

        On the summand ``I`` of slot ``J`` it is ``τ_I^J ∘ values[I]``.
        """
        result = {}
        for j in intervals(self.n):
            parts = self.part_groups(j)
            blocks = {}
            for k, (i, kind) in enumerate(self.parts(j)):
                if i not in values or parts[k].is_trivial:
                    continue
                composite = tau_apply(target, i, j).compose(values[i])
                blocks[(0, k)] = shift_source(composite) if kind is TauKind.ODD else composite
            result[j] = block_map(parts, [target.slot(j)], blocks)
        return result


def faithful_pattern(n: int) -> ProjectivePattern:
    """``Q[I] = Z`` (even) for every interval."""
    return ProjectivePattern(n, {i: GradedGroup.free(1, 0) for i in intervals(n)})


def e1_module() -> NTModule:
    """The exact ``n = 2`` module with ``i_* = 0``, ``M[1,1] = Z/4 ⊕ ΣZ/2`` and a nonsplit six-term extension."""
    top = GradedGroup.from_invariants(even=(2,), odd=(2,))
    ambient = GradedGroup.from_invariants(even=(2,))
    quotient = GradedGroup.from_invariants(even=(4,), odd=(2,))
    one = IntMatrix.from_rows([[1]])
    return NTModule(
        2,
        {Interval(2, 2): top, Interval(1, 2): ambient, Interval(1, 1): quotient},
        {Interval(2, 2): GradedMap.zero(top, ambient)},
        {Interval(1, 2): GradedMap(ambient, quotient, 0, (IntMatrix.from_rows([[2]]), IntMatrix.zeros(1, 0)))},
        {Interval(1, 1): GradedMap(quotient, top, 1, (one, one))},
    )


@dataclass(frozen=True)
class GeneratedModule:
    """An exact module ``coker(FK(φ): FK(P1) -> FK(P0))`` with the data it came from."""

    module: NTModule
    pattern0: ProjectivePattern
    pattern1: ProjectivePattern
    phi: Mapping[Interval, GradedMap]


def _random_ranks(rng: random.Random, weights: tuple[int, ...]) -> GradedGroup:
    return GradedGroup.free(rng.choice(weights), rng.choice(weights))


def random_exact_module(
    n: int,
    rng: random.Random,
    max_torsion: int = 32,
    attempts: int = 50,
) -> GeneratedModule:
    """Sample an exact module as the slotwise cokernel of a slotwise injective map of patterns.

    Draws are rejected until ``FK(φ)`` is injective in every slot and every slot's
    torsion subgroup has at most ``max_torsion`` elements.

    Raises
    ------
    GenerationError
        If no draw is accepted within ``attempts`` tries

    """
    for attempt in range(attempts):
        q0 = {i: _random_ranks(rng, (0, 0, 1)) for i in intervals(n)}
        q1 = {i: GradedGroup.free(rng.randint(0, g.even.gens), rng.randint(0, g.odd.gens)) for i, g in q0.items()}
        pattern0 = ProjectivePattern(n, q0)
        pattern1 = ProjectivePattern(n, q1)
        phi = {}
        for i in intervals(n):
            target = pattern0.slot(i)
            own = pattern0.index(i, i)
            own_offsets = [sum(g.gens(p) for g in pattern0.part_groups(i)[:own]) for p in (0, 1)]
            components = []
            for p in (0, 1):
                rows = [[rng.randint(-1, 1) for _ in range(q1[i].gens(p))] for _ in range(target.gens(p))]
                for k in range(q1[i].gens(p)):
                    rows[own_offsets[p] + k][k] = rng.choice((2, 3, -2))
                components.append(IntMatrix.from_rows(rows, q1[i].gens(p)) if rows else IntMatrix.zeros(0, q1[i].gens(p)))
            phi[i] = GradedMap(q1[i], target, 0, (components[0], components[1]))
        fk_phi = pattern1.extend(pattern0.module, phi)
        if not all(is_injective(m) for m in fk_phi.values()):
            logger.debug("Rejected draw %s: FK(phi) is not slotwise injective.", attempt)
            continue
        slots = {j: quotient_by_images(pattern0.slot(j), [fk_phi[j]])[0] for j in intervals(n)}
        torsion = [_torsion_order(g) for g in slots.values()]
        if max(torsion, default=1) > max_torsion:
            logger.debug("Rejected draw %s: torsion %s exceeds %s.", attempt, max(torsion), max_torsion)
            continue
        free = pattern0.module
        module = NTModule(
            n,
            slots,
            {s: GradedMap(slots[s], slots[Interval(s.a - 1, s.b)], 0, m.components) for s, m in free.gen_i.items()},
            {s: GradedMap(slots[s], slots[Interval(s.a, s.b - 1)], 0, m.components) for s, m in free.gen_r.items()},
            {s: GradedMap(slots[s], slots[Interval(s.b + 1, n)], 1, m.components) for s, m in free.gen_delta.items()},
        )
        return GeneratedModule(module, pattern0, pattern1, phi)
    logger.warning("Gave up sampling an exact module with n=%s after %s draws.", n, attempts)
    msg = f"no exact module with n={n} accepted after {attempts} draws (max_torsion={max_torsion})"
    raise GenerationError(msg)


def _torsion_order(group: GradedGroup) -> int:
    order = 1
    for p in (0, 1):
        for d in group.component(p).invariant_factors:
            order *= d or 1
    return order
