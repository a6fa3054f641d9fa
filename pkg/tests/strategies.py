"""Hypothesis strategies and seeded factories shared by the test modules.

Strategies feed property tests; the ``random_*`` factories draw corpus instances
from a :class:`random.Random` seeded by the active profile.
"""

import random
from collections.abc import Sequence

from hypothesis import strategies as st

from homkk.diagrams.diagram import Diagram
from homkk.diagrams.obstruction import XObject
from homkk.diagrams.spaces import UniquePathSpace
from homkk.linear.ext import ExtElement, ext_group, hom_group
from homkk.linear.groups import GradedGroup, GradedMap, inverse_map
from homkk.linear.matrix import IntMatrix

SMALL_FACTORS = (0, 2, 3, 4, 6)
TORSION_FACTORS = (2, 3, 4)


@st.composite
def int_matrices(draw: st.DrawFn, max_dim: int = 6, bound: int = 9) -> IntMatrix:
    """Nonempty integer matrices with small entries."""
    nrows = draw(st.integers(min_value=1, max_value=max_dim))
    ncols = draw(st.integers(min_value=1, max_value=max_dim))
    rows = draw(
        st.lists(
            st.lists(st.integers(min_value=-bound, max_value=bound), min_size=ncols, max_size=ncols),
            min_size=nrows,
            max_size=nrows,
        ),
    )
    return IntMatrix.from_rows(rows)


cyclic_factors = st.lists(st.sampled_from(SMALL_FACTORS), max_size=3)
torsion_factors = st.lists(st.sampled_from(TORSION_FACTORS), min_size=1, max_size=2)


def even_map(source: GradedGroup, target: GradedGroup, rows: Sequence[Sequence[int]]) -> GradedMap:
    """Degree-0 map given by its even component; the odd component is zero."""
    even = IntMatrix.from_rows(rows, source.even.gens)
    return GradedMap(source, target, 0, (even, IntMatrix.zeros(target.odd.gens, source.odd.gens)))


def cyclic(order: int) -> GradedGroup:
    """``Z/order`` in even degree; ``0`` gives ``Z``."""
    return GradedGroup.from_invariants(even=(order,))


def random_group(rng: random.Random, factors: Sequence[int] = (0, 2, 3, 4), max_factors: int = 2) -> GradedGroup:
    return GradedGroup.from_invariants(
        even=[rng.choice(factors) for _ in range(rng.randint(0, max_factors))],
        odd=[rng.choice(factors) for _ in range(rng.randint(0, max_factors))],
    )


def random_hom(rng: random.Random, source: GradedGroup, target: GradedGroup, degree: int = 0) -> GradedMap:
    """A relation-compatible map drawn through the Hom group's coordinates."""
    hom = hom_group(source, target)
    return hom.decode(degree, tuple(rng.randint(-2, 2) for _ in range(hom.group.gens(degree))))


def random_ext(rng: random.Random, source: GradedGroup, target: GradedGroup, degree: int = 1) -> ExtElement:
    ext = ext_group(source, target)
    return ext.decode(degree, tuple(rng.randint(-2, 2) for _ in range(ext.group.gens(degree))))


def random_automorphism(rng: random.Random, group: GradedGroup, attempts: int = 20) -> GradedMap:
    """A random invertible degree-0 endomorphism; the identity when no draw is invertible."""
    for _ in range(attempts):
        candidate = random_hom(rng, group, group)
        if inverse_map(candidate) is not None:
            return candidate
    return GradedMap.identity(group)


def random_space(rng: random.Random, max_vertices: int) -> UniquePathSpace:
    """A forest in which every vertex has at most one outgoing edge, so paths are unique."""
    count = rng.randint(1, max_vertices)
    vertices = [f"v{k}" for k in range(count)]
    edges = []
    for k in range(1, count):
        if rng.random() < 0.75:
            edges.append((vertices[k], vertices[rng.randrange(k)]))
    return UniquePathSpace.build(vertices, edges)


def random_diagram(rng: random.Random, space: UniquePathSpace, factors: Sequence[int] = (0, 2, 3, 4)) -> Diagram:
    groups = {x: random_group(rng, factors) for x in space.vertices}
    edge_maps = {(x, y): random_hom(rng, groups[x], groups[y]) for x, y in space.edges}
    return Diagram(space, groups, edge_maps)


def random_xobject(rng: random.Random, diagram: Diagram) -> XObject:
    odd = {(x, y): random_ext(rng, diagram.group(x), diagram.group(y)) for x, y in diagram.space.edges}
    return XObject(diagram, odd)
