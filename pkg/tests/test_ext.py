"""Test module for graded Hom and Ext groups.

This module contains test cases to verify:
- Canonical resolutions and the classical Hom/Ext formulas for cyclic groups
- Extension classes of short exact sequences, split and non-split
- Moving classes between the canonical and an arbitrary free resolution
- Functoriality of pushing and pulling Ext classes
"""

import logging
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from homkk.errors import NotExactError
from homkk.linear.ext import (
    FreeResolution,
    canonical_free_resolution,
    canonical_resolution,
    ext_group,
    extension_class,
    hom_group,
    pull_ext,
    push_ext,
    to_resolution,
    transport_ext,
)
from homkk.linear.groups import GradedGroup, GradedMap, Presentation
from homkk.linear.matrix import IntMatrix, hstack, vstack
from tests.strategies import (
    TORSION_FACTORS,
    cyclic,
    cyclic_factors,
    even_map,
    random_ext,
    random_group,
    random_hom,
)

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "TEST EXT"})

Z = GradedGroup.free(1, 0)
torsion_orders = st.sampled_from(TORSION_FACTORS)


def _factors(*orders: int) -> tuple[int, ...]:
    return Presentation.from_invariants(orders).invariant_factors


@pytest.mark.smoke
@pytest.mark.linear
@pytest.mark.positive
def test_canonical_resolution() -> None:
    """Test the canonical resolutions of Z/4 and Z."""
    resolution = canonical_resolution(cyclic(4))

    assert resolution.rank(0) == 1, f"Expected rank 1, got {resolution.rank(0)}"
    assert resolution.basis(0).column(0) in {(4,), (-4,)}, f"Unexpected basis {resolution.basis(0)}"
    assert canonical_resolution(Z).rank(0) == 0, "Z is free and needs no relators"
    logger.info("Successfully verified canonical resolutions")


@pytest.mark.linear
@pytest.mark.positive
@given(m=torsion_orders, n=torsion_orders)
def test_hom_and_ext_between_cyclic_groups(m: int, n: int) -> None:
    """Test Hom(Z/m, Z/n) = Ext(Z/m, Z/n) = Z/gcd(m, n).

    Args:
        m (int): Order of the source
        n (int): Order of the target

    Returns:
        None

    """
    expected = _factors(math.gcd(m, n))

    assert hom_group(cyclic(m), cyclic(n)).group.even.invariant_factors == expected, "Hom is not Z/gcd"
    assert ext_group(cyclic(m), cyclic(n)).group.even.invariant_factors == expected, "Ext is not Z/gcd"


@pytest.mark.linear
@pytest.mark.positive
@given(factors=cyclic_factors)
def test_hom_and_ext_out_of_z(factors: list[int]) -> None:
    """Test Hom(Z, H) = H and Ext(Z, H) = 0."""
    target = GradedGroup.from_invariants(even=factors)

    assert hom_group(Z, target).group.even.invariant_factors == _factors(*factors), "Hom(Z, H) is not H"
    assert ext_group(Z, target).group.is_trivial, "Ext(Z, H) is not trivial"


@pytest.mark.linear
@pytest.mark.positive
@given(m=torsion_orders)
def test_hom_and_ext_into_z(m: int) -> None:
    """Test Hom(Z/m, Z) = 0 and Ext(Z/m, Z) = Z/m."""
    assert hom_group(cyclic(m), Z).group.is_trivial, "Hom(Z/m, Z) is not trivial"
    assert ext_group(cyclic(m), Z).group.even.invariant_factors == (m,), "Ext(Z/m, Z) is not Z/m"


@pytest.mark.linear
@pytest.mark.positive
def test_graded_ext_pairs_parities() -> None:
    """Test that the odd degree of Ext pairs the even part of the source with the odd part of the target."""
    source = GradedGroup.from_invariants(even=(2,))
    target = GradedGroup.from_invariants(odd=(4,))
    ext = ext_group(source, target)

    assert ext.group.even.is_trivial, "Degree 0 should see no common parity"
    assert ext.group.odd.invariant_factors == (2,), f"Expected odd (2,), got {ext.group.odd.invariant_factors}"
    logger.info("Successfully verified the parity pairing of Ext")


@pytest.mark.linear
@pytest.mark.positive
def test_non_split_extension_has_nonzero_class() -> None:
    """Test that Z/2 -> Z/4 -> Z/2 has a nonzero class."""
    iota = even_map(cyclic(2), cyclic(4), [[2]])
    pi = even_map(cyclic(4), cyclic(2), [[1]])
    e = extension_class(iota, pi)

    assert e.degree == 0, f"Expected degree 0, got {e.degree}"
    assert not e.is_zero(), "Z/4 is a non-split extension of Z/2 by Z/2"
    logger.info("Successfully classified Z/2 -> Z/4 -> Z/2")


@pytest.mark.linear
@pytest.mark.positive
def test_split_extension_has_zero_class() -> None:
    """Test that Z/3 -> Z/3 ⊕ Z/5 -> Z/5 has the zero class."""
    middle = GradedGroup.from_invariants(even=(3, 5))
    iota = even_map(cyclic(3), middle, [[1], [0]])
    pi = even_map(middle, cyclic(5), [[0, 1]])

    assert extension_class(iota, pi).is_zero(), "A direct sum is a split extension"
    logger.info("Successfully classified a split extension")


@pytest.mark.linear
@pytest.mark.negative
def test_extension_class_rejects_non_exact_sequence() -> None:
    """Test that a zero inclusion is not a short exact sequence."""
    iota = even_map(cyclic(2), cyclic(4), [[0]])
    pi = even_map(cyclic(4), cyclic(2), [[1]])

    with pytest.raises(NotExactError, match="iota is not injective"):
        extension_class(iota, pi)
    logger.info("Successfully rejected a non-exact sequence")


def _resolution_of_z4() -> FreeResolution:
    """``Z^2 -> Z^2 -> Z/4`` with augmentation ``(1, 1)``."""
    group = cyclic(4)
    p = GradedGroup.free(2, 0)
    boundary = GradedMap(p, p, 0, (IntMatrix.from_rows([[1, 4], [-1, 0]]), IntMatrix.zeros(0, 0)))
    augmentation = GradedMap(p, group, 0, (IntMatrix.from_rows([[1, 1]]), IntMatrix.zeros(0, 0)))
    return FreeResolution(group, p, p, boundary, augmentation)


@pytest.mark.linear
@pytest.mark.positive
@pytest.mark.parametrize("use_canonical", [True, False])
def test_transport_between_resolutions(use_canonical: bool) -> None:
    """Test that classes survive a trip to another resolution of Z/4 and back.

    Args:
        use_canonical (bool): Whether to use the canonical resolution or a larger one

    Returns:
        None

    """
    resolution = canonical_free_resolution(cyclic(4)) if use_canonical else _resolution_of_z4()
    resolution.check()
    ext = ext_group(cyclic(4), cyclic(2))

    for e in ext.generators(0):
        back = transport_ext(resolution, to_resolution(e, resolution))
        assert back.equals(e), "Class changed on its way through the resolution"
        assert not back.is_zero(), "Generator became zero"
    logger.info("Successfully transported classes (canonical=%s)", use_canonical)


@pytest.mark.linear
@pytest.mark.negative
def test_transport_rejects_invalid_resolution() -> None:
    """Test that a zero boundary is not a resolution of Z/4."""
    valid = _resolution_of_z4()
    broken = FreeResolution(valid.group, valid.p1, valid.p0, GradedMap.zero(valid.p1, valid.p0), valid.augmentation)
    cocycle = GradedMap.zero(valid.p1, cyclic(2))

    with pytest.raises(NotExactError):
        transport_ext(broken, cocycle)
    logger.info("Successfully rejected an invalid resolution")


@pytest.mark.linear
@pytest.mark.acceptance
def test_pull_and_push_are_functorial(rng, corpus: dict) -> None:
    """Test pull(e, g h) = pull(pull(e, g), h) and additivity of push on random groups.

    Args:
        rng (random.Random): Seeded random source
        corpus (dict): Corpus sizes of the active profile

    Returns:
        None

    """
    for _ in range(corpus["hom_ext_pairs"]):
        g_group, h_group, x_group, y_group = (random_group(rng) for _ in range(4))
        e1 = random_ext(rng, g_group, h_group)
        e2 = random_ext(rng, g_group, h_group)
        g = random_hom(rng, x_group, g_group)
        h = random_hom(rng, y_group, x_group)
        k = random_hom(rng, h_group, x_group)

        assert pull_ext(e1, g.compose(h)).equals(pull_ext(pull_ext(e1, g), h)), "Pullback is not functorial"
        assert push_ext(e1 + e2, k).equals(push_ext(e1, k) + push_ext(e2, k)), "Pushforward is not additive"
    logger.info("Successfully checked %s random Hom/Ext pairs", corpus["hom_ext_pairs"])


@pytest.mark.linear
@pytest.mark.acceptance
def test_extension_class_matches_section_search(rng, corpus: dict) -> None:
    """Test extension classes of pushout extensions against a brute-force section search.

    For a class ``e`` in ``Ext(C, A)`` the group ``E = (A ⊕ Z^gens) / [rels_A 0; -e B]``
    is an extension of ``C`` by ``A`` whose class is ``e``; it splits exactly when the
    projection onto ``C`` has a section.

    Args:
        rng (random.Random): Seeded random source
        corpus (dict): Corpus sizes of the active profile

    Returns:
        None

    """
    for _ in range(corpus["extensions"]):
        a_group = GradedGroup.from_invariants(even=[rng.choice((0, 2, 3, 4)) for _ in range(rng.randint(1, 2))])
        c_group = cyclic(rng.choice(TORSION_FACTORS))
        e = random_ext(rng, c_group, a_group, degree=0)

        a, c = a_group.even.gens, c_group.even.gens
        rels_a = a_group.even.rels
        basis = canonical_resolution(c_group).basis(0)
        rels = hstack(
            a + c,
            vstack(rels_a.ncols, rels_a, IntMatrix.zeros(c, rels_a.ncols)),
            vstack(basis.ncols, -e.vector(0), basis),
        )
        middle = GradedGroup(Presentation(a + c, rels), Presentation.free(0))
        iota = GradedMap(a_group, middle, 0, (vstack(a, IntMatrix.identity(a), IntMatrix.zeros(c, a)), IntMatrix.zeros(0, 0)))
        pi = GradedMap(middle, c_group, 0, (hstack(c, IntMatrix.zeros(c, a), IntMatrix.identity(c)), IntMatrix.zeros(0, 0)))

        found = extension_class(iota, pi)
        assert found.equals(e), "Extension class does not recover the class used to build the extension"

        hom = hom_group(c_group, middle)
        identity = GradedMap.identity(c_group)
        has_section = any(pi.compose(hom.decode(0, v)).equals(identity) for v in hom.group.even.elements())
        assert has_section == found.is_zero(), "Section search disagrees with the extension class"
    logger.info("Successfully checked %s pushout extensions", corpus["extensions"])
