"""Test module for presented Z/2-graded groups and their homomorphisms.

This module contains test cases to verify:
- Invariant factors of minimal and non-minimal presentations
- Kernels, cokernels and homology of graded maps
- Lifting, inversion and relation compatibility
"""

import logging

import pytest
from hypothesis import given

from homkk.errors import CompositionError, NotExactError, RelationError, ShapeError
from homkk.linear.groups import (
    GradedGroup,
    GradedMap,
    GroupElement,
    Parity,
    Presentation,
    cokernel_of,
    homology,
    inverse_map,
    is_injective,
    is_isomorphism,
    is_surjective,
    kernel_of,
    lift_through,
)
from homkk.linear.matrix import IntMatrix
from tests.strategies import cyclic, cyclic_factors, even_map

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "TEST GROUPS"})

Z = GradedGroup.free(1, 0)


@pytest.mark.smoke
@pytest.mark.linear
@pytest.mark.positive
@pytest.mark.parametrize(
    ("presentation", "factors"),
    [
        (Presentation.from_invariants([4]), (4,)),
        (Presentation.from_invariants([2, 0]), (2, 0)),
        (Presentation.from_invariants([0, 2]), (2, 0)),
        (Presentation.from_invariants([2, 3]), (6,)),
        (Presentation.from_invariants([1]), ()),
        (Presentation(2, IntMatrix.from_columns([(2, 3)], 2)), (0,)),
        (Presentation(2, IntMatrix.from_columns([(2, 0), (4, 0)], 2)), (2, 0)),
    ],
)
def test_invariant_factors(presentation: Presentation, factors: tuple[int, ...]) -> None:
    """Test invariant factors, torsion first with free summands as trailing zeros.

    Args:
        presentation (Presentation): Possibly non-minimal presentation
        factors (tuple[int, ...]): Expected invariant factors

    Returns:
        None

    """
    assert presentation.invariant_factors == factors, f"Expected {factors}, got {presentation.invariant_factors}"
    logger.info("Successfully verified invariant factors %s", factors)


@pytest.mark.linear
@pytest.mark.positive
@given(factors=cyclic_factors)
def test_normal_form_is_well_defined_on_relations(factors: list[int]) -> None:
    """Test that adding a relator does not change the normal form."""
    presentation = Presentation.from_invariants(factors)
    vector = tuple(range(1, presentation.gens + 1))
    for relator in presentation.rels.columns():
        shifted = tuple(v + r for v, r in zip(vector, relator, strict=True))
        assert presentation.normal_form(shifted) == presentation.normal_form(vector), "Relator changed the normal form"
        assert presentation.contains_relation(relator), "Relator is not recognised as zero"


@pytest.mark.linear
@pytest.mark.positive
def test_elements_enumerates_finite_group() -> None:
    """Test that Z/2 ⊕ Z/3 has six distinct elements."""
    presentation = Presentation.from_invariants([2, 3])
    elements = list(presentation.elements())

    assert len(elements) == 6, f"Expected 6 elements, got {len(elements)}"
    assert len({presentation.normal_form(e) for e in elements}) == 6, "Enumerated elements are not distinct"
    assert presentation.order == 6, f"Expected order 6, got {presentation.order}"
    logger.info("Successfully enumerated Z/2 ⊕ Z/3")


@pytest.mark.linear
@pytest.mark.negative
def test_elements_rejects_infinite_group() -> None:
    """Test that enumerating Z fails."""
    with pytest.raises(ValueError, match="infinite"):
        list(Presentation.free(1).elements())


@pytest.mark.linear
@pytest.mark.positive
def test_suspension_swaps_parities() -> None:
    """Test that suspension exchanges the even and odd components."""
    group = GradedGroup.from_invariants(even=(2,), odd=(3,))

    assert group.suspend().invariant_factors() == {"even": (3,), "odd": (2,)}, "Suspension did not swap parities"
    assert group.order == 6, f"Expected order 6, got {group.order}"
    logger.info("Successfully verified suspension")


@pytest.mark.linear
@pytest.mark.positive
@pytest.mark.parametrize(
    ("source", "target", "rows", "kernel", "cokernel"),
    [
        (Z, Z, [[2]], (), (2,)),
        (cyclic(2), cyclic(2), [[0]], (2,), (2,)),
        (cyclic(2), cyclic(4), [[2]], (), (2,)),
        (cyclic(6), cyclic(3), [[1]], (2,), ()),
        (Z, cyclic(4), [[1]], (0,), ()),
    ],
)
def test_kernel_and_cokernel(
    source: GradedGroup,
    target: GradedGroup,
    rows: list[list[int]],
    kernel: tuple[int, ...],
    cokernel: tuple[int, ...],
) -> None:
    """Test kernels and cokernels of maps between cyclic groups.

    Args:
        source (GradedGroup): Source group
        target (GradedGroup): Target group
        rows (list[list[int]]): Even component of the map
        kernel (tuple[int, ...]): Expected even invariants of the kernel
        cokernel (tuple[int, ...]): Expected even invariants of the cokernel

    Returns:
        None

    """
    f = even_map(source, target, rows)
    ker, inclusion = kernel_of(f)
    coker, projection = cokernel_of(f)

    assert ker.even.invariant_factors == kernel, f"Expected kernel {kernel}, got {ker.even.invariant_factors}"
    assert coker.even.invariant_factors == cokernel, f"Expected cokernel {cokernel}, got {coker.even.invariant_factors}"
    assert f.compose(inclusion).is_zero(), "Kernel inclusion does not compose to zero"
    assert projection.compose(f).is_zero(), "Cokernel projection does not compose to zero"
    assert is_injective(inclusion), "Kernel inclusion is not injective"
    assert is_surjective(projection), "Cokernel projection is not surjective"
    logger.info("Successfully verified kernel %s and cokernel %s", kernel, cokernel)


@pytest.mark.linear
@pytest.mark.negative
def test_relation_incompatible_map_is_rejected() -> None:
    """Test that Z/2 -> Z/3 sending 1 to 1 is rejected."""
    f = even_map(cyclic(2), cyclic(3), [[1]])

    assert not f.is_relation_compatible(), "Map should not respect the relators"
    with pytest.raises(RelationError):
        kernel_of(f)
    logger.info("Successfully rejected a relation-incompatible map")


@pytest.mark.linear
@pytest.mark.negative
def test_map_rejects_wrong_component_shape() -> None:
    """Test that a component of the wrong shape is a shape error."""
    with pytest.raises(ShapeError):
        GradedMap(Z, Z, 0, (IntMatrix.zeros(2, 1), IntMatrix.zeros(0, 0)))


@pytest.mark.linear
@pytest.mark.negative
def test_compose_rejects_mismatched_maps() -> None:
    """Test that composing maps whose ends do not meet fails."""
    f = even_map(Z, cyclic(2), [[1]])
    with pytest.raises(CompositionError):
        f.compose(f)


@pytest.mark.linear
@pytest.mark.negative
def test_homology_requires_a_complex() -> None:
    """Test that homology of a non-complex is a precondition failure."""
    identity = GradedMap.identity(Z)
    with pytest.raises(NotExactError):
        homology(identity, identity)


@pytest.mark.linear
@pytest.mark.positive
def test_homology_of_short_exact_sequence_vanishes() -> None:
    """Test homology at the middle of Z -2-> Z -> Z/2."""
    doubling = even_map(Z, Z, [[2]])
    projection = even_map(Z, cyclic(2), [[1]])

    assert homology(doubling, projection).is_trivial, "Homology of an exact sequence is not trivial"
    logger.info("Successfully verified exactness of Z -2-> Z -> Z/2")


@pytest.mark.linear
@pytest.mark.positive
def test_lift_through() -> None:
    """Test lifting multiplication by 4 through multiplication by 2, and failure for 3."""
    doubling = even_map(Z, Z, [[2]])
    lift = lift_through(doubling, even_map(Z, Z, [[4]]))

    assert lift is not None, "4 = 2 * 2 should lift"
    assert doubling.compose(lift).equals(even_map(Z, Z, [[4]])), "Lift does not factor the map"
    assert lift_through(doubling, even_map(Z, Z, [[3]])) is None, "3 should not lift through 2"
    logger.info("Successfully verified lifting through multiplication by 2")


@pytest.mark.linear
@pytest.mark.positive
def test_inverse_map() -> None:
    """Test that multiplication by 2 on Z/3 is inverted and on Z is not."""
    doubling = even_map(cyclic(3), cyclic(3), [[2]])
    inverse = inverse_map(doubling)

    assert inverse is not None, "Multiplication by 2 on Z/3 is invertible"
    assert inverse.compose(doubling).equals(GradedMap.identity(cyclic(3))), "Inverse is not a left inverse"
    assert not is_isomorphism(even_map(Z, Z, [[2]])), "Multiplication by 2 on Z is not an isomorphism"
    assert inverse_map(even_map(Z, Z, [[2]])) is None, "Multiplication by 2 on Z has no inverse"
    logger.info("Successfully verified inverses")


@pytest.mark.linear
@pytest.mark.positive
def test_group_element_arithmetic() -> None:
    """Test addition, negation and equality of elements of Z/4."""
    group = cyclic(4)
    one = GroupElement(group, Parity.EVEN, (1,))
    three = GroupElement(group, Parity.EVEN, (3,))

    assert (one + three).is_zero(), "1 + 3 is not zero in Z/4"
    assert (-one).equals(three), "-1 is not 3 in Z/4"
    assert one.factors() == (4,), f"Expected factors (4,), got {one.factors()}"
    logger.info("Successfully verified element arithmetic in Z/4")
