"""Test module for Z-actions described by Laurent modules and odd Ext parts.

This module contains test cases to verify:
- The mixed map and Ext² over the Laurent ring against brute-force enumeration
- Obstruction classes, relative obstructions and equivalence decisions with witnesses
- Conjugation by invertible UCT classes
- Outer terms of the six-term sequence and the module isomorphism search
"""

import logging

import pytest

from homkk.errors import CompositionError, InputValidationError, NotInvertibleError
from homkk.laurent import (
    LaurentModule,
    ZObject,
    conjugate_z,
    equivalent_z,
    ext2_laurent,
    find_module_isomorphism,
    gamma_map,
    obstruction_z,
    pv_terms,
    relative_obstruction_z,
)
from homkk.linear.ext import ExtElement, ext_group, pull_ext, push_ext
from homkk.linear.groups import GradedGroup, GradedMap
from homkk.linear.matrix import IntMatrix
from homkk.linear.uct import UctClass
from tests.strategies import TORSION_FACTORS, cyclic, even_map, random_automorphism, random_ext, random_group

base_logger = logging.getLogger(__name__)
logger = logging.LoggerAdapter(base_logger, {"role": "TEST LAURENT"})

# (Z/2)^2 ⊕ ΣZ/2; the action swaps the two even summands
K = GradedGroup.from_invariants(even=(2, 2), odd=(2,))
G = GradedGroup.from_invariants(even=(2,), odd=(2,))
Z = GradedGroup.free(1, 0)


def _swap() -> LaurentModule:
    action = GradedMap(K, K, 0, (IntMatrix.from_rows([[0, 1], [1, 0]]), IntMatrix.identity(1)))
    return LaurentModule.from_action(K, action)


def _trivial(group: GradedGroup) -> LaurentModule:
    return LaurentModule.from_action(group, GradedMap.identity(group))


def _object(module: LaurentModule, odd_part: ExtElement | None = None) -> ZObject:
    return ZObject(module, odd_part if odd_part is not None else ExtElement.zero(module.group, module.group, 1))


def _gamma(module: LaurentModule, t: ExtElement) -> ExtElement:
    return pull_ext(t, module.action) - push_ext(t, module.action)


@pytest.mark.smoke
@pytest.mark.laurent
@pytest.mark.positive
def test_ext2_of_swap_module() -> None:
    """Test the mixed map and Ext² of the swap module against direct enumeration."""
    module = _swap()
    ext = ext_group(K, K)
    component = ext.group.odd
    gamma = gamma_map(module, module)

    assert component.order == 16, f"Expected 16 degree-1 classes, got {component.order}"

    image = set()
    for vector in component.elements():
        direct = ext.encode(_gamma(module, ext.decode(1, vector)))
        assert component.normal_form(gamma.matrix.apply(vector)) == component.normal_form(direct), "Mixed map disagrees with direct evaluation"
        image.add(component.normal_form(direct))

    ext2 = ext2_laurent(module, module)
    assert len(image) == 4, f"Expected an image of order 4, got {len(image)}"
    assert ext2.group.even.invariant_factors == (2, 2), f"Expected Ext² = (2, 2), got {ext2.group.even.invariant_factors}"
    assert ext2.group.order == component.order // len(image), "Ext² order does not match the brute-force cokernel"
    logger.info("Successfully verified Ext² of the swap module")


@pytest.mark.laurent
@pytest.mark.positive
def test_obstruction_of_trivial_action() -> None:
    """Test that with the identity action the obstruction is the odd part itself."""
    module = _trivial(G)
    ext = ext_group(G, G)

    assert ext2_laurent(module, module).group.even.invariant_factors == (2, 2), "Ext² of a trivial action is the whole Ext group"
    assert obstruction_z(_object(module)).is_zero(), "Zero odd part has zero obstruction"
    for generator in ext.generators(1):
        assert not obstruction_z(_object(module, generator)).is_zero(), "Nonzero odd part should be obstructed"
    logger.info("Successfully verified obstructions of the trivial action")


@pytest.mark.laurent
@pytest.mark.positive
def test_relative_obstruction_decides_equivalence() -> None:
    """Test that a class outside the image of the mixed map is an obstruction, and one inside is not."""
    module = _swap()
    ext = ext_group(K, K)
    ext2 = ext2_laurent(module, module)
    identity = GradedMap.identity(K)
    a = _object(module)

    outside = next(g for g in ext.generators(1) if not ext2.encode(g).is_zero())
    b = _object(module, outside)
    assert not relative_obstruction_z(a, b, identity).is_zero(), "Relative obstruction should be nonzero"
    decision = equivalent_z(a, b, identity)
    assert not decision.equivalent, "Objects with a nonzero relative obstruction are not equivalent"
    assert decision.witness is None, "A negative decision carries no witness"

    s = ext.generators(1)[0]
    inside = _object(module, _gamma(module, s))
    assert relative_obstruction_z(a, inside, identity).is_zero(), "Image of the mixed map is not obstructed"
    decision = equivalent_z(a, inside, identity)
    assert decision.equivalent, "Objects differing by the image of the mixed map are equivalent"
    assert decision.witness is not None, "A positive decision carries a witness"
    assert _gamma(module, decision.witness).equals(inside.odd_part), "Witness does not solve the equation"
    logger.info("Successfully decided equivalence along the identity")


@pytest.mark.laurent
@pytest.mark.positive
def test_decision_matches_enumeration() -> None:
    """Test every odd part of the swap module against the enumerated image of the mixed map."""
    module = _swap()
    ext = ext_group(K, K)
    component = ext.group.odd
    image = {component.normal_form(ext.encode(_gamma(module, ext.decode(1, v)))) for v in component.elements()}
    a = _object(module)

    for vector in component.elements():
        b = _object(module, ext.decode(1, vector))
        decision = equivalent_z(a, b, GradedMap.identity(K))
        assert decision.equivalent == (component.normal_form(vector) in image), f"Wrong decision for {vector}"
    logger.info("Successfully checked all %s odd parts", component.order)


@pytest.mark.laurent
@pytest.mark.positive
def test_conjugate_is_equivalent() -> None:
    """Test that conjugating by (id, s) gives an equivalent object."""
    module = _swap()
    ext = ext_group(K, K)
    obj = _object(module, ext.generators(1)[1])
    u = UctClass(GradedMap.identity(K), ext.generators(1)[2])
    conjugate = conjugate_z(obj, u)

    conjugate.validate()
    assert equivalent_z(obj, conjugate, GradedMap.identity(K)).equivalent, "Conjugate object is not equivalent"
    logger.info("Successfully verified conjugation invariance")


@pytest.mark.laurent
@pytest.mark.positive
@pytest.mark.parametrize(
    ("a", "b", "hom_kernel"),
    [
        (_object(_trivial(Z)), _object(_trivial(Z)), {"even": (0,), "odd": ()}),
        (
            _object(_trivial(cyclic(3))),
            _object(LaurentModule.from_action(cyclic(3), even_map(cyclic(3), cyclic(3), [[2]]))),
            {"even": (), "odd": ()},
        ),
    ],
)
def test_pv_terms(a: ZObject, b: ZObject, hom_kernel: dict) -> None:
    """Test the outer terms of the six-term sequence on two small examples.

    Args:
        a (ZObject): Source object
        b (ZObject): Target object
        hom_kernel (dict): Expected invariants of the Hom kernel, which here equal those of the Hom cokernel

    Returns:
        None

    """
    terms = pv_terms(a, b)

    assert terms.hom_kernel.invariant_factors() == hom_kernel, f"Unexpected Hom kernel {terms.hom_kernel.invariant_factors()}"
    assert terms.hom_cokernel.invariant_factors() == hom_kernel, f"Unexpected Hom cokernel {terms.hom_cokernel.invariant_factors()}"
    assert terms.ext_kernel.is_trivial, "Ext kernel should be trivial"
    assert terms.ext_cokernel.is_trivial, "Ext cokernel should be trivial"
    logger.info("Successfully verified six-term outer terms")


@pytest.mark.laurent
@pytest.mark.positive
def test_find_module_isomorphism() -> None:
    """Test the isomorphism search between the swap and the trivial module."""
    assert find_module_isomorphism(_swap(), _trivial(K)) is None, "Swap and identity are not isomorphic modules"

    found = find_module_isomorphism(_swap(), _swap())
    assert found is not None, "A module is isomorphic to itself"
    assert found.compose(_swap().action).equals(_swap().action.compose(found)), "Found map does not intertwine"
    logger.info("Successfully searched for module isomorphisms")


@pytest.mark.laurent
@pytest.mark.negative
def test_find_module_isomorphism_rejects_infinite_hom() -> None:
    """Test that the search refuses an infinite Hom group and one above the limit."""
    with pytest.raises(InputValidationError):
        find_module_isomorphism(_trivial(Z), _trivial(Z))
    with pytest.raises(InputValidationError):
        find_module_isomorphism(_swap(), _swap(), limit=4)


@pytest.mark.laurent
@pytest.mark.negative
def test_non_invertible_action() -> None:
    """Test that multiplication by 2 on Z is not a Z-action."""
    with pytest.raises(NotInvertibleError):
        LaurentModule.from_action(Z, even_map(Z, Z, [[2]]))


@pytest.mark.laurent
@pytest.mark.negative
def test_relative_obstruction_rejects_bad_t0() -> None:
    """Test that t0 must be a module isomorphism of the right shape."""
    a = _object(_swap())
    b = _object(_trivial(K))

    with pytest.raises(NotInvertibleError, match="not a module map"):
        relative_obstruction_z(a, b, GradedMap.identity(K))
    with pytest.raises(CompositionError):
        relative_obstruction_z(a, b, GradedMap.identity(G))
    with pytest.raises(NotInvertibleError, match="not an isomorphism"):
        relative_obstruction_z(b, b, GradedMap.zero(K, K))
    logger.info("Successfully rejected invalid t0")


@pytest.mark.laurent
@pytest.mark.acceptance
def test_scalar_actions_against_ext(rng, corpus: dict) -> None:
    """Test decisions for actions by ±1, where the mixed map vanishes.

    For a scalar action the objects are equivalent along the identity exactly when
    their odd parts agree in Ext.

    Args:
        rng (random.Random): Seeded random source
        corpus (dict): Corpus sizes of the active profile

    Returns:
        None

    """
    for _ in range(corpus["z_actions"]):
        group = GradedGroup.from_invariants(
            even=[rng.choice((2, 3, 4)) for _ in range(rng.randint(0, 2))],
            odd=[rng.choice((0, 2, 3, 4)) for _ in range(rng.randint(0, 2))],
        )
        sign = rng.choice((1, -1))
        action = GradedMap(group, group, 0, (IntMatrix.identity(group.even.gens).scaled(sign), IntMatrix.identity(group.odd.gens).scaled(sign)))
        module = LaurentModule.from_action(group, action)
        alpha1 = random_ext(rng, group, group)
        beta1 = alpha1 if rng.random() < 0.5 else random_ext(rng, group, group)

        decision = equivalent_z(_object(module, alpha1), _object(module, beta1), GradedMap.identity(group))
        assert decision.equivalent == beta1.equals(alpha1), "Decision disagrees with equality in Ext"
    logger.info("Successfully checked %s scalar actions", corpus["z_actions"])


@pytest.mark.laurent
@pytest.mark.negative
def test_pv_terms_rejects_mismatched_inverse() -> None:
    """Test that the six-term outer terms refuse a module whose stored inverse is wrong."""
    swap = _swap()
    broken = ZObject(LaurentModule(K, swap.action, GradedMap.identity(K)), ExtElement.zero(K, K, 1))

    with pytest.raises(NotInvertibleError, match="not inverse"):
        pv_terms(broken, _object(swap))
    with pytest.raises(NotInvertibleError, match="not inverse"):
        pv_terms(_object(swap), broken)
    logger.info("Successfully rejected a module with a wrong action inverse")


@pytest.mark.laurent
@pytest.mark.acceptance
def test_conjugation_by_random_classes(rng, corpus: dict) -> None:
    """Test that conjugating by a random invertible class ``u = (u⁰, u¹)`` is unobstructed along ``u⁰``.

    The odd part ``u¹`` solves the equivalence equation itself, so every witness
    found differs from it by an element of the kernel of the mixed map.

    Args:
        rng (random.Random): Seeded random source
        corpus (dict): Corpus sizes of the active profile

    Returns:
        None

    """
    nontrivial_actions = 0
    for _ in range(corpus["z_actions"]):
        group = random_group(rng, TORSION_FACTORS)
        alpha0 = random_automorphism(rng, group)
        nontrivial_actions += not alpha0.equals(GradedMap.identity(group))
        obj = _object(LaurentModule.from_action(group, alpha0), random_ext(rng, group, group))
        u0 = random_automorphism(rng, group)
        u1 = random_ext(rng, group, group)
        conjugate = conjugate_z(obj, UctClass(u0, u1))

        conjugate.validate()
        assert relative_obstruction_z(obj, conjugate, u0).is_zero(), "Conjugate object is obstructed along u⁰"
        decision = equivalent_z(obj, conjugate, u0)
        assert decision.equivalent, "Conjugate object is not equivalent along u⁰"
        assert decision.witness is not None, "A positive decision carries a witness"

        beta0 = conjugate.module.action
        rhs = pull_ext(conjugate.odd_part, u0) - push_ext(obj.odd_part, u0)
        assert (pull_ext(u1, alpha0) - push_ext(u1, beta0)).equals(rhs), "u¹ does not solve the equivalence equation"
        difference = decision.witness - u1
        assert (pull_ext(difference, alpha0) - push_ext(difference, beta0)).is_zero(), "Witness and u¹ differ outside the kernel"
    logger.info("Successfully conjugated %s objects (%s with a non-identity action)", corpus["z_actions"], nontrivial_actions)


@pytest.mark.laurent
@pytest.mark.acceptance
def test_ext2_laurent_matches_enumeration(rng, corpus: dict) -> None:
    """Test Ext² over the Laurent ring against the enumerated image of the mixed map.

    Every degree-1 class encodes to zero exactly when it lies in the enumerated image,
    and the order of Ext² is the index of that image.

    Args:
        rng (random.Random): Seeded random source
        corpus (dict): Corpus sizes of the active profile

    Returns:
        None

    """
    checked = 0
    for _ in range(20 * corpus["z_actions"]):
        if checked == corpus["z_actions"]:
            break
        group = random_group(rng, TORSION_FACTORS)
        ext = ext_group(group, group)
        component = ext.group.odd
        if component.order is None or component.order > 256:
            continue
        module = LaurentModule.from_action(group, random_automorphism(rng, group))
        ext2 = ext2_laurent(module, module)

        image = {component.normal_form(ext.encode(_gamma(module, ext.decode(1, v)))) for v in component.elements()}
        for vector in component.elements():
            in_image = component.normal_form(vector) in image
            assert ext2.encode(ext.decode(1, vector)).is_zero() == in_image, f"Ext² membership is wrong for {vector}"
        assert ext2.group.order == component.order // len(image), "Ext² order does not match the brute-force cokernel"
        checked += 1

    assert checked == corpus["z_actions"], f"Only {checked} modules had a small enough Ext group"
    logger.info("Successfully enumerated Ext² for %s random modules", checked)
