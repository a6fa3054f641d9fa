"""Exact integer linear algebra and the Hom/Ext calculus of graded groups."""

from homkk.linear.ext import (
    CanonicalResolution,
    ExtElement,
    ExtGroup,
    FreeResolution,
    HomGroup,
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
from homkk.linear.groups import (
    GradedGroup,
    GradedMap,
    GroupElement,
    Parity,
    Presentation,
    block_map,
    cokernel_of,
    homology,
    invariant_factors,
    inverse_map,
    is_isomorphism,
    kernel_of,
    lift_through,
    summand_inclusion,
    summand_projection,
)
from homkk.linear.matrix import IntMatrix, SmithDecomposition, hermite_basis, smith_normal_form, solve_linear
from homkk.linear.uct import UctClass, uct_compose, uct_identity, uct_invert

__all__ = [
    "CanonicalResolution",
    "ExtElement",
    "ExtGroup",
    "FreeResolution",
    "GradedGroup",
    "GradedMap",
    "GroupElement",
    "HomGroup",
    "IntMatrix",
    "Parity",
    "Presentation",
    "SmithDecomposition",
    "UctClass",
    "block_map",
    "canonical_free_resolution",
    "canonical_resolution",
    "cokernel_of",
    "ext_group",
    "extension_class",
    "hermite_basis",
    "hom_group",
    "homology",
    "invariant_factors",
    "inverse_map",
    "is_isomorphism",
    "kernel_of",
    "lift_through",
    "pull_ext",
    "push_ext",
    "smith_normal_form",
    "solve_linear",
    "summand_inclusion",
    "summand_projection",
    "to_resolution",
    "transport_ext",
    "uct_compose",
    "uct_identity",
    "uct_invert",
]
