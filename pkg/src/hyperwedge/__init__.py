"""Exact exterior-algebra computations over signed index windows.

The package works entirely in rational arithmetic: multivectors are sparse
combinations of basis wedges indexed by sets of nonzero integers, Pfaffian and
hyper-Pfaffian forms are sparse polynomials in those coordinates, and the
variety membership tests / coordinate reconstruction routines built on top of
them are exact wherever the underlying criterion is.
"""

from .indices import (
    DimensionMismatch,
    GoodParams,
    Window,
    diagram_leq,
    enumerate_partitions,
    index_set,
    is_good,
    shuffle_sign,
    sort_with_sign,
    young_diagram,
)
from .multivector import (
    Covector,
    FormatError,
    Multivector,
    RationalMatrix,
    contract,
    gl_apply,
    hodge_star,
    multivector_from_obj,
    multivector_to_obj,
    parse_fraction,
    rank_two_form,
    transition,
    wedge,
    wedge_power,
)
from .polynomials import (
    WedgePolynomial,
    monomial,
    poly_equal,
    poly_eval,
    poly_from_obj,
    poly_to_obj,
)
from .forms import (
    FormSpec,
    component_form_specs,
    filtration_expansion,
    hpf_eval,
    hpf_multilinear,
    hpf_polynomial,
    plucker_relation,
    wedge_via_hpf,
)
from .varieties import (
    MembershipReport,
    TypeSpec,
    VarietySpec,
    check_membership,
    contraction_membership,
    in_dual_hpf,
    in_grassmannian,
    in_hpf,
    in_hpf_component,
    in_pf,
    in_two_sided,
    nilpotency_degree,
    odd_partition_check,
    pf_contraction_identically_zero,
    pf_contraction_witness,
    type_witness,
)
from .elimination import (
    CoordinateAssignment,
    MissingCoordinates,
    ReconstructionError,
    ReconstructionResult,
    ZeroDenominator,
    assignment_from_obj,
    assignment_to_obj,
    good_projection,
    reconstruct_all,
    reconstruct_coordinate,
)

__all__ = [
    "CoordinateAssignment",
    "Covector",
    "DimensionMismatch",
    "FormSpec",
    "FormatError",
    "GoodParams",
    "MembershipReport",
    "MissingCoordinates",
    "Multivector",
    "RationalMatrix",
    "ReconstructionError",
    "ReconstructionResult",
    "TypeSpec",
    "VarietySpec",
    "WedgePolynomial",
    "Window",
    "ZeroDenominator",
    "assignment_from_obj",
    "assignment_to_obj",
    "check_membership",
    "component_form_specs",
    "contract",
    "contraction_membership",
    "diagram_leq",
    "enumerate_partitions",
    "filtration_expansion",
    "gl_apply",
    "good_projection",
    "hodge_star",
    "hpf_eval",
    "hpf_multilinear",
    "hpf_polynomial",
    "in_dual_hpf",
    "in_grassmannian",
    "in_hpf",
    "in_hpf_component",
    "in_pf",
    "in_two_sided",
    "index_set",
    "is_good",
    "monomial",
    "multivector_from_obj",
    "multivector_to_obj",
    "nilpotency_degree",
    "odd_partition_check",
    "parse_fraction",
    "pf_contraction_identically_zero",
    "pf_contraction_witness",
    "plucker_relation",
    "poly_equal",
    "poly_eval",
    "poly_from_obj",
    "poly_to_obj",
    "rank_two_form",
    "reconstruct_all",
    "reconstruct_coordinate",
    "shuffle_sign",
    "sort_with_sign",
    "transition",
    "type_witness",
    "wedge",
    "wedge_power",
    "wedge_via_hpf",
    "young_diagram",
]
