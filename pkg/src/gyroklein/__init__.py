"""Gyrogroups and their Klein geometries."""

from .perm import Permutation, PermGroup, compose, inverse, fixed_points, generate_group
from .finite import (
    FiniteGyrogroup,
    SubgyrogroupReport,
    automorphism_group,
    classify_subgyrogroup,
    composition_law_check,
    cosets,
    decompose_permutation,
    enumerate_subgyrogroups,
    gamma_M,
    gamma_m,
    gyr_group,
    left_translations,
    right_nucleus,
    validate_gyrogroup,
)
from .klein import (
    Geometry,
    TransitivityReport,
    check_invariant_function,
    congruence_class,
    congruent,
    gyr_restricted_geometry,
    is_invariant,
    is_minimally_invariant,
    is_n_transitive,
    is_sharply_n_transitive,
    max_fixed_points,
    transitivity_report,
)
from .tables import read_table

__version__ = "0.1.0"
