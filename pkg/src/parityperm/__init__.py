"""Exact representation theory of S_n and A_n for permutation-parity identification."""
from .characters import CharacterTable, ClassLabel, IrrepLabel, character_value, table, verify_orthogonality
from .cyclo import CyclotomicNumber, cyclo, format_cyclo, zeta
from .errors import BoundExceededError, DomainError
from .gme import GmeResult, ProductState, extremal_witness_state, gme_of_pure_state, parity_projector, seesaw
from .group_algebra import GroupAlgebraElement, generalized_symmetrizer, projector_element, young_symmetrizer
from .parity_lab import (
    ParityStateRecipe,
    build,
    build_conjugate_pair,
    build_self_conjugate,
    conjugate_pair_basis,
    dmin,
    feasible_mechanisms,
    hypothesis_pair,
    simulate,
    split_automorphism,
    verify_parity,
)
from .partitions import Partition, SemiStandardTableau, StandardTableau, enumerate_ssyt, enumerate_syt, partitions_of
from .perm import Permutation, enumerate_group
from .tensor_state import StateVector, act, apply_algebra, schur_weyl_audit

__version__ = "0.1.0"

__all__ = [
    "act",
    "apply_algebra",
    "BoundExceededError",
    "build",
    "build_conjugate_pair",
    "build_self_conjugate",
    "character_value",
    "CharacterTable",
    "ClassLabel",
    "conjugate_pair_basis",
    "cyclo",
    "CyclotomicNumber",
    "dmin",
    "DomainError",
    "enumerate_group",
    "enumerate_ssyt",
    "enumerate_syt",
    "extremal_witness_state",
    "feasible_mechanisms",
    "format_cyclo",
    "generalized_symmetrizer",
    "gme_of_pure_state",
    "GmeResult",
    "GroupAlgebraElement",
    "hypothesis_pair",
    "IrrepLabel",
    "parity_projector",
    "ParityStateRecipe",
    "Partition",
    "partitions_of",
    "Permutation",
    "ProductState",
    "projector_element",
    "schur_weyl_audit",
    "seesaw",
    "SemiStandardTableau",
    "simulate",
    "split_automorphism",
    "StandardTableau",
    "StateVector",
    "table",
    "verify_orthogonality",
    "verify_parity",
    "young_symmetrizer",
    "zeta",
]
