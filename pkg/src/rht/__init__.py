"""Exact-arithmetic models of mapping spaces and formality certificates."""

from .gca import Poly, FreeGCA, Derivation, Cdga, CdgaMorphism, TruncationError
from .linalg import RatMatrix, rank, kernel_basis, solve, cokernel_rank
from .dgl import (Dgl, DglMorphism, FiniteCdga, free_lie,
                  free_lie_differential, tensor_map_model, fibration_model,
                  validate_dgl)
from .cefunctor import ce_cochains, ce_of_morphism
from .mapmodel import (MapSpaceProblem, check_hypotheses, suspension_model,
                       split_odd_generator, reduce_to_odd_sphere)
from .quotient import QuotientRing, CohomologyAlgebra, ModelCohomology
from .formality import (formality_pipeline, free_cohomology_check,
                        regular_sequence_check, koszul_formality,
                        transfer_formality, bigraded_model,
                        barred_bigraded_model, lemma36_scan, bar_obstruction,
                        replay_verdict, FormalityVerdict)

__all__ = [
    "Poly", "FreeGCA", "Derivation", "Cdga", "CdgaMorphism", "TruncationError",
    "RatMatrix", "rank", "kernel_basis", "solve", "cokernel_rank",
    "Dgl", "DglMorphism", "FiniteCdga", "free_lie", "free_lie_differential",
    "tensor_map_model", "fibration_model", "validate_dgl",
    "ce_cochains", "ce_of_morphism",
    "MapSpaceProblem", "check_hypotheses", "suspension_model",
    "split_odd_generator", "reduce_to_odd_sphere",
    "QuotientRing", "CohomologyAlgebra", "ModelCohomology",
    "formality_pipeline", "free_cohomology_check", "regular_sequence_check",
    "koszul_formality", "transfer_formality", "bigraded_model",
    "barred_bigraded_model", "lemma36_scan", "bar_obstruction",
    "replay_verdict", "FormalityVerdict",
]
