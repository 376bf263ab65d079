"""Exact rational models for self-equivalences of symplectic fibres.

Builds the degree one part of the function-space model for the identity
component aut₁(M), the detective map κ, and the extendability criteria for
torus-separable and nilmanifold fibres.
"""
from .bsmodel import (AmbientModel, BsModel, H1Basis, MixedGenerator, build_bs_model,
                      build_mixed_generators, delta_on_generator, ev_model, ev_star, h1_aut1,
                      reduce_mod_Mu)
from .coalgebra import DualCoalgebra, FiniteDga, QuasiTarget, dualize, pd_quasi_target
from .dsl import DslError, ModelDocument, parse, to_text
from .errors import (DegreeCapExceeded, InputError, ModelInconsistency, PresentationMismatch,
                     SymplextError, UnsupportedInput)
from .gca import (FreeGca, GcaPresentation, Poly, apply_d, basis_in_degree, check_d_squared,
                  cohomology, is_minimal, multiply)
from .nilmanifold import (NilmanifoldModel, PolyGenerators, baut1_poly_generators,
                          is_extendable_nil, nil_bs_model, validate_nil)
from .separable import (ClassifyingData, Extendability, KappaMap, ModuliDim, SeparableSpec,
                        binomial_dim_closed_form, is_extendable, kappa, moduli_dim_s2,
                        separable_bs_model, sum_classifying, torus, torus_cp, torus_over_s2_check)

__version__ = "0.1.0"

__all__ = [
    "AmbientModel",
    "BsModel",
    "ClassifyingData",
    "DegreeCapExceeded",
    "DslError",
    "DualCoalgebra",
    "Extendability",
    "FiniteDga",
    "FreeGca",
    "GcaPresentation",
    "H1Basis",
    "InputError",
    "KappaMap",
    "MixedGenerator",
    "ModelDocument",
    "ModelInconsistency",
    "ModuliDim",
    "NilmanifoldModel",
    "Poly",
    "PolyGenerators",
    "PresentationMismatch",
    "QuasiTarget",
    "SeparableSpec",
    "SymplextError",
    "UnsupportedInput",
    "apply_d",
    "basis_in_degree",
    "baut1_poly_generators",
    "binomial_dim_closed_form",
    "build_bs_model",
    "build_mixed_generators",
    "check_d_squared",
    "cohomology",
    "delta_on_generator",
    "dualize",
    "ev_model",
    "ev_star",
    "h1_aut1",
    "is_extendable",
    "is_extendable_nil",
    "is_minimal",
    "kappa",
    "moduli_dim_s2",
    "multiply",
    "nil_bs_model",
    "parse",
    "pd_quasi_target",
    "reduce_mod_Mu",
    "separable_bs_model",
    "sum_classifying",
    "to_text",
    "torus",
    "torus_cp",
    "torus_over_s2_check",
    "validate_nil",
]
