"""Exact Schur-function identities and Haar averages for one-parameter subgroups of U(2) and U(3)."""
from .partitions import (
    BoxShape,
    G3Decomposition,
    Partition,
    enumerate_box,
    fits_in_box,
    g3_decompose,
    transpose,
)
from .symfunc import (
    Basis,
    FactorProfile,
    SymmetricFunction,
    dimension,
    dual_cauchy_check,
    evaluate,
    kostka,
    monomial_count,
    pieri_multiply,
    product_lhs,
    schur_to_monomial,
    specialize_ones,
)
from .branching import (
    OmegaKind,
    PhiDescriptor,
    PhiFilter,
    SubgroupId,
    multiplicity,
    omega,
    phi_count,
    phi_set,
    tau,
    validate_tables,
)
from .identities import IdentityId, IdentityReport, IdentityTag, build_lhs, build_rhs, sign_flip, verify
from .haarmc import (
    CosetStructure,
    MCConfig,
    coset_structure,
    empirical_autocorrelation,
    exact_autocorrelation,
    mc_check,
    sample_element,
    symbolic_autocorrelation,
)
from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "Basis",
    "BoxShape",
    "CosetStructure",
    "FactorProfile",
    "G3Decomposition",
    "IdentityId",
    "IdentityReport",
    "IdentityTag",
    "MCConfig",
    "OmegaKind",
    "Partition",
    "PhiDescriptor",
    "PhiFilter",
    "SubgroupId",
    "SymmetricFunction",
    "build_lhs",
    "build_rhs",
    "coset_structure",
    "dimension",
    "dual_cauchy_check",
    "empirical_autocorrelation",
    "enumerate_box",
    "evaluate",
    "exact_autocorrelation",
    "fits_in_box",
    "g3_decompose",
    "kostka",
    "mc_check",
    "monomial_count",
    "multiplicity",
    "omega",
    "phi_count",
    "phi_set",
    "pieri_multiply",
    "product_lhs",
    "sample_element",
    "schur_to_monomial",
    "sign_flip",
    "specialize_ones",
    "symbolic_autocorrelation",
    "tau",
    "transpose",
    "validate_tables",
    "verify",
]
