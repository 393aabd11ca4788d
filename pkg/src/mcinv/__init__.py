"""Invariant polynomials of truncated multicurrent algebras g (x) A.

Exact rational arithmetic throughout; hot loops live in ``mcinv.kernels``,
which uses a compiled extension when one was built and pure Python otherwise.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import McinvError, VerificationError
from .invariants import (
    InvariantFamily,
    adjoint_derivation,
    build_family,
    check_double_expansion,
    check_independence,
    check_invariance,
    dualize,
    expand,
    killing_transport,
    positive_degree_support,
    sl_n_fundamental_invariants,
)
from .kernels import backend
from .lie import LieAlgebra, Sl2Triple, from_structure_constants, principal_sl2_triple, sl_n_chevalley
from .multicurrent import MCElement, MCForm, MulticurrentAlgebra
from .ratpoly import Monomial, Polynomial, Var
from .slices import (
    PrincipalSlice,
    TruncatedSlice,
    build_slice,
    derivative_identity,
    reduce_to_slice,
    restrict,
    transversality,
    verify_uniqueness,
)
from .staircase import Staircase, admissible_gammas, from_box, phi_k, validate

__all__ = [
    "__version__",
    "McinvError",
    "VerificationError",
    "InvariantFamily",
    "adjoint_derivation",
    "build_family",
    "check_double_expansion",
    "check_independence",
    "check_invariance",
    "dualize",
    "expand",
    "killing_transport",
    "positive_degree_support",
    "sl_n_fundamental_invariants",
    "backend",
    "LieAlgebra",
    "Sl2Triple",
    "from_structure_constants",
    "principal_sl2_triple",
    "sl_n_chevalley",
    "MCElement",
    "MCForm",
    "MulticurrentAlgebra",
    "Monomial",
    "Polynomial",
    "Var",
    "PrincipalSlice",
    "TruncatedSlice",
    "build_slice",
    "derivative_identity",
    "reduce_to_slice",
    "restrict",
    "transversality",
    "verify_uniqueness",
    "Staircase",
    "admissible_gammas",
    "from_box",
    "phi_k",
    "validate",
]
