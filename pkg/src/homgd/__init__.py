"""Exact verification and construction toolkit for Hom-GD bialgebras and
Hom-Lie conformal algebras."""

from .exactpoly import LaurentVec, MPoly, PolyError, PolySyntaxError, format_scalar, poly, scalar
from .finalg import (
    PROFILES,
    AlgebraCarrier,
    AlgebraError,
    CheckProfile,
    CheckReport,
    MissingSlotError,
    Violation,
    check_axioms,
    commutes,
    is_derivation,
    is_endomorphism,
)
from .constructions import (
    EXAMPLES,
    commutator_bracket,
    derivation_product,
    endomorphism_twist,
    make_example,
    poisson_derived_gd,
    truncated_euler,
)
from .conformal import (
    ConformalAlgebra,
    ConformalError,
    JProductTable,
    LocalDistribution,
    check_hom_jacobi,
    check_jproduct_axioms,
    check_skew,
    conformal_report,
    current_algebra,
    degree_of,
    distribution_bracket,
    extend_bracket,
    fourier,
    j_products,
    reconstruct,
    virasoro_like,
)
from .equivalence import (
    EquivalenceError,
    affinization_check,
    affinize_bracket,
    conformal_to_gd,
    delta_residuals,
    gd_to_conformal,
)
from .document import AlgebraDocument, DocumentError, dump, load, parse, read, serialize, write

__version__ = "0.1.0"
