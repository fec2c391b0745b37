"""Exact construction and analysis of generalized Clifford algebras."""

from .coeffs import GF, QQ, ZZ, RingHandle, Scalar, make_ring, scalar_arith, scalar_inv
from .freealg import (
    Alphabet,
    NcPoly,
    PolyContext,
    XMode,
    extract_coefficients,
    format_poly,
    parse_poly,
    poly_mul,
    poly_pow,
)
from .laws import (
    HomLaw,
    PolyLaw,
    divided_power,
    gamma_basis,
    law_component,
    law_eval,
    law_from_commutative_poly,
    law_generic,
    law_product,
    law_sum,
)
from .clifford import (
    CliffordInput,
    Presentation,
    comparison_check,
    hypersurface_equation,
    kl_presentation,
    psi_presentation,
    quadratic_presentation,
    weyl_presentation,
)
from .gbasis import (
    GBState,
    MembershipVerdict,
    buchberger_bounded,
    is_member,
    normal_form,
    quotient_dimension,
    span_membership_oracle,
)
from .dg import (
    DgAlgebra,
    DgGenerator,
    bigraded_basis,
    derived_clifford_zero,
    dg_differential,
    dg_free,
    homology_rank,
)

__version__ = "0.1.0"
