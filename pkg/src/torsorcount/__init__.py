"""Exact rational-point counting on the split quartic del Pezzo surface
with a D4 singularity, through its universal torsor."""

from .archimedean import (
    QuadratureError,
    QuadratureResult,
    g1,
    g2,
    omega_infinity,
    omega_infinity_mc,
)
from .counter import (
    CountRecord,
    count_alpha23,
    count_series,
    count_torsor,
    count_torsor_naive,
    torsor_points,
)
from .densities import (
    PrimeCase,
    M_partial,
    admissible_c3_count,
    approx_count,
    classify_prime,
    delta_coeff,
    euler_product_G0,
    local_factor,
    local_factor_bruteforce,
    theta,
    theta1,
    theta2,
)
from .report import (
    ALPHA,
    BETA,
    FitResult,
    PeyreBreakdown,
    emit,
    fit_polynomial,
    peyre_constant,
)
from .surface import (
    PointClass,
    SurfacePoint,
    canonicalize,
    classify,
    evaluate_forms,
    height,
    is_singular_point,
    oracle_count,
    phi_project,
    psi_param,
)
from .torsor import (
    DYNKIN,
    DynkinAdjacency,
    TorsorPoint,
    check_coprimality,
    height_monomials,
    is_valid,
    lift,
    psi_map,
    torsor_form,
)

__version__ = "0.1.0"
