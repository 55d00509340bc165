"""Spectral restriction machinery on Metivier groups.

Thin python surface over the C++ core: special Hermite projectors, twisted
Laplacians, the joint-calculus restriction roots mu_k, and the exponent
calculus (phi, A-D, nu) with the truncated series bound.
"""

from metivier._core import (  # noqa: F401
    CalculusSpec,
    ExponentParams,
    ExponentSet,
    Family,
    GridSpec,
    SampledField,
    SpectralPoint,
    SphereScanResult,
    StepTwoAlgebra,
    dilate,
    dilation_residual,
    eval_m,
    exponents,
    fit_loglog,
    heisenberg,
    is_htype,
    is_metivier,
    laguerre,
    laguerre_product_integral,
    l2_distance,
    load_algebra,
    load_field,
    mu_in_range,
    muller_seeger_example,
    muller_seeger_j,
    nu_analysis,
    phi,
    predicted_exponent,
    project,
    projector_opnorm,
    projector_opnorm_1_to_2,
    reconstruct,
    sample_special_hermite,
    save_algebra,
    save_field,
    series_bound,
    set_thread_count,
    solve_mu_k,
    special_hermite,
    special_hermite_l2_norm,
    standard_symplectic_form,
    symplectic_normalize,
    twisted_convolve,
    twisted_laplacian,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
