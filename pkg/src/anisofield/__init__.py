"""anisofield: simulation and verification lab for anisotropic long-range
dependent random fields on the 2-D lattice."""

__version__ = "0.1.0"

from .exponents import (
    DEFAULT_BOUNDARY_TOL,
    ModelExponents,
    Regime,
    RegimeTag,
    classify_regime,
    derive_exponents,
    exponents_from_p,
    hurst_pair,
    theoretical_H,
)
from .kernels import (
    AngularFunction,
    CoefficientKernel,
    a_infinity,
    delta_kernel,
    frac_binomial_psi,
    generic_kernel,
    heat_angular,
    heat_angular_L0,
    heat_frac_kernel,
    heat_rw_transitions,
    iso_angular_constant,
    iso_frac_kernel,
    quasi_norm,
    quasi_norm_plus,
    rw2d_transitions,
    separable_kernel,
)

__all__ = [
    "DEFAULT_BOUNDARY_TOL",
    "ModelExponents",
    "Regime",
    "RegimeTag",
    "classify_regime",
    "derive_exponents",
    "exponents_from_p",
    "hurst_pair",
    "theoretical_H",
    "AngularFunction",
    "CoefficientKernel",
    "a_infinity",
    "delta_kernel",
    "frac_binomial_psi",
    "generic_kernel",
    "heat_angular",
    "heat_angular_L0",
    "heat_frac_kernel",
    "heat_rw_transitions",
    "iso_angular_constant",
    "iso_frac_kernel",
    "quasi_norm",
    "quasi_norm_plus",
    "rw2d_transitions",
    "separable_kernel",
]
