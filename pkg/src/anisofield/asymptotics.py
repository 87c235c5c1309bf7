"""Numerical asymptotics: convolutions of generalized homogeneous functions,
angular limit profiles, lattice-sum growth laws, covariance profiles and
limit constants.

Conventions.  A generalized homogeneous function is
``f(t, s) = rho(t, s)^(-h) L(t / rho(t, s))`` with quasi-norm
``rho(t, s) = (|t|^2 + |s|^(2/varpi))^(1/2)``; it scales as
``f(lam t, lam^varpi s) = lam^(-h) f(t, s)``.  The continuous convolution of
two such functions is again generalized homogeneous of order
``h1 + h2 - 1 - varpi``, with angular profile ``L12`` obtained by evaluating
the convolution on the unit quasi-sphere.

Quadrature strategy for ``L12``: the plane splits into two quasi-balls
around the singular points (radial-angular product rules whose Jacobi
weights absorb the algebraic singularities exactly), a bounded middle region
(adaptive Cartesian panels), a far annulus in log-radial coordinates, and an
outer tail integrated in closed form from the power envelope.  Smooth radial
cutoffs make every region's integrand continuous, so no panel straddles a
jump.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import fft as sfft
from scipy.interpolate import CubicSpline
from scipy.signal import fftconvolve

from .errors import (
    BoundaryError,
    DomainError,
    MemoryCapError,
    QuadratureError,
    SizeCapError,
)
from .exponents import ModelExponents
from .kernels import AngularFunction, CoefficientKernel, quasi_norm
from .quadrature import (
    AdaptiveResult,
    adaptive_1d,
    adaptive_2d,
    gauss_jacobi_01,
    smooth_cutoff,
    _jacobi,
    _legendre,
)

__all__ = [
    "HomogeneousSpec",
    "ConvolutionValue",
    "L12Profile",
    "continuous_convolution",
    "angular_L12",
    "build_l12_profile",
    "HCPrediction",
    "hc_prediction",
    "blambda_bruteforce",
    "lattice_homogeneous",
    "limit_constant_c",
    "fbs_covariance",
    "CovarianceProfile",
    "covariance_exact",
    "covariance_at_lags",
    "covariance_axis",
    "covariance_empirical",
    "covariance_asymptote_check",
]


@dataclass(frozen=True)
class HomogeneousSpec:
    """Decay order, anisotropy and angular profile of rho^(-h) L(t/rho)."""

    h: float
    varpi: float
    L: AngularFunction

    def __post_init__(self):
        if not self.h > 0.0:
            raise DomainError(f"decay order must be positive, got {self.h}")
        if not self.varpi > 0.0:
            raise DomainError(f"varpi must be positive, got {self.varpi}")

    def __call__(self, t, s):
        """Evaluate away from the origin (vectorized)."""
        rho = np.asarray(quasi_norm(t, s, self.varpi), dtype=float)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = rho**-self.h * self.L(np.asarray(t, dtype=float) / rho)
        return out


@dataclass(frozen=True)
class ConvolutionValue:
    value: float
    error: float


def _angular_nodes(
    varpi: float, n: int, breakpoints: Sequence[float] = ()
) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_{-1}^{1} g(w) (1 - w^2)^(varpi/2 - 1) dw.

    The algebraic endpoint weight is handled by Gauss-Jacobi; interior
    breakpoints split the interval, with the singular factor folded into the
    integrand on segments not touching +-1.
    """
    alpha = varpi / 2.0 - 1.0
    pts = sorted(p for p in set(breakpoints) if -1.0 < p < 1.0)
    edges = [-1.0] + pts + [1.0]
    nodes, weights = [], []
    for a, b in zip(edges[:-1], edges[1:]):
        mid, half = 0.5 * (a + b), 0.5 * (b - a)
        if a == -1.0 and b == 1.0:
            x, w = _jacobi(n, alpha, alpha)
            nodes.append(x)
            weights.append(w)
        elif b == 1.0:
            x, w = _jacobi(n, alpha, 0.0)  # weight (1 - x)^alpha on [-1, 1]
            z = mid + half * x
            nodes.append(z)
            weights.append(w * half** (alpha + 1.0) * (1.0 + z) ** alpha)
        elif a == -1.0:
            x, w = _jacobi(n, 0.0, alpha)
            z = mid + half * x
            nodes.append(z)
            weights.append(w * half ** (alpha + 1.0) * (1.0 - z) ** alpha)
        else:
            x, w = _legendre(n)
            z = mid + half * x
            nodes.append(z)
            weights.append(w * half * (1.0 - z * z) ** alpha)
    return np.concatenate(nodes), np.concatenate(weights)


def _ball_integral(
    sing: HomogeneousSpec,
    other: Callable[[np.ndarray, np.ndarray], np.ndarray],
    delta: float,
    n_rad: int,
    n_ang: int,
) -> float:
    """int over the quasi-ball rho <= delta of sing(u,v) * other(u,v) * chi(rho).

    Radial Gauss-Jacobi absorbs rho^(varpi - h) exactly; chi is the smooth
    cutoff that is 1 inside delta/2.
    """
    varpi = sing.varpi
    x, wx = gauss_jacobi_01(n_rad, 0.0, varpi - sing.h)
    rho = delta * x
    w_rad = delta ** (varpi - sing.h + 1.0) * wx * smooth_cutoff(rho, 0.5 * delta, delta)
    omega, w_ang = _angular_nodes(varpi, n_ang, sing.L.breakpoints)
    lvals = sing.L(omega)
    total = 0.0
    for half in (1.0, -1.0):
        uu = rho[:, None] * omega[None, :]
        vv = half * rho[:, None] ** varpi * (1.0 - omega[None, :] ** 2) ** (varpi / 2.0)
        total += varpi * float(
            np.sum(w_rad[:, None] * w_ang[None, :] * lvals[None, :] * other(uu, vv))
        )
    return total


def _far_polar(
    f1: HomogeneousSpec,
    f2: HomogeneousSpec,
    shift: tuple[float, float],
    rho_inner: float,
    rho_outer: float,
    eta_lo: float,
    eta_hi: float,
    n_ang: int,
    rel_tol: float,
) -> AdaptiveResult:
    """Far annulus rho in [rho_inner, rho_outer] in log-radial coordinates.

    The angular integral per radius uses the exact Jacobi weight; adaptivity
    runs over sigma = log rho where the integrand decays exponentially.
    """
    varpi = f1.varpi
    z, zp = shift
    omega, w_ang = _angular_nodes(
        varpi, n_ang, tuple(f1.L.breakpoints) + tuple(f2.L.breakpoints)
    )
    l1 = f1.L(omega)
    s_unit = (1.0 - omega**2) ** (varpi / 2.0)

    def per_sigma(sig: np.ndarray) -> np.ndarray:
        rho = np.exp(sig)[:, None]
        damp = 1.0 - smooth_cutoff(rho[:, 0], eta_lo, eta_hi)
        out = np.zeros(rho.shape[0])
        for half in (1.0, -1.0):
            uu = rho * omega[None, :]
            vv = half * rho**varpi * s_unit[None, :]
            f2v = f2(uu + z, vv + zp)
            out += np.sum(
                w_ang[None, :] * l1[None, :] * rho ** (1.0 + varpi - f1.h) * f2v,
                axis=1,
            )
        return varpi * damp * out

    return adaptive_1d(
        per_sigma, math.log(rho_inner), math.log(rho_outer), rel_tol=rel_tol, init_split=24
    )


def _envelope_tail(
    f1: HomogeneousSpec, f2: HomogeneousSpec, rho_from: float, n_ang: int = 48
) -> float:
    """Closed-form integral of the product's power envelope beyond rho_from."""
    varpi = f1.varpi
    decay = f1.h + f2.h - 1.0 - varpi
    omega, w_ang = _angular_nodes(
        varpi, n_ang, tuple(f1.L.breakpoints) + tuple(f2.L.breakpoints)
    )
    ang = float(np.sum(w_ang * f1.L(omega) * f2.L(omega)))
    return 2.0 * varpi * ang * rho_from**-decay / decay


def unit_convolution(
    f1: HomogeneousSpec,
    f2: HomogeneousSpec,
    z: float,
    rel_tol: float = 2e-3,
    max_panels: int = 20000,
) -> ConvolutionValue:
    """(f1* star f2*)(z, (1-z^2)^(varpi/2)): the convolution on the unit
    quasi-sphere, driving every other convolution value by homogeneity."""
    if abs(f1.varpi - f2.varpi) > 1e-12:
        raise DomainError("convolution requires a common anisotropy exponent")
    varpi = f1.varpi
    for f in (f1, f2):
        if not f.h < 1.0 + varpi:
            raise DomainError("each factor needs h < 1 + varpi for local integrability")
    decay = f1.h + f2.h - 1.0 - varpi
    if not decay > 0.0:
        raise DomainError("convolution requires h1 + h2 > 1 + varpi")
    if not -1.0 <= z <= 1.0:
        raise DomainError("unit quasi-sphere parameter must lie in [-1, 1]")

    zp = (1.0 - z * z) ** (varpi / 2.0)
    c_tri = max(1.0, 2.0 ** (1.0 / varpi - 1.0))
    delta = 0.2 / c_tri

    def chi0(u, v):
        return smooth_cutoff(quasi_norm(u, v, varpi), 0.5 * delta, delta)

    def chi2(u, v):
        return smooth_cutoff(quasi_norm(u + z, v + zp, varpi), 0.5 * delta, delta)

    # Quasi-balls around each singular point (product rules, two resolutions).
    def ball0(nr, na):
        return _ball_integral(f1, lambda u, v: f2(u + z, v + zp), delta, nr, na)

    def ball2(nr, na):
        return _ball_integral(f2, lambda u, v: f1(u - z, v - zp), delta, nr, na)

    b0, b0_ref = ball0(24, 32), ball0(48, 64)
    b2, b2_ref = ball2(24, 32), ball2(48, 64)
    err_balls = abs(b0_ref - b0) + abs(b2_ref - b2)

    # Bounded middle region: everything inside rho <= rho_far, cutoffs applied.
    rho_far = 4.0

    def mid_integrand(u, v):
        val = f1(u, v) * f2(u + z, v + zp)
        val *= (1.0 - chi0(u, v)) * (1.0 - chi2(u, v))
        val *= smooth_cutoff(quasi_norm(u, v, varpi), 0.8 * rho_far, rho_far)
        return np.nan_to_num(val, nan=0.0, posinf=0.0, neginf=0.0)

    mid = adaptive_2d(
        mid_integrand,
        -rho_far,
        rho_far,
        -(rho_far**varpi),
        rho_far**varpi,
        rel_tol=rel_tol,
        max_panels=max_panels,
        init_split=(8, 8),
        aspect=rho_far ** (varpi - 1.0),
        raise_on_budget=False,
    )

    # Far annulus in log-radial coordinates, then the closed-form envelope.
    rho_huge = min(1e12, max(1e4, (1e-3) ** (-1.0 / decay) * rho_far))
    far = _far_polar(
        f1, f2, (z, zp), 0.8 * rho_far, rho_huge, 0.8 * rho_far, rho_far, 48, rel_tol
    )
    tail = _envelope_tail(f1, f2, rho_huge)
    tail_err = tail * (2.0 * rho_huge ** -min(1.0, varpi) + 1e-6)

    value = b0_ref + b2_ref + mid.value + far.value + tail
    error = err_balls + mid.error + far.error + tail_err
    if not math.isfinite(value):
        raise QuadratureError("unit convolution did not produce a finite value")
    if error > 10.0 * rel_tol * abs(value) + 1e-300:
        raise QuadratureError(
            f"unit convolution error estimate {error:.3g} too large for value {value:.6g}"
        )
    return ConvolutionValue(value, error)


def angular_L12(
    z: float, f1: HomogeneousSpec, f2: HomogeneousSpec, rel_tol: float = 2e-3
) -> ConvolutionValue:
    """Angular profile of the convolution: L12(z) = (f1 star f2)(z, (1-z^2)^(varpi/2))."""
    return unit_convolution(f1, f2, z, rel_tol=rel_tol)


def continuous_convolution(
    f1: HomogeneousSpec,
    f2: HomogeneousSpec,
    t: float,
    s: float,
    rel_tol: float = 2e-3,
) -> ConvolutionValue:
    """(f1 star f2)(t, s) by rescaling to the unit quasi-sphere.

    The integral is generalized homogeneous of order h1 + h2 - 1 - varpi, so
    only the direction of (t, s) requires quadrature.
    """
    rho = quasi_norm(t, s, f1.varpi)
    if rho == 0.0:
        raise DomainError("convolution evaluation point must differ from the origin")
    unit = unit_convolution(f1, f2, t / rho, rel_tol=rel_tol)
    scale = rho ** (1.0 + f1.varpi - f1.h - f2.h)
    return ConvolutionValue(scale * unit.value, scale * unit.error)


class L12Profile:
    """Cached angular profile of a convolution on a Chebyshev z-grid."""

    def __init__(self, z_grid: np.ndarray, values: np.ndarray, errors: np.ndarray):
        order = np.argsort(z_grid)
        self.z_grid = z_grid[order]
        self.values = values[order]
        self.errors = errors[order]
        self._spline = CubicSpline(self.z_grid, self.values)

    def __call__(self, z):
        z = np.clip(np.asarray(z, dtype=float), -1.0, 1.0)
        out = self._spline(z)
        return out if out.ndim else float(out)

    @property
    def max_error(self) -> float:
        return float(np.max(self.errors))

    def as_angular(self, power: int = 1, scale: float = 1.0) -> AngularFunction:
        return AngularFunction(
            evaluator=lambda z: scale * np.maximum(self(z), 0.0) ** power,
            continuity_class="continuous",
            label=f"L12^{power}",
        )


def build_l12_profile(
    f1: HomogeneousSpec,
    f2: HomogeneousSpec,
    n_nodes: int = 33,
    rel_tol: float = 2e-3,
) -> L12Profile:
    """Tabulate L12 on Chebyshev extrema and return the spline wrapper."""
    zs = np.cos(np.pi * np.arange(n_nodes) / (n_nodes - 1))
    vals = np.empty(n_nodes)
    errs = np.empty(n_nodes)
    for i, z in enumerate(zs):
        res = unit_convolution(f1, f2, float(z), rel_tol=rel_tol)
        vals[i], errs[i] = res.value, res.error
    return L12Profile(zs, vals, errs)


# ---------------------------------------------------------------------------
# Lattice-sum asymptotics: the five-case H / C table.
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HCPrediction:
    case: str  # "I" .. "V"
    Hcal: float
    Ccal: float
    quadrature_error: float


def _radial_case_I(h: float, varpi: float, L: Callable, n: int) -> float:
    """C for gamma = varpi: int over [-1,1]^2 of (1-|t|)(1-|s|) b(t, s).

    In quasi-polar coordinates the radial integral is a polynomial in
    rho and rho^varpi, hence closed form; the angular integral carries the
    Jacobi weight (1 - z^2)^(varpi/2 - 1).  The kink of the radial upper
    bound at z^2 = 1/2 splits the angular range into three segments.
    """
    beta = varpi - h

    def radial(zs: np.ndarray) -> np.ndarray:
        a = np.abs(zs)
        b = (1.0 - zs * zs) ** (varpi / 2.0)
        with np.errstate(divide="ignore"):
            pmax = np.minimum(
                np.where(a > 0, 1.0 / a, np.inf),
                np.where(b > 0, (1.0 - zs * zs) ** -0.5, np.inf),
            )
        out = pmax ** (beta + 1.0) / (beta + 1.0)
        out -= a * pmax ** (beta + 2.0) / (beta + 2.0)
        out -= b * pmax ** (beta + varpi + 1.0) / (beta + varpi + 1.0)
        out += a * b * pmax ** (beta + varpi + 2.0) / (beta + varpi + 2.0)
        return out

    cut = 1.0 / math.sqrt(2.0)
    omega, w_ang = _angular_nodes(varpi, n, (-cut, cut))
    return 2.0 * varpi * float(np.sum(w_ang * L(omega) * radial(omega)))


def _triangular_moment(p: float) -> float:
    """int_0^1 (1 - w) w^p dw for p > -1."""
    return 1.0 / (p + 1.0) - 1.0 / (p + 2.0)


def _case_III_C(h: float, varpi: float, L: Callable, n: int) -> float:
    x, w = gauss_jacobi_01(n, varpi / 2.0 - 1.0, (h - varpi) / 2.0 - 1.0)
    g = varpi * float(np.sum(w * (L(np.sqrt(x)) + L(-np.sqrt(x)))))
    return g * _triangular_moment(varpi - h)


def _case_V_C(h: float, varpi: float, L: Callable, n: int) -> float:
    x, w = gauss_jacobi_01(n, -0.5, (h - 3.0) / 2.0)
    root = np.sqrt(1.0 - x)
    g = 0.5 * float(np.sum(w * (L(root) + L(-root))))
    return 2.0 * g * _triangular_moment((1.0 - h) / varpi)


def hc_prediction(
    h: float,
    varpi: float,
    gamma: float,
    L: AngularFunction,
    boundary_tol: float = 1e-9,
    n_nodes: int = 96,
) -> HCPrediction:
    """Growth law of the rectangle lag-sum B_lambda(gamma) ~ C * lambda^(2H).

    Case selection: (I) gamma = varpi; (II) gamma > varpi, h < varpi;
    (III) gamma > varpi, h > varpi; (IV) gamma < varpi, h < 1;
    (V) gamma < varpi, h > 1.  The case-splitting thresholds h = varpi
    (above) and h = 1 (below) carry logarithmic corrections and are refused.
    """
    if not 0.0 < h < 1.0 + varpi:
        raise DomainError(f"need 0 < h < 1 + varpi, got h={h}, varpi={varpi}")
    if not gamma > 0.0:
        raise DomainError("gamma must be positive")

    def with_refinement(compute: Callable[[int], float]) -> tuple[float, float]:
        coarse, fine = compute(n_nodes // 2), compute(n_nodes)
        return fine, abs(fine - coarse)

    if abs(gamma - varpi) <= boundary_tol:
        C, err = with_refinement(lambda n: _radial_case_I(h, varpi, L, n))
        return HCPrediction("I", 1.0 + varpi - 0.5 * h, C, err)
    if gamma > varpi:
        if abs(h - varpi) <= boundary_tol:
            raise BoundaryError("h = varpi for gamma > varpi carries a log correction")
        if h < varpi:
            C = 2.0 * float(L(0.0)) * _triangular_moment(-h / varpi)
            return HCPrediction("II", 1.0 + gamma * (1.0 - 0.5 * h / varpi), C, 0.0)
        C, err = with_refinement(lambda n: _case_III_C(h, varpi, L, n))
        return HCPrediction("III", 1.0 + 0.5 * gamma - 0.5 * (h - varpi), C, err)
    if abs(h - 1.0) <= boundary_tol:
        raise BoundaryError("h = 1 for gamma < varpi carries a log correction")
    if h < 1.0:
        C = (float(L(1.0)) + float(L(-1.0))) * _triangular_moment(-h)
        return HCPrediction("IV", 1.0 + gamma - 0.5 * h, C, 0.0)
    C, err = with_refinement(lambda n: _case_V_C(h, varpi, L, n))
    return HCPrediction("V", 0.5 + gamma - 0.5 * gamma * (h - 1.0) / varpi, C, err)


def _origin_cell_integral(spec: HomogeneousSpec, n: int = 96) -> float:
    """int over [-1/2, 1/2]^2 of rho^(-h) L(t/rho): quasi-polar closed-form
    radial integral under a Gauss-Jacobi angular rule.

    The radial upper bound rho_max(w) = min(1/(2|w|), (1/2)^(1/varpi)
    (1-w^2)^(-1/2)) kinks where the cell edge meets the quasi-sphere; the
    angular range splits there.
    """
    varpi, h = spec.varpi, spec.h
    beta = varpi - h  # > -1 by local integrability
    kappa = 0.5 ** (1.0 / varpi - 1.0)
    w_star = 1.0 / math.sqrt(1.0 + kappa * kappa)

    def radial(ws: np.ndarray) -> np.ndarray:
        with np.errstate(divide="ignore"):
            pmax = np.minimum(
                np.where(np.abs(ws) > 0, 0.5 / np.abs(ws), np.inf),
                0.5 ** (1.0 / varpi) * (1.0 - ws * ws) ** -0.5,
            )
        return pmax ** (beta + 1.0) / (beta + 1.0)

    breaks = tuple(spec.L.breakpoints) + (-w_star, w_star)
    omega, w_ang = _angular_nodes(varpi, n, breaks)
    return 2.0 * varpi * float(np.sum(w_ang * spec.L(omega) * radial(omega)))


def lattice_homogeneous(
    spec: HomogeneousSpec, cell_average_radius: float = 0.0
) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Lattice form of a homogeneous spec: rho_+^(-h) L(t / rho_+).

    With ``cell_average_radius = R > 0``, lattice points with rho <= R carry
    the average of the continuum function over their unit cell instead of
    the point value (the origin cell in closed quasi-polar form).  Both
    variants lie in the same asymptotic class b = rho_+^(-h)(L + o(1)); the
    averaged one removes the leading discretization deficit of singular-row
    lattice sums, so rectangle lag-sums approach their continuum growth law
    at the rate the theory sets rather than the midpoint rule's.
    """

    def point(t, s):
        rho = np.maximum(1.0, quasi_norm(t, s, spec.varpi))
        return rho**-spec.h * spec.L(np.asarray(t, dtype=float) / rho)

    if cell_average_radius <= 0.0:
        return point

    R0 = cell_average_radius
    t_half = int(math.floor(R0))
    s_half = int(math.floor(R0**spec.varpi))
    x, wgl = _legendre(12)
    x = 0.5 * x  # cell offsets in [-1/2, 1/2]
    wgl = 0.5 * wgl
    patch = np.empty((2 * t_half + 1, 2 * s_half + 1))
    for it, tc in enumerate(range(-t_half, t_half + 1)):
        for js, sc in enumerate(range(-s_half, s_half + 1)):
            if tc == 0 and sc == 0:
                patch[it, js] = _origin_cell_integral(spec)
                continue
            uu = tc + x[:, None]
            vv = sc + x[None, :]
            rho = quasi_norm(uu, vv, spec.varpi)
            vals = rho**-spec.h * spec.L(uu / rho)
            patch[it, js] = float(np.sum(wgl[:, None] * wgl[None, :] * vals))

    def averaged(t, s):
        out = np.array(point(t, s), copy=True)
        ti = np.broadcast_to(np.rint(t).astype(int), out.shape)
        si = np.broadcast_to(np.rint(s).astype(int), out.shape)
        mask = (np.abs(ti) <= t_half) & (np.abs(si) <= s_half)
        if np.any(mask):
            out[mask] = patch[ti[mask] + t_half, si[mask] + s_half]
        return out

    return averaged


def blambda_bruteforce(
    b: Callable[[np.ndarray, np.ndarray], np.ndarray],
    lam: float,
    gamma: float,
    work_cap: int = 2**31,
) -> float:
    """Exact rectangle lag-sum B_lambda(gamma) = sum over pairs in the
    [1, lambda] x [1, lambda^gamma] rectangle of b at the lag difference.

    Uses the triangular-weight identity: the quadruple sum over pairs equals
    the single lag sum weighted by (T - |t|)(S - |s|).  Evaluated in s-chunks
    so only work, not memory, limits the size.
    """
    T = int(math.floor(lam))
    S = int(math.floor(lam**gamma))
    if T < 1 or S < 1:
        raise DomainError("rectangle must contain at least one site")
    work = (2 * T - 1) * (2 * S - 1)
    if work > work_cap:
        raise SizeCapError(f"lag grid of {work} entries exceeds cap {work_cap}")
    ts = np.arange(-(T - 1), T, dtype=float)
    wt = (T - np.abs(ts))[:, None]
    total = 0.0
    chunk = max(1, min(2 * S - 1, 2**24 // max(1, 2 * T - 1)))
    s_all = np.arange(-(S - 1), S, dtype=float)
    for lo in range(0, s_all.size, chunk):
        sc = s_all[lo : lo + chunk]
        ws = (S - np.abs(sc))[None, :]
        total += float(np.sum(wt * ws * b(ts[:, None], sc[None, :])))
    return total


# ---------------------------------------------------------------------------
# Limit constants of the partial-sum variance laws.
# ---------------------------------------------------------------------------


def limit_constant_c(
    e: ModelExponents,
    k: int,
    gamma: float,
    L12: L12Profile,
    boundary_tol: float = 1e-9,
    n_nodes: int = 96,
) -> ConvolutionValue:
    """Constant c with Var(S_lambda,gamma) ~ c * lambda^(2 H(gamma)).

    Every regime reduces to one row of the H/C table applied to the k-th
    power of the covariance's angular profile (h = k p1, varpi = gamma0),
    times the k! from the covariance of the k-th subordinated field:

    * well-balanced: k! int over (0,1]^4 of ((a* star a*)(t1-t2, s1-s2))^k,
    * slide regimes: k! times the one-axis triangular moments,
    * FBS regimes:   k! times the Theorem-3 style integrals on (0,1]^2 x R.
    """
    from .exponents import RegimeTag, classify_regime

    regime = classify_regime(e, k, gamma, boundary_tol)
    if regime.tag is RegimeTag.BOUNDARY:
        raise BoundaryError("no finite limit constant on a case boundary")
    if regime.tag is RegimeTag.SHORT_RANGE_CLT:
        raise DomainError("short-range regime: constant is the full covariance sum")
    h = k * e.p1
    varpi = e.gamma0
    kfac = float(math.factorial(k))
    Lk = L12.as_angular(power=k)
    rel_prof = k * L12.max_error / max(1e-300, float(np.min(np.abs(L12.values))))

    if regime.tag is RegimeTag.WELL_BALANCED:
        coarse = _radial_case_I(h, varpi, Lk, n_nodes // 2)
        fine = _radial_case_I(h, varpi, Lk, n_nodes)
        val = kfac * fine
        return ConvolutionValue(val, kfac * abs(fine - coarse) + abs(val) * rel_prof)
    if regime.tag is RegimeTag.UNBALANCED_PLUS_SLIDE:
        val = kfac * 2.0 * float(Lk(0.0)) * _triangular_moment(-k * e.p2)
        return ConvolutionValue(val, abs(val) * rel_prof)
    if regime.tag is RegimeTag.UNBALANCED_MINUS_SLIDE:
        val = kfac * (float(Lk(1.0)) + float(Lk(-1.0))) * _triangular_moment(-k * e.p1)
        return ConvolutionValue(val, abs(val) * rel_prof)
    if regime.tag is RegimeTag.UNBALANCED_PLUS_FBS:
        coarse, fine = _case_III_C(h, varpi, Lk, n_nodes // 2), _case_III_C(h, varpi, Lk, n_nodes)
    else:  # UNBALANCED_MINUS_FBS
        coarse, fine = _case_V_C(h, varpi, Lk, n_nodes // 2), _case_V_C(h, varpi, Lk, n_nodes)
    val = kfac * fine
    return ConvolutionValue(val, kfac * abs(fine - coarse) + abs(val) * rel_prof)


def fbs_covariance(
    H1: float, H2: float, x1: float, y1: float, x2: float, y2: float
) -> float:
    """Fractional Brownian sheet covariance at corners (x1,y1), (x2,y2)."""
    for H in (H1, H2):
        if not 0.0 < H <= 1.0:
            raise DomainError(f"Hurst parameter must lie in (0, 1], got {H}")
    for v in (x1, y1, x2, y2):
        if v < 0.0:
            raise DomainError("corner coordinates must be nonnegative")
    fx = x1 ** (2 * H1) + x2 ** (2 * H1) - abs(x1 - x2) ** (2 * H1)
    fy = y1 ** (2 * H2) + y2 ** (2 * H2) - abs(y1 - y2) ** (2 * H2)
    return 0.25 * fx * fy


# ---------------------------------------------------------------------------
# Covariance profiles: exact autoconvolution and Monte Carlo estimates.
# ---------------------------------------------------------------------------


@dataclass
class CovarianceProfile:
    """Autocovariance on a centered lag window.

    ``values[i, j] = r(i - t_half, j - s_half)``; ``se`` is per-lag standard
    error for empirical profiles, None for exact ones.
    """

    values: np.ndarray
    t_half: int
    s_half: int
    source: str
    se: np.ndarray | None = None
    kp1: float | None = None

    def r_at(self, t, s):
        t = np.asarray(t, dtype=int)
        s = np.asarray(s, dtype=int)
        return self.values[t + self.t_half, s + self.s_half]


def covariance_exact(
    kernel: CoefficientKernel,
    t_half: int | None = None,
    s_half: int | None = None,
    memory_cap: int = 2 << 30,
) -> CovarianceProfile:
    """Exact autocovariance r(t, s) = sum a(u, v) a(t + u, s + v) of the
    truncated kernel, via FFT correlation in row blocks that respect the
    memory cap."""
    a = kernel.values
    nt, ns = a.shape
    t_half = min(t_half if t_half is not None else nt - 1, nt - 1)
    s_half = min(s_half if s_half is not None else ns - 1, ns - 1)

    ctx_cols = ns + 2 * s_half
    # rows per block so the padded context stays within ~1/6 of the cap
    rows_budget = max(1, int(memory_cap / 6 / 8 / max(1, ctx_cols)) - 2 * t_half)
    out = np.zeros((2 * t_half + 1, 2 * s_half + 1))
    for b0 in range(0, nt, rows_budget):
        b1 = min(b0 + rows_budget, nt)
        block = a[b0:b1]
        ctx = np.zeros((b1 - b0 + 2 * t_half, ctx_cols))
        c0 = max(0, b0 - t_half)
        c1 = min(nt, b1 + t_half)
        ctx[(c0 - b0 + t_half) : (c1 - b0 + t_half), s_half : s_half + ns] = a[c0:c1]
        # valid correlation: out[dt, ds] += sum block[i,j] ctx[i+dt, j+ds]
        out += fftconvolve(ctx, block[::-1, ::-1], mode="valid")
    return CovarianceProfile(
        values=out,
        t_half=t_half,
        s_half=s_half,
        source="ExactKernelAutoconv",
        kp1=kernel.exponents.p1 if kernel.exponents else None,
    )


def covariance_at_lags(
    kernel: CoefficientKernel, lags: Sequence[tuple[int, int]]
) -> np.ndarray:
    """Exact r at selected lags by direct shifted products (no big FFT)."""
    a = kernel.values
    nt, ns = a.shape
    out = np.empty(len(lags))
    for i, (dt, ds) in enumerate(lags):
        t0, t1 = max(0, -dt), min(nt, nt - dt)
        s0, s1 = max(0, -ds), min(ns, ns - ds)
        if t0 >= t1 or s0 >= s1:
            out[i] = 0.0
            continue
        out[i] = float(
            np.sum(a[t0:t1, s0:s1] * a[t0 + dt : t1 + dt, s0 + ds : s1 + ds])
        )
    return out


def covariance_axis(kernel: CoefficientKernel, axis: str, max_lag: int) -> np.ndarray:
    """Exact r along one axis: r(t, 0) for axis='t', r(0, s) for axis='s'.

    Accumulates 1-D FFT autocorrelations of rows (or columns), which scales
    to kernels far too large for a 2-D transform.  Returns lags 0..max_lag.
    """
    a = kernel.values if axis == "s" else kernel.values.T
    n = a.shape[1]
    max_lag = min(max_lag, n - 1)
    nfft = sfft.next_fast_len(n + max_lag)
    acc = np.zeros(nfft // 2 + 1)
    chunk = max(1, 2**22 // nfft)
    for lo in range(0, a.shape[0], chunk):
        spec = sfft.rfft(a[lo : lo + chunk], nfft, axis=1)
        acc += np.sum(spec.real**2 + spec.imag**2, axis=0)
    corr = sfft.irfft(acc, nfft)
    return corr[: max_lag + 1]


def covariance_empirical(
    simulate_field: Callable[[int], np.ndarray],
    t_half: int,
    s_half: int,
    R: int,
    kp1: float | None = None,
) -> CovarianceProfile:
    """Replica-averaged sample autocovariance of a zero-mean field.

    ``simulate_field(r)`` must return replica r of the field; the spatial
    average per lag divides by the number of valid pairs (unbiased
    denominator).  Standard errors come from the across-replica spread.
    """
    if R < 2:
        raise DomainError("need at least two replicas")
    sums = None
    sq = None
    counts = None
    for r in range(R):
        x = simulate_field(r)
        nt, ns = x.shape
        if counts is None:
            tt = nt - np.abs(np.arange(-t_half, t_half + 1))
            ss = ns - np.abs(np.arange(-s_half, s_half + 1))
            counts = tt[:, None].astype(float) * ss[None, :]
        ctx = np.zeros((nt + 2 * t_half, ns + 2 * s_half))
        ctx[t_half : t_half + nt, s_half : s_half + ns] = x
        prod = fftconvolve(ctx, x[::-1, ::-1], mode="valid") / counts
        if sums is None:
            sums = prod
            sq = prod * prod
        else:
            sums += prod
            sq += prod * prod
    mean = sums / R
    var = np.maximum(sq / R - mean * mean, 0.0)
    se = np.sqrt(var / R)
    return CovarianceProfile(
        values=mean, t_half=t_half, s_half=s_half, source=f"Empirical(R={R})", se=se, kp1=kp1
    )


@dataclass
class RayDiagnostic:
    z: float
    radii: np.ndarray
    ratios: np.ndarray  # rho^(k p1) r / L_X(z)


@dataclass
class AxisSummability:
    axis: str
    exponent_kp: float
    partial_sums: np.ndarray
    sizes: np.ndarray
    verdict: str  # "divergent" | "convergent"
    doubling_ratios: np.ndarray


@dataclass
class CovarianceAsymptoteReport:
    rays: list[RayDiagnostic]
    axes: list[AxisSummability]


def covariance_asymptote_check(
    profile: CovarianceProfile,
    e: ModelExponents,
    k: int,
    L12: L12Profile,
    rays: Sequence[float] = (-0.8, 0.0, 0.8),
    radii: Sequence[float] = (64.0, 128.0, 256.0),
) -> CovarianceAsymptoteReport:
    """Tabulate rho^(k p1) r(t, s) / L_X(z) along rays, plus axis-sum growth.

    L_X(z) = k! * L12(z)^k: the angular profile of the k-th subordinated
    covariance.  Axis partial sums of |r| grow like N^(1 - k p_i) when
    k p_i < 1 and converge when k p_i > 1.
    """
    kfac = float(math.factorial(k))
    ray_out = []
    for z in rays:
        ratios = []
        used = []
        for rho in radii:
            t = int(round(z * rho))
            s_mag = (rho**2 * max(0.0, 1.0 - z * z)) ** (e.gamma0 / 2.0)
            s = int(round(s_mag))
            if abs(t) > profile.t_half or abs(s) > profile.s_half:
                continue
            rho_l = quasi_norm(t, s, e.gamma0)
            if rho_l == 0.0:
                continue
            lx = kfac * float(L12(t / rho_l)) ** k
            ratios.append(rho_l ** (k * e.p1) * float(profile.r_at(t, s)) / lx)
            used.append(rho_l)
        ray_out.append(RayDiagnostic(z, np.asarray(used), np.asarray(ratios)))

    axes = []
    for axis, kp in (("t", k * e.p1), ("s", k * e.p2)):
        half = profile.t_half if axis == "t" else profile.s_half
        lags = np.arange(-half, half + 1)
        vals = profile.r_at(lags, 0) if axis == "t" else profile.r_at(0, lags)
        sizes = []
        sums = []
        n = 4
        while n <= half:
            inside = np.abs(lags) <= n
            sizes.append(n)
            sums.append(float(np.sum(np.abs(vals[inside]))))
            n *= 2
        sums_arr = np.asarray(sums)
        ratios = sums_arr[1:] / sums_arr[:-1]
        verdict = "divergent" if (ratios.size and ratios[-1] > 1.02) else "convergent"
        axes.append(
            AxisSummability(axis, kp, sums_arr, np.asarray(sizes, dtype=float), verdict, ratios)
        )
    return CovarianceAsymptoteReport(ray_out, axes)
