"""Moving-average coefficient kernels with prescribed power-law decay.

Four families share the same quasi-norm/angular-function structure
``a(t, s) ~ rho(t, s)^(-q1) * L0(t / rho(t, s))``:

* ``generic_kernel``   -- the exact quasi-homogeneous form for any angular
  function (the o(1) remainder is set to zero by design).
* ``iso_frac_kernel``  -- inverse fractional Laplacian on Z^2, built from the
  binomial series over random-walk transition kernels plus a closed-form
  local-CLT tail for the high-order terms.
* ``heat_frac_kernel`` -- inverse fractional discrete heat operator, one-sided
  in the time-like coordinate.
* ``separable_kernel`` -- product of two 1-D fractional-integration filters;
  the control case with no scaling transition.

Kernels are stored dense on the bounding box of their support with an
explicit offset, so one-sided and thin anisotropic supports do not pay for
the full ``[-M, M]^2`` square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.linalg import blas as _blas
from scipy.special import gammainc, gammaln, roots_jacobi

from .errors import (
    ConvergenceError,
    DomainError,
    MemoryCapError,
    SingularityError,
    TruncationError,
)
from .exponents import ModelExponents, derive_exponents

#: Hard cap on a single dense kernel array (bytes).
DEFAULT_MEMORY_CAP = 2 << 30

#: Default bound on the relative squared-mass outside the truncation box.
#: Loose on purpose: LRD kernels shed l2 mass like a small negative power of
#: M, and scan code controls truncation through the margin policy instead.
DEFAULT_EPS_TRUNC = 0.5


def quasi_norm(t, s, varpi: float):
    """Anisotropic radius rho(t, s) = (|t|^2 + |s|^(2/varpi))^(1/2)."""
    if not varpi > 0.0:
        raise DomainError(f"varpi must be positive, got {varpi}")
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    out = np.sqrt(t * t + np.abs(s) ** (2.0 / varpi))
    return out if out.ndim else float(out)


def quasi_norm_plus(t, s, varpi: float):
    """1 v rho(t, s): the lattice-regularized quasi-norm."""
    out = np.maximum(1.0, quasi_norm(t, s, varpi))
    return out if np.ndim(out) else float(out)


def quasi_triangle_constant(varpi: float) -> float:
    """C with rho(t1+t2, s1+s2) <= C (rho(t1,s1) + rho(t2,s2))."""
    return max(1.0, 2.0 ** (1.0 / varpi - 1.0))


@dataclass(frozen=True)
class AngularFunction:
    """Bounded nonnegative direction profile on [-1, 1].

    ``breakpoints`` lists interior points where the evaluator is not smooth,
    so quadratures can split panels there.
    """

    evaluator: Callable[[np.ndarray], np.ndarray]
    continuity_class: str = "continuous"  # "continuous" | "piecewise"
    breakpoints: tuple[float, ...] = ()
    label: str = "custom"

    def __call__(self, z):
        z = np.asarray(z, dtype=float)
        out = np.asarray(self.evaluator(z), dtype=float)
        return out if out.ndim else float(out)

    @staticmethod
    def constant(value: float, label: str | None = None) -> "AngularFunction":
        if value < 0.0:
            raise DomainError("angular function must be nonnegative")
        return AngularFunction(
            evaluator=lambda z: np.full_like(np.asarray(z, dtype=float), value),
            continuity_class="continuous",
            label=label or f"const({value:g})",
        )


def heat_angular_L0(z, d: float, theta: float):
    """Angular profile of the fractional heat kernel.

    Vanishes on [-1, 0], is continuous at 0 (the essential decay of the
    exponential beats the diverging power) and equals
    z^(d-3/2) / (Gamma(d) sqrt(2 pi (1-theta))) * exp(-sqrt(z^-2 - 1)/(2(1-theta)))
    for z in (0, 1].
    """
    _check_heat_params(d, theta)
    z = np.asarray(z, dtype=float)
    if np.any(np.abs(z) > 1.0 + 1e-12):
        raise DomainError("angular argument must lie in [-1, 1]")
    out = np.zeros_like(z)
    pos = z > 0.0
    if np.any(pos):
        zp = np.clip(z[pos], None, 1.0)
        c = 1.0 / (math.gamma(d) * math.sqrt(2.0 * math.pi * (1.0 - theta)))
        with np.errstate(divide="ignore", over="ignore"):
            expo = -np.sqrt(np.maximum(1.0 / (zp * zp) - 1.0, 0.0)) / (2.0 * (1.0 - theta))
            out[pos] = c * zp ** (d - 1.5) * np.exp(expo)
    return out if out.ndim else float(out)


def heat_angular(d: float, theta: float) -> AngularFunction:
    return AngularFunction(
        evaluator=lambda z: heat_angular_L0(z, d, theta),
        continuity_class="continuous",
        label=f"heat(d={d:g},theta={theta:g})",
    )


def iso_angular_constant(d: float) -> float:
    """Gamma(1-d) / (pi Gamma(d)): the isotropic kernel's angular level."""
    return math.gamma(1.0 - d) / (math.pi * math.gamma(d))


@dataclass(frozen=True)
class CoefficientKernel:
    """Truncated moving-average coefficient array with provenance.

    ``values[i, j] = a(t_min + i, s_min + j)``; the support is contained in
    ``[-M, M]^2`` and all coefficients outside the stored box are zero.
    """

    values: np.ndarray
    t_min: int
    s_min: int
    M: int
    family: str
    params: dict = field(default_factory=dict)
    truncated_l2_tail: float = 0.0
    exponents: ModelExponents | None = None
    angular: AngularFunction | None = None

    @property
    def t_max(self) -> int:
        return self.t_min + self.values.shape[0] - 1

    @property
    def s_max(self) -> int:
        return self.s_min + self.values.shape[1] - 1

    @property
    def l2(self) -> float:
        """Sum of squared coefficients (variance of the synthesized field)."""
        return float(np.sum(self.values * self.values))

    def sum_power(self, p: int) -> float:
        """Sum of p-th powers of the coefficients."""
        return float(np.sum(self.values**p))

    def a_at(self, t, s):
        """Coefficient lookup, zero outside the stored box. Vectorized."""
        t = np.asarray(t, dtype=int)
        s = np.asarray(s, dtype=int)
        i = t - self.t_min
        j = s - self.s_min
        inside = (
            (i >= 0)
            & (i < self.values.shape[0])
            & (j >= 0)
            & (j < self.values.shape[1])
        )
        out = np.zeros(np.broadcast(i, j).shape)
        ii = np.broadcast_to(i, out.shape)[inside]
        jj = np.broadcast_to(j, out.shape)[inside]
        out[inside] = self.values[ii, jj]
        return out if out.ndim else float(out)


def _check_cap(shape: tuple[int, ...], cap: int) -> None:
    nbytes = 8 * int(np.prod([int(n) for n in shape]))
    if nbytes > cap:
        raise MemoryCapError(
            f"kernel array of shape {shape} needs {nbytes / 2**30:.2f} GiB, "
            f"cap is {cap / 2**30:.2f} GiB"
        )


def a_infinity(t, s, e: ModelExponents, L0: AngularFunction):
    """Exact generalized homogeneous form rho^(-q1) L0(t/rho), varpi = gamma0.

    Satisfies a_inf(lam*t, lam^gamma0 * s) = lam^(-q1) a_inf(t, s); raises
    SingularityError at the origin.
    """
    t_arr = np.asarray(t, dtype=float)
    s_arr = np.asarray(s, dtype=float)
    rho = quasi_norm(t_arr, s_arr, e.gamma0)
    rho = np.asarray(rho, dtype=float)
    if np.any(rho == 0.0):
        raise SingularityError("a_infinity undefined at the origin")
    out = rho ** (-e.q1) * L0(t_arr / rho)
    return out if out.ndim else float(out)


def angular_l2_integral(L0: AngularFunction, varpi: float, n: int = 64) -> float:
    """int_{-1}^{1} L0(z)^2 (1 - z^2)^(varpi/2 - 1) dz by Gauss-Jacobi."""
    alpha = varpi / 2.0 - 1.0
    nodes, weights = roots_jacobi(n, alpha, alpha)
    return float(np.sum(weights * L0(nodes) ** 2))


def generic_kernel(
    e: ModelExponents,
    L0: AngularFunction,
    M: int,
    eps_trunc: float = DEFAULT_EPS_TRUNC,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> CoefficientKernel:
    """Exact quasi-homogeneous kernel rho_+^(-q1) L0(t/rho_+) on [-M, M]^2.

    The squared-mass tail outside the box is estimated from the radial
    integral of rho^(-2 q1), which converges because 2 q1 > 1 + gamma0
    whenever Q < 2.
    """
    if M < 1:
        raise DomainError("truncation half-width must be >= 1")
    _check_cap((2 * M + 1, 2 * M + 1), memory_cap)
    ts = np.arange(-M, M + 1, dtype=float)
    tt, ss = np.meshgrid(ts, ts, indexing="ij")
    rho = np.maximum(1.0, quasi_norm(tt, ss, e.gamma0))
    values = rho ** (-e.q1) * L0(tt / rho)

    varpi = e.gamma0
    decay = 2.0 * e.q1 - 1.0 - varpi
    ang = angular_l2_integral(L0, varpi)
    tail = 2.0 * varpi * ang * M**-decay / decay
    total = float(np.sum(values * values)) + tail
    rel_tail = tail / total if total > 0 else math.inf
    if rel_tail > eps_trunc:
        raise TruncationError(
            f"estimated relative l2 tail {rel_tail:.3g} exceeds eps_trunc={eps_trunc:g}; "
            "increase M"
        )
    return CoefficientKernel(
        values=values,
        t_min=-M,
        s_min=-M,
        M=M,
        family="GenericAngular",
        params={"q1": e.q1, "q2": e.q2},
        truncated_l2_tail=rel_tail,
        exponents=e,
        angular=L0,
    )


# ---------------------------------------------------------------------------
# Fractional-integration binomial weights.
# ---------------------------------------------------------------------------


def frac_binomial_psi(j: int, d: float) -> float:
    """psi_j(d) = Gamma(j - d) / (Gamma(j + 1) Gamma(-d)): z^j weight of (1-z)^d."""
    if j < 0:
        raise DomainError("index must be nonnegative")
    return float(psi_sequence(j + 1, d)[j])


def psi_sequence(n: int, d: float) -> np.ndarray:
    """First n binomial weights of (1-z)^d via psi_j = psi_{j-1} (j-1-d)/j."""
    out = np.empty(n)
    out[0] = 1.0
    for j in range(1, n):
        out[j] = out[j - 1] * (j - 1 - d) / j
    return out


# ---------------------------------------------------------------------------
# Example 1: isotropic fractional Laplacian inverse.
# ---------------------------------------------------------------------------


def rw2d_transitions(j: int) -> dict[tuple[int, int], float]:
    """j-step transition probabilities of the nearest-neighbor walk on Z^2.

    Computed by iterated convolution of the 1-step law (1/4 on each of the
    four neighbors); returns the sparse nonzero map.  Support obeys
    |u| + |v| <= j with parity u + v = j (mod 2).
    """
    if j < 0:
        raise DomainError("step count must be nonnegative")
    n = 2 * j + 1
    p = np.zeros((n, n))
    p[j, j] = 1.0
    for _ in range(j):
        q = np.zeros_like(p)
        q[1:, :] += 0.25 * p[:-1, :]
        q[:-1, :] += 0.25 * p[1:, :]
        q[:, 1:] += 0.25 * p[:, :-1]
        q[:, :-1] += 0.25 * p[:, 1:]
        p = q
    out: dict[tuple[int, int], float] = {}
    for (i, k), val in np.ndenumerate(p):
        if val != 0.0:
            out[(i - j, k - j)] = float(val)
    return out


def _binomial_rows(j_count: int, half_width: int) -> np.ndarray:
    """Rows B[j, m] = P(S_j = m - half_width) for the symmetric +-1 walk.

    Computed from log-binomials; entries with mismatched parity or |m| > j
    are zero.
    """
    j = np.arange(j_count)[:, None].astype(float)
    m = (np.arange(2 * half_width + 1) - half_width)[None, :].astype(float)
    ok = (np.abs(m) <= j) & (np.mod(j + m, 2) == 0)
    jp = np.where(ok, j, 2.0)
    mp = np.where(ok, m, 0.0)
    logb = (
        gammaln(jp + 1.0)
        - gammaln((jp + mp) / 2.0 + 1.0)
        - gammaln((jp - mp) / 2.0 + 1.0)
        - jp * math.log(2.0)
    )
    rows = np.where(ok, np.exp(logb), 0.0)
    # b_j(-m) = b_j(m) bitwise, so kernel symmetries hold exactly in float.
    return 0.5 * (rows + rows[:, ::-1])


def iso_frac_kernel(
    d: float,
    M: int,
    j_exact: int = 4096,
    series_tol: float = 1e-3,
    eps_trunc: float = DEFAULT_EPS_TRUNC,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> CoefficientKernel:
    """Isotropic fractionally integrated kernel a = sum_j psi_j(-d) p_j.

    The walk factorizes in rotated coordinates (u+v, u-v) into two
    independent symmetric +-1 walks, so the first ``j_exact`` terms are
    assembled exactly from 1-D binomial rows.  The remaining terms are summed
    in closed form through the local CLT, which turns the tail into an
    incomplete-gamma expression whose relative error is O(1/j_exact).

    Satisfies q1 = q2 = 2(1 - d) with constant angular level
    Gamma(1-d) / (pi Gamma(d)).
    """
    if not 0.0 < d < 0.5:
        raise DomainError(f"isotropic order requires 0 < d < 1/2, got {d}")
    if M < 1:
        raise DomainError("truncation half-width must be >= 1")
    _check_cap((2 * M + 1, 2 * M + 1), memory_cap)

    # Residual of the local-CLT tail replacement; the O(1/j) relative error
    # of the CLT terms integrates to this scale.
    tail_bound = 4.0 / (math.pi * math.gamma(d)) * j_exact ** (d - 2.0) / (2.0 - d)
    if tail_bound > series_tol:
        raise ConvergenceError(
            f"series tail bound {tail_bound:.3g} exceeds tol={series_tol:g}; "
            "increase j_exact"
        )

    # Exact part: only radii <= 5 sqrt(j_exact) receive non-negligible mass
    # from the first j_exact walk steps.
    m0 = min(M, int(math.ceil(5.0 * math.sqrt(j_exact))))
    psi = psi_sequence(j_exact + 1, -d)  # all nonnegative for d > 0
    B = _binomial_rows(j_exact + 1, 2 * m0)
    C = np.sqrt(psi)[:, None] * B
    Ap = _blas.dsyrk(1.0, C, trans=1)  # upper triangle of C^T C
    Ap = Ap + np.triu(Ap, 1).T  # A'(w, r) = sum_j psi_j b_j(w) b_j(r)

    u = np.arange(-m0, m0 + 1)
    uu, vv = np.meshgrid(u, u, indexing="ij")
    exact = Ap[uu + vv + 2 * m0, uu - vv + 2 * m0]

    # Closed-form tail: sum_{j > j_exact} psi_j(-d) p_j(u, v) ~
    # (1/(pi Gamma(d))) c^(d-1) gamma(1-d, c/j_exact), c = u^2 + v^2.
    # Assembled in row chunks to keep the peak footprint near one array.
    ts = np.arange(-M, M + 1, dtype=float)
    coef = math.gamma(1.0 - d) / (math.pi * math.gamma(d))
    values = np.empty((2 * M + 1, 2 * M + 1))
    chunk = max(1, min(2 * M + 1, (1 << 24) // (2 * M + 1)))
    for lo in range(0, 2 * M + 1, chunk):
        hi = min(lo + chunk, 2 * M + 1)
        c = ts[lo:hi, None] ** 2 + ts[None, :] ** 2
        x = c / j_exact
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = coef * c ** (d - 1.0) * gammainc(1.0 - d, x)
        # Two-term expansion of the incomplete gamma near the origin.
        tail_small = (
            1.0
            / (math.pi * math.gamma(d))
            * j_exact ** (d - 1.0)
            * (1.0 / (1.0 - d) - x / (2.0 - d))
        )
        values[lo:hi] = np.where(x < 1e-8, tail_small, tail)
    values[M - m0 : M + m0 + 1, M - m0 : M + m0 + 1] += exact

    q1 = 2.0 * (1.0 - d)
    decay = 2.0 * q1 - 2.0  # radial integrability margin, varpi = 1
    trunc_tail = 2.0 * math.pi * coef**2 * M**-decay / decay
    total = float(np.sum(values * values)) + trunc_tail
    rel_tail = trunc_tail / total
    if rel_tail > eps_trunc:
        raise TruncationError(
            f"estimated relative l2 tail {rel_tail:.3g} exceeds eps_trunc={eps_trunc:g}"
        )
    e = derive_exponents(q1, q1)
    return CoefficientKernel(
        values=values,
        t_min=-M,
        s_min=-M,
        M=M,
        family="IsoFrac",
        params={"d": d, "j_exact": j_exact, "series_tail_bound": tail_bound},
        truncated_l2_tail=rel_tail,
        exponents=e,
        angular=AngularFunction.constant(coef, label=f"iso(d={d:g})"),
    )


# ---------------------------------------------------------------------------
# Example 2: fractional heat operator.
# ---------------------------------------------------------------------------


def _check_heat_params(d: float, theta: float) -> None:
    if not 0.0 < d < 0.75:
        raise DomainError(f"heat order requires 0 < d < 3/4, got {d}")
    if not 0.0 < theta < 1.0:
        raise DomainError(f"laziness requires 0 < theta < 1, got {theta}")


def heat_rw_rows(u_max: int, theta: float, v_max: int | None = None) -> np.ndarray:
    """Transition rows q_u(v) of the lazy walk, u = 0..u_max, v in [-v_max, v_max].

    Computed by the stable 1-D convolution recursion; row u is exact as long
    as v_max >= u, otherwise the Gaussian tail beyond v_max is dropped.
    """
    if u_max < 0:
        raise DomainError("step count must be nonnegative")
    if v_max is None:
        v_max = u_max
    n = 2 * v_max + 1
    rows = np.zeros((u_max + 1, n))
    rows[0, v_max] = 1.0
    half = 0.5 * (1.0 - theta)
    for u in range(1, u_max + 1):
        prev = rows[u - 1]
        cur = theta * prev
        cur[1:] += half * prev[:-1]
        cur[:-1] += half * prev[1:]
        rows[u] = cur
    # enforce q_u(-v) = q_u(v) bitwise (the += order above breaks the last bit)
    return 0.5 * (rows + rows[:, ::-1])


def heat_rw_transitions(u: int, theta: float) -> dict[int, float]:
    """Sparse map v -> q_u(v) for a single row of the lazy walk."""
    if not 0.0 < theta < 1.0:
        raise DomainError(f"laziness requires 0 < theta < 1, got {theta}")
    row = heat_rw_rows(u, theta)[u]
    return {v - u: float(p) for v, p in enumerate(row) if p != 0.0}


def heat_rw_transitions_binomial(u: int, theta: float) -> dict[int, float]:
    """Cross-check oracle: q_u(v) as a sum of products of binomials.

    Direct evaluation of q_u(v) = sum_j bin(u-j, u; theta) bin((v+j)/2, j; 1/2);
    suffers cancellation-free but exponent-underflow issues past u ~ 1000, so
    intended for small u only.
    """
    if not 0.0 < theta < 1.0:
        raise DomainError(f"laziness requires 0 < theta < 1, got {theta}")
    out: dict[int, float] = {}
    for v in range(-u, u + 1):
        total = 0.0
        for j in range(abs(v), u + 1):
            if (v + j) % 2:
                continue
            log_b1 = (
                gammaln(u + 1)
                - gammaln(u - j + 1)
                - gammaln(j + 1)
                + (u - j) * math.log(theta)
                + j * math.log(1.0 - theta)
            )
            log_b2 = (
                gammaln(j + 1)
                - gammaln((v + j) // 2 + 1)
                - gammaln((j - v) // 2 + 1)
                - j * math.log(2.0)
            )
            total += math.exp(log_b1 + log_b2)
        if total != 0.0 or v == 0:
            out[v] = total
    return out


def heat_v_extent(M: int, theta: float) -> int:
    """Half-width capturing the lazy walk's Gaussian spread after M steps."""
    return min(M, int(math.ceil(5.0 * math.sqrt((1.0 - theta) * max(M, 1)))) + 8)


def heat_frac_kernel(
    d: float,
    theta: float,
    M: int,
    v_max: int | None = None,
    eps_trunc: float = DEFAULT_EPS_TRUNC,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> CoefficientKernel:
    """Fractional heat kernel a(u, v) = psi_u(-d) q_u(v), zero for u < 0.

    Satisfies q1 = 3/2 - d, q2 = 2 q1 (so gamma0 = 1/2) with the continuous
    angular profile of ``heat_angular_L0``.  Stored on [0, M] x [-V, V] where
    V tracks the walk's sqrt(M) spread.
    """
    _check_heat_params(d, theta)
    if M < 1:
        raise DomainError("truncation half-width must be >= 1")
    if v_max is None:
        v_max = heat_v_extent(M, theta)
    _check_cap((M + 1, 2 * v_max + 1), memory_cap)
    rows = heat_rw_rows(M, theta, v_max)
    psi = psi_sequence(M + 1, -d)
    values = psi[:, None] * rows

    gd = math.gamma(d)
    # Tail of sum_{u > M} psi_u^2 ||q_u||_2^2 with psi_u ~ u^(d-1)/Gamma(d)
    # and ||q_u||_2^2 ~ 1/(2 sqrt(pi (1-theta) u)).
    trunc_tail = (
        M ** (2.0 * d - 1.5)
        / ((1.5 - 2.0 * d) * 2.0 * gd**2 * math.sqrt(math.pi * (1.0 - theta)))
    )
    total = float(np.sum(values * values)) + trunc_tail
    rel_tail = trunc_tail / total
    if rel_tail > eps_trunc:
        raise TruncationError(
            f"estimated relative l2 tail {rel_tail:.3g} exceeds eps_trunc={eps_trunc:g}"
        )
    q1 = 1.5 - d
    e = derive_exponents(q1, 2.0 * q1)
    return CoefficientKernel(
        values=values,
        t_min=0,
        s_min=-v_max,
        M=M,
        family="HeatFrac",
        params={"d": d, "theta": theta},
        truncated_l2_tail=rel_tail,
        exponents=e,
        angular=heat_angular(d, theta),
    )


# ---------------------------------------------------------------------------
# Remark-style control: separable fractional integration.
# ---------------------------------------------------------------------------


def separable_kernel(
    d1: float,
    d2: float,
    M: int,
    eps_trunc: float = DEFAULT_EPS_TRUNC,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> CoefficientKernel:
    """Separable control kernel a(u, v) = psi_u(-d1) psi_v(-d2) on Z_+^2.

    Partial sums of the resulting field scale like a fractional Brownian
    sheet with H_i = d_i + 1/2 for every gamma: no scaling transition.
    """
    for d in (d1, d2):
        if not 0.0 < d < 0.5:
            raise DomainError(f"separable orders require 0 < d < 1/2, got {d}")
    if M < 1:
        raise DomainError("truncation half-width must be >= 1")
    _check_cap((M + 1, M + 1), memory_cap)
    c1 = psi_sequence(M + 1, -d1)
    c2 = psi_sequence(M + 1, -d2)
    values = np.outer(c1, c2)

    def rel_tail_1d(c: np.ndarray, d: float) -> float:
        tail = M ** (2.0 * d - 1.0) / ((1.0 - 2.0 * d) * math.gamma(d) ** 2)
        total = float(np.sum(c * c)) + tail
        return tail / total

    rel_tail = rel_tail_1d(c1, d1) + rel_tail_1d(c2, d2)
    if rel_tail > eps_trunc:
        raise TruncationError(
            f"estimated relative l2 tail {rel_tail:.3g} exceeds eps_trunc={eps_trunc:g}"
        )
    return CoefficientKernel(
        values=values,
        t_min=0,
        s_min=0,
        M=M,
        family="Separable",
        params={"d1": d1, "d2": d2, "H1": d1 + 0.5, "H2": d2 + 0.5},
        truncated_l2_tail=rel_tail,
        exponents=None,
        angular=None,
    )


def delta_kernel(M: int = 0) -> CoefficientKernel:
    """White-noise control: a(0,0) = 1, zero elsewhere."""
    values = np.zeros((2 * M + 1, 2 * M + 1))
    values[M, M] = 1.0
    return CoefficientKernel(
        values=values, t_min=-M, s_min=-M, M=max(M, 1), family="Delta", params={}
    )
