"""Field synthesis: counter-based noise, FFT moving averages, exact moment
algebra and Appell subordination.

Reproducibility contract: every noise cell value is a pure function of
(seed, noise law, absolute cell coordinates).  Rows are independent Philox
streams keyed by (seed, row); within a row the column index addresses the
stream position, so any window of a conceptually infinite noise lattice can
be regenerated without storing it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.random import Philox
from scipy.signal import fftconvolve
from scipy.special import ndtri

from .errors import (
    DimensionMismatch,
    DomainError,
    MemoryCapError,
    RankError,
    SizeCapError,
)
from .kernels import CoefficientKernel

#: Column offset keeping stream positions nonnegative for negative origins.
_COL_OFFSET = 1 << 62
_ROW_OFFSET = 1 << 63
_MASK64 = (1 << 64) - 1

DEFAULT_FIELD_CAP = 2 << 30


# ---------------------------------------------------------------------------
# Noise laws and their exact moment/cumulant algebra.
# ---------------------------------------------------------------------------

_LAWS = ("gaussian", "rademacher", "uniform")


@dataclass(frozen=True)
class NoiseSpec:
    """Unit-variance centered i.i.d. noise law with closed-form moments."""

    law: str = "gaussian"

    def __post_init__(self):
        if self.law not in _LAWS:
            raise DomainError(f"unknown noise law {self.law!r}; choose from {_LAWS}")

    def moment(self, j: int) -> float:
        """E eps^j, exact."""
        if j < 0:
            raise DomainError("moment order must be nonnegative")
        if j % 2 == 1:
            return 0.0
        m = j // 2
        if self.law == "gaussian":
            return float(math.prod(range(1, j, 2))) if j else 1.0
        if self.law == "rademacher":
            return 1.0
        # uniform on [-sqrt(3), sqrt(3)]
        return 3.0**m / (j + 1.0)

    def moments(self, order: int) -> np.ndarray:
        return np.array([self.moment(j) for j in range(order + 1)])

    def cumulants(self, order: int) -> np.ndarray:
        return cumulants_from_moments(self.moments(order))


def cumulants_from_moments(moments: np.ndarray) -> np.ndarray:
    """kappa_n from m_n via kappa_n = m_n - sum C(n-1, j-1) kappa_j m_{n-j}."""
    n = len(moments) - 1
    kappa = np.zeros(n + 1)
    for i in range(1, n + 1):
        acc = moments[i]
        for j in range(1, i):
            acc -= math.comb(i - 1, j - 1) * kappa[j] * moments[i - j]
        kappa[i] = acc
    return kappa


def moments_from_cumulants(kappa: np.ndarray) -> np.ndarray:
    """Inverse Bell recursion: m_n = sum C(n-1, j-1) kappa_j m_{n-j}."""
    n = len(kappa) - 1
    m = np.zeros(n + 1)
    m[0] = 1.0
    for i in range(1, n + 1):
        m[i] = sum(math.comb(i - 1, j - 1) * kappa[j] * m[i - j] for j in range(1, i + 1))
    return m


# ---------------------------------------------------------------------------
# Lattice fields and noise sampling.
# ---------------------------------------------------------------------------


@dataclass
class LatticeField:
    """2-D array of field values anchored at absolute lattice coordinates.

    ``values[i, j]`` sits at lattice point ``(origin[0] + i, origin[1] + j)``.
    """

    values: np.ndarray
    origin: tuple[int, int]
    seed: int
    law: str = "gaussian"

    @property
    def dims(self) -> tuple[int, int]:
        return self.values.shape


def _row_words(seed: int, row: int, col0: int, n: int) -> np.ndarray:
    """n raw 64-bit words of the (seed, row) stream starting at column col0."""
    key = np.array([seed & _MASK64, (row + _ROW_OFFSET) & _MASK64], dtype=np.uint64)
    bg = Philox(key=key)
    base = col0 + _COL_OFFSET
    block, within = divmod(base, 4)
    if block:
        bg.advance(block)
    return bg.random_raw(within + n)[within:]


def _words_to_law(words: np.ndarray, law: str) -> np.ndarray:
    if law == "rademacher":
        return np.where(words >> np.uint64(63), 1.0, -1.0)
    u = (words >> np.uint64(11)).astype(np.float64) * 2.0**-53 + 2.0**-54
    if law == "gaussian":
        return ndtri(u)
    return (u - 0.5) * (2.0 * math.sqrt(3.0))  # uniform, unit variance


def sample_noise(
    dims: tuple[int, int],
    spec: NoiseSpec,
    seed: int,
    origin: tuple[int, int] = (0, 0),
    memory_cap: int = DEFAULT_FIELD_CAP,
) -> LatticeField:
    """I.i.d. noise window; each cell depends only on (seed, law, cell coords)."""
    nt, ns = dims
    if nt < 1 or ns < 1:
        raise DomainError("noise window must be nonempty")
    if 8 * nt * ns > memory_cap:
        raise MemoryCapError(f"noise window {dims} exceeds the memory cap")
    out = np.empty((nt, ns))
    for i in range(nt):
        words = _row_words(seed, origin[0] + i, origin[1], ns)
        out[i] = _words_to_law(words, spec.law)
    return LatticeField(values=out, origin=origin, seed=seed, law=spec.law)


def moving_average(kernel: CoefficientKernel, noise: LatticeField) -> LatticeField:
    """Y(t, s) = sum_{u,v} a(u, v) eps(t - u, s - v) on the window where the
    full truncated kernel fits inside the noise array (linear convolution,
    no wraparound, no edge tapering)."""
    nt, ns = noise.dims
    kt, ks = kernel.values.shape
    if nt < kt or ns < ks:
        raise DimensionMismatch(
            f"noise window {noise.dims} smaller than kernel support {(kt, ks)}"
        )
    vals = fftconvolve(noise.values, kernel.values, mode="valid")
    origin = (
        noise.origin[0] + kernel.t_max,
        noise.origin[1] + kernel.s_max,
    )
    return LatticeField(values=vals, origin=origin, seed=noise.seed, law=noise.law)


def field_window_for(
    kernel: CoefficientKernel, dims: tuple[int, int], anchor: tuple[int, int] = (1, 1)
) -> tuple[tuple[int, int], tuple[int, int]]:
    """Noise (dims, origin) so the moving average covers ``dims`` cells
    anchored at ``anchor`` (field cell (t, s) = anchor + index)."""
    nt, ns = dims
    kt, ks = kernel.values.shape
    noise_dims = (nt + kt - 1, ns + ks - 1)
    noise_origin = (anchor[0] - kernel.t_max, anchor[1] - kernel.s_max)
    return noise_dims, noise_origin


# ---------------------------------------------------------------------------
# Cumulants of the synthesized field and Appell polynomials.
# ---------------------------------------------------------------------------


def cumulants_of_Y(kernel: CoefficientKernel, spec: NoiseSpec, k: int) -> np.ndarray:
    """kappa_j(Y) = kappa_j(eps) * sum_{t,s} a(t,s)^j for j = 1..2k."""
    if k < 1:
        raise DomainError("subordination order must be >= 1")
    kap_eps = spec.cumulants(2 * k)
    return np.array(
        [0.0] + [kap_eps[j] * kernel.sum_power(j) for j in range(1, 2 * k + 1)]
    )


@dataclass(frozen=True)
class AppellPolynomial:
    """Monic degree-k polynomial with E A_k(xi) = 0 under the source law.

    ``coeffs[j]`` multiplies x^j; built from the source moments by truncated
    division of exp(ux) by the moment generating series.
    """

    degree: int
    coeffs: np.ndarray
    source_moments: np.ndarray

    def __call__(self, x):
        return np.polynomial.polynomial.polyval(np.asarray(x, dtype=float), self.coeffs)

    def derivative(self) -> np.ndarray:
        return np.polynomial.polynomial.polyder(self.coeffs)

    def expectation_under_source(self) -> float:
        """Contract coefficients against the source moments (should be ~0)."""
        return float(np.dot(self.coeffs, self.source_moments[: self.degree + 1]))


def appell_from_moments(moments: Sequence[float], k: int) -> AppellPolynomial:
    """Appell polynomial of degree k for a centered law with given moments.

    ``moments[j]`` = E xi^j for j = 0..k (m_0 = 1, m_1 = 0).  Coefficients
    come from the reciprocal of the truncated moment series:
    A_k(x)/k! = sum_j x^j/j! * r_{k-j} with sum m_i u^i/i! * sum r_i u^i = 1.
    """
    m = np.asarray(moments, dtype=float)
    if len(m) < k + 1:
        raise DomainError(f"need moments up to order {k}")
    if abs(m[1]) > 1e-12:
        raise DomainError("Appell construction assumes a centered base law")
    r = np.zeros(k + 1)
    r[0] = 1.0
    for n in range(1, k + 1):
        r[n] = -sum(m[i] / math.factorial(i) * r[n - i] for i in range(1, n + 1))
    coeffs = np.array(
        [math.factorial(k) / math.factorial(j) * r[k - j] for j in range(k + 1)]
    )
    return AppellPolynomial(degree=k, coeffs=coeffs, source_moments=m.copy())


def appell_for_field(kernel: CoefficientKernel, spec: NoiseSpec, k: int) -> AppellPolynomial:
    """Appell polynomial relative to the exact law of Y(0,0) = (a * eps)(0,0)."""
    kap = cumulants_of_Y(kernel, spec, k)
    return appell_from_moments(moments_from_cumulants(kap[: k + 1]), k)


def hermite_coeffs(k: int) -> np.ndarray:
    """Monomial coefficients of the probabilists' Hermite polynomial H_k."""
    h_prev = np.array([1.0])
    if k == 0:
        return h_prev
    h = np.array([0.0, 1.0])
    for j in range(1, k):
        nxt = np.zeros(j + 2)
        nxt[1:] = h
        nxt[: j] -= j * h_prev
        h_prev, h = h, nxt
    return h


def subordinate(fld: LatticeField, poly: AppellPolynomial) -> LatticeField:
    """Pointwise X = A_k(Y)."""
    return LatticeField(
        values=poly(fld.values), origin=fld.origin, seed=fld.seed, law=fld.law
    )


@dataclass(frozen=True)
class HermiteExpansion:
    """Truncated Hermite series G = sum_{j>=k} c_j H_j(x) / j! of rank k."""

    rank: int
    coeffs: dict[int, float]

    def __post_init__(self):
        if self.rank < 1:
            raise RankError("Hermite rank must be >= 1")
        if any(j < self.rank and c != 0.0 for j, c in self.coeffs.items()):
            raise RankError("nonzero coefficient below the declared rank")
        if self.coeffs.get(self.rank, 0.0) == 0.0:
            raise RankError(f"coefficient at the declared rank {self.rank} must be nonzero")

    def second_moment(self) -> float:
        """E G(Z)^2 = sum c_j^2 / j! for standard normal Z."""
        return sum(c * c / math.factorial(j) for j, c in self.coeffs.items())


def subordinate_general(fld: LatticeField, G: HermiteExpansion) -> LatticeField:
    """X = G(Y) for Gaussian Y normalized to unit variance."""
    if fld.law != "gaussian":
        raise DomainError("Hermite subordination requires Gaussian noise")
    order = max(G.coeffs)
    poly = np.zeros(order + 1)
    for j, c in G.coeffs.items():
        hj = hermite_coeffs(j)
        poly[: j + 1] += c / math.factorial(j) * hj
    vals = np.polynomial.polynomial.polyval(fld.values, poly)
    return LatticeField(values=vals, origin=fld.origin, seed=fld.seed, law=fld.law)


# ---------------------------------------------------------------------------
# Off-diagonal / diagonal decomposition oracle (tiny lattices).
# ---------------------------------------------------------------------------


@dataclass
class OffDiagDecomposition:
    off_diagonal: np.ndarray  # Y^{.k}
    diagonal: np.ndarray  # Z
    subordinated: np.ndarray  # A_k(Y), for the identity check
    field: np.ndarray  # Y itself


def offdiag_decomposition(
    kernel: CoefficientKernel,
    noise: LatticeField,
    k: int,
    size_cap: int = 1 << 22,
) -> OffDiagDecomposition:
    """Exact split A_k(Y) = Y^{.k} + Z over pairwise-distinct noise tuples.

    Off-diagonal sums reduce to power sums of the per-site weighted noise
    (inclusion-exclusion over coincidence patterns); the diagonal part
    follows the partition expansion with Appell polynomials of the base
    noise.  Supports k in {1, 2, 3} and brute-force-sized inputs only.
    """
    if k not in (1, 2, 3):
        raise DomainError("decomposition oracle supports k in {1, 2, 3}")
    nt, ns = noise.dims
    kt, ks = kernel.values.shape
    if nt < kt or ns < ks:
        raise DimensionMismatch("noise window smaller than kernel support")
    sites_t = nt - kt + 1
    sites_s = ns - ks + 1
    nwin = kt * ks
    if sites_t * sites_s * nwin**k > size_cap:
        raise SizeCapError("lattice/kernel too large for the brute-force oracle")

    spec = NoiseSpec(noise.law)
    # per-site window products: W[site, w] = a_w * eps_w(site)
    a_flat = kernel.values[::-1, ::-1].reshape(-1)  # a(t - u) ordering
    windows = np.lib.stride_tricks.sliding_window_view(noise.values, (kt, ks))
    eps = windows.reshape(sites_t, sites_s, nwin)
    W = a_flat[None, None, :] * eps

    S1 = W.sum(axis=2)
    S2 = (W * W).sum(axis=2)
    S3 = (W * W * W).sum(axis=2)

    m_eps = spec.moments(3)
    poly = appell_for_field(kernel, spec, k)
    Y = S1
    A_of_Y = poly(Y)

    if k == 1:
        off = Y.copy()
        diag = np.zeros_like(Y)
    elif k == 2:
        off = S1 * S1 - S2
        # Z = sum_w a_w^2 A_2(eps_w), A_2(x) = x^2 - m2
        diag = ((a_flat**2)[None, None, :] * (eps**2 - m_eps[2])).sum(axis=2)
    else:
        off = S1**3 - 3.0 * S2 * S1 + 2.0 * S3
        a2e = ((a_flat**2)[None, None, :] * (eps**2 - m_eps[2])).sum(axis=2)
        a3e = ((a_flat**3)[None, None, :] * (eps**2 - m_eps[2]) * eps).sum(axis=2)
        A3 = eps**3 - 3.0 * m_eps[2] * eps - m_eps[3]
        diag = ((a_flat**3)[None, None, :] * A3).sum(axis=2) + 3.0 * (S1 * a2e - a3e)
    return OffDiagDecomposition(off_diagonal=off, diagonal=diag, subordinated=A_of_Y, field=Y)
