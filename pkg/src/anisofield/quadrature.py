"""Quadrature utilities: Gauss rules on panels and a vectorized adaptive
2-D integrator.

The adaptive scheme drives batched evaluations: every refinement wave
collects the node grids of all pending panels into one call of the
integrand, which keeps numpy overhead per panel negligible.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import roots_jacobi, roots_legendre

from .errors import QuadratureError


@lru_cache(maxsize=64)
def _legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_legendre(n)
    return x, w


@lru_cache(maxsize=256)
def _jacobi(n: int, alpha: float, beta: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = roots_jacobi(n, alpha, beta)
    return x, w


def gauss_legendre_01(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_0^1 f(x) dx."""
    x, w = _legendre(n)
    return 0.5 * (x + 1.0), 0.5 * w


def gauss_jacobi_01(n: int, alpha_at_1: float, beta_at_0: float) -> tuple[np.ndarray, np.ndarray]:
    """Nodes/weights for int_0^1 f(x) (1-x)^alpha x^beta dx, weight exact."""
    x, w = _jacobi(n, alpha_at_1, beta_at_0)
    return 0.5 * (x + 1.0), w * 0.5 ** (alpha_at_1 + beta_at_0 + 1.0)


def quad_segment(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int = 32) -> float:
    """Plain Gauss-Legendre on [a, b] for a vectorized integrand."""
    x, w = _legendre(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return float(half * np.sum(w * f(mid + half * x)))


@dataclass
class AdaptiveResult:
    value: float
    error: float
    panels: int
    evals: int


def adaptive_2d(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    u_lo: float,
    u_hi: float,
    v_lo: float,
    v_hi: float,
    rel_tol: float = 1e-3,
    abs_tol: float = 0.0,
    max_panels: int = 20000,
    init_split: tuple[int, int] = (4, 4),
    aspect: float = 1.0,
    raise_on_budget: bool = True,
) -> AdaptiveResult:
    """Globally adaptive tensor-Gauss integration of f over a rectangle.

    Each panel carries an embedded error estimate |GL7x7 - GL4x4|.  The worst
    panels are bisected along their longer side (lengths compared after
    dividing the v-extent by ``aspect``, which matters for stretched
    anisotropic domains).  Integrand must accept and return arrays.
    """
    x4, w4 = _legendre(4)
    x7, w7 = _legendre(7)

    def evaluate(bounds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        # bounds: (m, 4) rows [ulo, uhi, vlo, vhi]
        m = bounds.shape[0]
        umid = 0.5 * (bounds[:, 0] + bounds[:, 1])
        uhal = 0.5 * (bounds[:, 1] - bounds[:, 0])
        vmid = 0.5 * (bounds[:, 2] + bounds[:, 3])
        vhal = 0.5 * (bounds[:, 3] - bounds[:, 2])

        def tensor(x: np.ndarray, w: np.ndarray) -> np.ndarray:
            nu = x.size
            uu = umid[:, None, None] + uhal[:, None, None] * x[None, :, None]
            vv = vmid[:, None, None] + vhal[:, None, None] * x[None, None, :]
            vals = f(
                np.broadcast_to(uu, (m, nu, nu)).ravel(),
                np.broadcast_to(vv, (m, nu, nu)).ravel(),
            ).reshape(m, nu, nu)
            ww = w[None, :, None] * w[None, None, :]
            return (uhal * vhal) * np.sum(vals * ww, axis=(1, 2))

        coarse = tensor(x4, w4)
        fine = tensor(x7, w7)
        return fine, np.abs(fine - coarse)

    # seed grid
    nu0, nv0 = init_split
    us = np.linspace(u_lo, u_hi, nu0 + 1)
    vs = np.linspace(v_lo, v_hi, nv0 + 1)
    seed = np.array(
        [[us[i], us[i + 1], vs[j], vs[j + 1]] for i in range(nu0) for j in range(nv0)]
    )
    vals, errs = evaluate(seed)
    bounds = seed
    evals = seed.shape[0] * (16 + 49)

    while bounds.shape[0] < max_panels:
        total = float(np.sum(vals))
        total_err = float(np.sum(errs))
        target = max(abs_tol, rel_tol * abs(total))
        if total_err <= target:
            return AdaptiveResult(total, total_err, bounds.shape[0], evals)
        # split the worst offenders (top eighth by error, at least 1)
        k = max(1, errs.size // 8)
        worst = np.argpartition(errs, -k)[-k:]
        keep = np.ones(errs.size, dtype=bool)
        keep[worst] = False
        children = []
        for idx in worst:
            ulo, uhi, vlo, vhi = bounds[idx]
            if (uhi - ulo) >= (vhi - vlo) / aspect:
                um = 0.5 * (ulo + uhi)
                children.append([ulo, um, vlo, vhi])
                children.append([um, uhi, vlo, vhi])
            else:
                vm = 0.5 * (vlo + vhi)
                children.append([ulo, uhi, vlo, vm])
                children.append([ulo, uhi, vm, vhi])
        child_bounds = np.array(children)
        child_vals, child_errs = evaluate(child_bounds)
        evals += child_bounds.shape[0] * (16 + 49)
        bounds = np.vstack([bounds[keep], child_bounds])
        vals = np.concatenate([vals[keep], child_vals])
        errs = np.concatenate([errs[keep], child_errs])

    total = float(np.sum(vals))
    total_err = float(np.sum(errs))
    if total_err > max(abs_tol, rel_tol * abs(total)) and raise_on_budget:
        raise QuadratureError(
            f"adaptive 2-D quadrature did not stabilize: error {total_err:.3g} "
            f"on value {total:.6g} after {bounds.shape[0]} panels"
        )
    return AdaptiveResult(total, total_err, bounds.shape[0], evals)


def adaptive_1d(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    rel_tol: float = 1e-6,
    abs_tol: float = 0.0,
    max_panels: int = 4000,
    init_split: int = 8,
) -> AdaptiveResult:
    """Adaptive Gauss-Legendre on an interval, same batching idea as 2-D."""
    x5, w5 = _legendre(5)
    x9, w9 = _legendre(9)

    def evaluate(bounds: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mid = 0.5 * (bounds[:, 0] + bounds[:, 1])
        hal = 0.5 * (bounds[:, 1] - bounds[:, 0])

        def rule(x, w):
            pts = mid[:, None] + hal[:, None] * x[None, :]
            return hal * np.sum(f(pts.ravel()).reshape(pts.shape) * w, axis=1)

        fine = rule(x9, w9)
        return fine, np.abs(fine - rule(x5, w5))

    edges = np.linspace(a, b, init_split + 1)
    bounds = np.column_stack([edges[:-1], edges[1:]])
    vals, errs = evaluate(bounds)
    evals = bounds.shape[0] * 14
    while bounds.shape[0] < max_panels:
        total = float(np.sum(vals))
        if float(np.sum(errs)) <= max(abs_tol, rel_tol * abs(total)):
            break
        k = max(1, errs.size // 8)
        worst = np.argpartition(errs, -k)[-k:]
        keep = np.ones(errs.size, dtype=bool)
        keep[worst] = False
        mids = 0.5 * (bounds[worst, 0] + bounds[worst, 1])
        children = np.vstack(
            [
                np.column_stack([bounds[worst, 0], mids]),
                np.column_stack([mids, bounds[worst, 1]]),
            ]
        )
        cv, ce = evaluate(children)
        evals += children.shape[0] * 14
        bounds = np.vstack([bounds[keep], children])
        vals = np.concatenate([vals[keep], cv])
        errs = np.concatenate([errs[keep], ce])
    return AdaptiveResult(float(np.sum(vals)), float(np.sum(errs)), bounds.shape[0], evals)


def smooth_cutoff(rho: np.ndarray, inner: float, outer: float) -> np.ndarray:
    """C^2 radial bump: 1 below ``inner``, 0 above ``outer`` (quintic blend)."""
    t = np.clip((np.asarray(rho, dtype=float) - inner) / (outer - inner), 0.0, 1.0)
    return 1.0 - t * t * t * (t * (6.0 * t - 15.0) + 10.0)
