"""Closed-form exponent algebra for anisotropic LRD moving-average fields.

Derives the covariance-decay pair (p1, p2), the summability index P and the
transition point gamma0 from the kernel-decay pair (q1, q2), classifies the
scaling regime of a (k, gamma) combination and evaluates the theoretical
variance exponent H(gamma) together with the Hurst pair of the limit field.

All arithmetic is plain 64-bit floating point; the boundary tolerance absorbs
rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import BoundaryError, DomainError

#: Default tolerance deciding when (k, gamma) sits on a case boundary.
DEFAULT_BOUNDARY_TOL = 1e-9


@dataclass(frozen=True)
class ModelExponents:
    """Derived parameter set of one kernel-decay pair.

    ``q1``/``q2`` control the horizontal/vertical kernel decay, ``p_i =
    q_i (2 - Q)`` the covariance decay, ``P = 1/p1 + 1/p2`` the LRD
    summability index and ``gamma0 = q1/q2 = p1/p2`` the transition point.
    """

    q1: float
    q2: float
    Q: float
    p1: float
    p2: float
    P: float
    gamma0: float

    @property
    def varpi(self) -> float:
        """Anisotropy exponent of the quasi-norm associated with the kernel."""
        return self.gamma0


class RegimeTag(Enum):
    WELL_BALANCED = "WellBalanced"
    UNBALANCED_PLUS_SLIDE = "UnbalancedPlusSlide"
    UNBALANCED_PLUS_FBS = "UnbalancedPlusFBS"
    UNBALANCED_MINUS_SLIDE = "UnbalancedMinusSlide"
    UNBALANCED_MINUS_FBS = "UnbalancedMinusFBS"
    SHORT_RANGE_CLT = "ShortRangeCLT"
    BOUNDARY = "Boundary"


@dataclass(frozen=True)
class Regime:
    """Classification record: tag, exponent H and (optional) Hurst pair."""

    tag: RegimeTag
    H: float | None
    hurst_pair: tuple[float, float] | None


def derive_exponents(q1: float, q2: float) -> ModelExponents:
    """Derive (Q, p1, p2, P, gamma0) from kernel decay rates (q1, q2).

    Raises
    ------
    DomainError
        If q_i <= 0 or Q = 1/q1 + 1/q2 is outside (1, 2).  Q < 2 is the
        square-summability (finite variance) condition, Q > 1 the LRD
        condition.
    """
    if not (q1 > 0.0 and q2 > 0.0) or not (math.isfinite(q1) and math.isfinite(q2)):
        raise DomainError(f"kernel decay rates must be positive finite, got ({q1}, {q2})")
    Q = 1.0 / q1 + 1.0 / q2
    if not 1.0 < Q < 2.0:
        raise DomainError(
            f"Q = 1/q1 + 1/q2 = {Q:.6g} outside (1, 2): "
            "field would be short-range dependent (Q <= 1) or have infinite variance (Q >= 2)"
        )
    p1 = q1 * (2.0 - Q)
    p2 = q2 * (2.0 - Q)
    return ModelExponents(
        q1=q1, q2=q2, Q=Q, p1=p1, p2=p2, P=1.0 / p1 + 1.0 / p2, gamma0=q1 / q2
    )


def exponents_from_p(p1: float, p2: float) -> ModelExponents:
    """Invert the covariance-decay pair: q_i = (p_i / 2)(1 + P)."""
    if not (p1 > 0.0 and p2 > 0.0):
        raise DomainError(f"covariance decay rates must be positive, got ({p1}, {p2})")
    P = 1.0 / p1 + 1.0 / p2
    return derive_exponents(0.5 * p1 * (1.0 + P), 0.5 * p2 * (1.0 + P))


def classify_regime(
    e: ModelExponents,
    k: int,
    gamma: float,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> Regime:
    """Classify the scaling regime of the subordinated field at scale ratio gamma.

    Case structure: gamma = gamma0 with k < P gives the well-balanced limit;
    for gamma > gamma0 the vertical index k*p2 splits slide (< 1) from
    FBS (> 1), symmetrically with k*p1 for gamma < gamma0; k > P gives the
    short-range CLT for every gamma.  Near-degenerate inputs (k close to P,
    or the side-determining k*p_i close to 1) yield the Boundary tag: the
    theory omits those cases, so the lab refuses rather than guesses.
    """
    if k < 1 or k != int(k):
        raise DomainError(f"subordination order must be a positive integer, got {k}")
    if not gamma > 0.0:
        raise DomainError(f"gamma must be positive, got {gamma}")

    if abs(k - e.P) <= boundary_tol:
        return Regime(RegimeTag.BOUNDARY, None, None)
    if k > e.P:
        return Regime(RegimeTag.SHORT_RANGE_CLT, 0.5 * (1.0 + gamma), None)

    # k < P from here on.
    if abs(gamma - e.gamma0) <= boundary_tol:
        return Regime(RegimeTag.WELL_BALANCED, 1.0 + e.gamma0 - 0.5 * k * e.p1, None)
    if gamma > e.gamma0:
        kp2 = k * e.p2
        if abs(kp2 - 1.0) <= boundary_tol:
            return Regime(RegimeTag.BOUNDARY, None, None)
        if kp2 < 1.0:
            h2 = 1.0 - 0.5 * kp2
            return Regime(RegimeTag.UNBALANCED_PLUS_SLIDE, 1.0 + gamma * h2, (1.0, h2))
        h1 = 1.0 + 0.5 * e.gamma0 - 0.5 * k * e.p1
        return Regime(RegimeTag.UNBALANCED_PLUS_FBS, h1 + 0.5 * gamma, (h1, 0.5))
    kp1 = k * e.p1
    if abs(kp1 - 1.0) <= boundary_tol:
        return Regime(RegimeTag.BOUNDARY, None, None)
    if kp1 < 1.0:
        h1 = 1.0 - 0.5 * kp1
        return Regime(RegimeTag.UNBALANCED_MINUS_SLIDE, gamma + h1, (h1, 1.0))
    h2 = 1.0 + 0.5 / e.gamma0 - 0.5 * k * e.p2
    return Regime(RegimeTag.UNBALANCED_MINUS_FBS, gamma * h2 + 0.5, (0.5, h2))


def theoretical_H(
    e: ModelExponents,
    k: int,
    gamma: float,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> float:
    """Theoretical variance exponent: Var(S_lambda) grows like lambda^(2H).

    Raises BoundaryError when the regime classification is Boundary.
    """
    regime = classify_regime(e, k, gamma, boundary_tol)
    if regime.tag is RegimeTag.BOUNDARY:
        raise BoundaryError(
            f"(k={k}, gamma={gamma}) within {boundary_tol} of an omitted case boundary"
        )
    assert regime.H is not None
    return regime.H


def hurst_pair(
    e: ModelExponents,
    k: int,
    gamma: float,
    boundary_tol: float = DEFAULT_BOUNDARY_TOL,
) -> tuple[float, float]:
    """Hurst pair (H1, H2) of the FBS-type covariance of the unbalanced limit.

    Defined for k < P and gamma away from gamma0; the partial-sum variance
    exponent decomposes as H(gamma) = H1 + gamma * H2 in all four cases.
    """
    regime = classify_regime(e, k, gamma, boundary_tol)
    if regime.tag is RegimeTag.BOUNDARY:
        raise BoundaryError(
            f"(k={k}, gamma={gamma}) within {boundary_tol} of an omitted case boundary"
        )
    if regime.hurst_pair is None:
        raise DomainError(
            f"no unbalanced Hurst pair in regime {regime.tag.value} "
            "(requires k < P and gamma != gamma0)"
        )
    return regime.hurst_pair
