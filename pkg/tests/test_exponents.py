import numpy as np
import pytest

from anisofield.errors import BoundaryError, DomainError
from anisofield.exponents import (
    RegimeTag,
    classify_regime,
    derive_exponents,
    exponents_from_p,
    hurst_pair,
    theoretical_H,
)


def random_valid_pairs(rng, n):
    """(q1, q2) pairs with Q = 1/q1 + 1/q2 uniform in (1.05, 1.95)."""
    out = []
    while len(out) < n:
        q1 = rng.uniform(0.55, 8.0)
        q2 = rng.uniform(0.55, 8.0)
        Q = 1.0 / q1 + 1.0 / q2
        if 1.05 < Q < 1.95:
            out.append((q1, q2))
    return out


class TestDerive:
    def test_symmetric_example(self):
        e = derive_exponents(1.5, 1.5)
        assert e.Q == pytest.approx(4.0 / 3.0, rel=1e-14)
        assert e.p1 == pytest.approx(1.0, rel=1e-14)
        assert e.p2 == pytest.approx(1.0, rel=1e-14)
        assert e.P == pytest.approx(2.0, rel=1e-14)
        assert e.gamma0 == pytest.approx(1.0, rel=1e-14)

    def test_heat_family_example(self):
        # q1 = 3/2 - d, q2 = 2 q1 at d = 0.6
        e = derive_exponents(0.9, 1.8)
        assert e.Q == pytest.approx(5.0 / 3.0, rel=1e-14)
        assert e.p1 == pytest.approx(0.3, rel=1e-12)
        assert e.p2 == pytest.approx(0.6, rel=1e-12)
        assert e.P == pytest.approx(5.0, rel=1e-12)
        assert e.gamma0 == pytest.approx(0.5, rel=1e-14)

    def test_q_equal_one_rejected(self):
        with pytest.raises(DomainError):
            derive_exponents(1.0, 1.0)

    @pytest.mark.parametrize("q1,q2", [(0.4, 9.0), (-1.0, 2.0), (0.0, 2.0), (10.0, 10.0)])
    def test_out_of_domain(self, q1, q2):
        with pytest.raises(DomainError):
            derive_exponents(q1, q2)

    def test_p_inversion_roundtrip(self):
        rng = np.random.default_rng(7)
        for q1, q2 in random_valid_pairs(rng, 100):
            e = derive_exponents(q1, q2)
            back = exponents_from_p(e.p1, e.p2)
            assert back.q1 == pytest.approx(q1, rel=1e-12)
            assert back.q2 == pytest.approx(q2, rel=1e-12)

    def test_derived_invariants(self):
        rng = np.random.default_rng(8)
        for q1, q2 in random_valid_pairs(rng, 100):
            e = derive_exponents(q1, q2)
            assert e.p1 == pytest.approx(q1 * (2 - e.Q), rel=1e-12)
            assert e.gamma0 == pytest.approx(e.p1 / e.p2, rel=1e-12)


class TestClassify:
    def test_slide_example(self):
        e = derive_exponents(0.9, 1.8)
        r = classify_regime(e, 1, 1.0)
        assert r.tag is RegimeTag.UNBALANCED_PLUS_SLIDE  # k p2 = 0.6 < 1

    def test_fbs_example(self):
        e = derive_exponents(0.9, 1.8)
        r = classify_regime(e, 2, 1.0)
        assert r.tag is RegimeTag.UNBALANCED_PLUS_FBS  # k p2 = 1.2 > 1, k=2 < P=5

    def test_clt_example(self):
        e = derive_exponents(1.6, 1.6)
        r = classify_regime(e, 2, 0.7)
        assert r.tag is RegimeTag.SHORT_RANGE_CLT  # P = 5/3 < 2

    def test_well_balanced(self):
        e = derive_exponents(0.9, 1.8)
        assert classify_regime(e, 1, 0.5).tag is RegimeTag.WELL_BALANCED

    def test_boundary_kp_equal_one(self):
        # p2 = 0.5 exactly at q1 = q2 chosen so that 2*p2 = 1
        e = exponents_from_p(0.25, 0.5)
        assert classify_regime(e, 2, 2.0 * e.gamma0).tag is RegimeTag.BOUNDARY

    def test_boundary_k_equal_P(self):
        e = derive_exponents(1.5, 1.5)  # P = 2
        assert classify_regime(e, 2, 1.7).tag is RegimeTag.BOUNDARY

    def test_bad_inputs(self):
        e = derive_exponents(1.5, 1.5)
        with pytest.raises(DomainError):
            classify_regime(e, 0, 1.0)
        with pytest.raises(DomainError):
            classify_regime(e, 1, -0.5)


class TestTheoreticalH:
    def test_pinned_values(self):
        e = derive_exponents(0.9, 1.8)
        assert theoretical_H(e, 1, 0.5) == pytest.approx(1.35, abs=1e-12)
        assert theoretical_H(e, 1, 1.0) == pytest.approx(1.70, abs=1e-12)
        assert theoretical_H(e, 1, 0.25) == pytest.approx(1.10, abs=1e-12)
        e2 = derive_exponents(1.6, 1.6)
        assert theoretical_H(e2, 2, 2.0) == pytest.approx(1.5, abs=1e-12)

    def test_boundary_raises(self):
        e = derive_exponents(1.5, 1.5)  # P = 2
        with pytest.raises(BoundaryError):
            theoretical_H(e, 2, 0.7)

    def test_continuity_at_gamma0(self):
        # H is piecewise linear in gamma, so the one-sided limits at gamma0
        # are H1 + gamma0 * H2 evaluated on either side.
        rng = np.random.default_rng(11)
        checked = 0
        from tests_helpers_random import random_lrd_triples

        for e, k in random_lrd_triples(rng, 150):
            if min(abs(k * e.p1 - 1), abs(k * e.p2 - 1)) < 1e-3:
                continue
            h0 = theoretical_H(e, k, e.gamma0)
            delta = 1e-4 * e.gamma0
            for gamma in (e.gamma0 + delta, e.gamma0 - delta):
                h1, h2 = hurst_pair(e, k, gamma)
                assert abs((h1 + e.gamma0 * h2) - h0) < 1e-10
            checked += 1
        assert checked >= 100

    def test_sandwich(self):
        rng = np.random.default_rng(12)
        from tests_helpers_random import random_lrd_triples

        for e, k in random_lrd_triples(rng, 120):
            for gamma in (0.3 * e.gamma0, e.gamma0, 3.1 * e.gamma0):
                try:
                    h = theoretical_H(e, k, gamma)
                except BoundaryError:
                    continue
                assert 0.5 * (1 + gamma) < h < 1 + gamma

    def test_clt_exactly_half(self):
        e = derive_exponents(1.6, 1.6)
        for gamma in (0.2, 1.0, 3.0):
            assert theoretical_H(e, 2, gamma) == pytest.approx(0.5 * (1 + gamma), abs=0)


class TestHurstPair:
    def test_pinned_pairs(self):
        e = derive_exponents(0.9, 1.8)
        assert hurst_pair(e, 1, 1.0) == pytest.approx((1.0, 0.7), abs=1e-12)
        assert hurst_pair(e, 2, 1.0) == pytest.approx((0.95, 0.5), abs=1e-12)
        assert hurst_pair(e, 1, 0.25) == pytest.approx((0.85, 1.0), abs=1e-12)

    def test_H_decomposition(self):
        # H(gamma) = H1 + gamma * H2 in every unbalanced regime
        rng = np.random.default_rng(13)
        from tests_helpers_random import random_lrd_triples

        for e, k in random_lrd_triples(rng, 100):
            for gamma in (0.45 * e.gamma0, 2.2 * e.gamma0):
                try:
                    h1, h2 = hurst_pair(e, k, gamma)
                    h = theoretical_H(e, k, gamma)
                except BoundaryError:
                    continue
                assert h == pytest.approx(h1 + gamma * h2, rel=1e-12)
                assert 0.0 < h1 <= 1.0 and 0.0 < h2 <= 1.0

    def test_no_pair_at_gamma0(self):
        e = derive_exponents(0.9, 1.8)
        with pytest.raises(DomainError):
            hurst_pair(e, 1, 0.5)
