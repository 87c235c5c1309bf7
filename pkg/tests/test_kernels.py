import math

import numpy as np
import pytest
from scipy.special import gammaln

from anisofield.errors import DomainError, MemoryCapError, SingularityError, TruncationError
from anisofield.exponents import derive_exponents
from anisofield.kernels import (
    AngularFunction,
    a_infinity,
    delta_kernel,
    frac_binomial_psi,
    generic_kernel,
    heat_angular_L0,
    heat_frac_kernel,
    heat_rw_rows,
    heat_rw_transitions,
    heat_rw_transitions_binomial,
    iso_angular_constant,
    iso_frac_kernel,
    psi_sequence,
    quasi_norm,
    quasi_norm_plus,
    quasi_triangle_constant,
    rw2d_transitions,
    separable_kernel,
)


class TestQuasiNorm:
    def test_euclidean(self):
        assert quasi_norm(3, 4, 1.0) == pytest.approx(5.0)
        assert quasi_norm(1, 1, 1.0) == pytest.approx(math.sqrt(2.0))

    def test_anisotropic(self):
        assert quasi_norm(0, 16, 2.0) == pytest.approx(4.0)

    def test_plus(self):
        assert quasi_norm_plus(0.1, 0.1, 1.0) == 1.0
        assert quasi_norm_plus(3, 4, 1.0) == 5.0

    def test_scaling_identity(self):
        rng = np.random.default_rng(0)
        for _ in range(100):
            varpi = rng.uniform(0.3, 3.0)
            t, s = rng.normal(size=2) * 10
            lam = rng.uniform(0.1, 20.0)
            lhs = quasi_norm(lam * t, lam**varpi * s, varpi)
            assert lhs == pytest.approx(lam * quasi_norm(t, s, varpi), rel=1e-12)

    def test_sign_symmetry(self):
        assert quasi_norm(2, -3, 0.7) == quasi_norm(2, 3, 0.7) == quasi_norm(-2, 3, 0.7)

    def test_quasi_triangle(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            varpi = rng.uniform(0.3, 3.0)
            c = quasi_triangle_constant(varpi)
            p1 = rng.normal(size=2) * 5
            p2 = rng.normal(size=2) * 5
            lhs = quasi_norm(p1[0] + p2[0], p1[1] + p2[1], varpi)
            rhs = quasi_norm(*p1, varpi) + quasi_norm(*p2, varpi)
            assert lhs <= c * rhs * (1 + 1e-12)


class TestAInfinity:
    def test_constant_angular_on_axis(self):
        e = derive_exponents(0.9, 1.8)
        L = AngularFunction.constant(2.5)
        assert a_infinity(1.0, 0.0, e, L) == pytest.approx(2.5)

    def test_homogeneity(self):
        e = derive_exponents(0.9, 1.8)
        L = AngularFunction.constant(2.5)
        for lam in (0.5, 2.0, 17.0):
            val = a_infinity(lam * 1.0, lam**e.gamma0 * 0.0, e, L)
            assert val == pytest.approx(lam**-e.q1 * 2.5, rel=1e-12)

    def test_heat_angular_vertical_ray(self):
        e = derive_exponents(0.9, 1.8)
        L = AngularFunction(lambda z: heat_angular_L0(z, 0.6, 0.5))
        assert a_infinity(0.0, 1.0, e, L) == 0.0

    def test_origin_raises(self):
        e = derive_exponents(0.9, 1.8)
        with pytest.raises(SingularityError):
            a_infinity(0.0, 0.0, e, AngularFunction.constant(1.0))


class TestGenericKernel:
    def test_center_value(self):
        e = derive_exponents(1.6, 1.6)
        L = AngularFunction.constant(1.0)
        k = generic_kernel(e, L, M=32)
        assert k.a_at(0, 0) == pytest.approx(1.0)  # rho_+(0,0) = 1

    def test_axis_power_law(self):
        e = derive_exponents(1.6, 1.6)
        k = generic_kernel(e, AngularFunction.constant(1.0), M=64)
        for t in (1, 5, 40):
            assert k.a_at(t, 0) == pytest.approx(abs(t) ** -1.6, rel=1e-12)

    def test_homogeneity_ratio_large_rho(self):
        e = derive_exponents(0.9, 1.8)
        k = generic_kernel(e, AngularFunction.constant(1.0), M=512, eps_trunc=0.5)
        # a(2t, 2^gamma0 s) / a(t, s) -> 2^-q1 at rho >= 100 within 1%
        t, s = 100, 10
        ratio = k.a_at(2 * t, int(round(2**e.gamma0 * s))) / k.a_at(t, s)
        assert ratio == pytest.approx(2.0**-e.q1, rel=0.01)

    def test_truncation_error(self):
        e = derive_exponents(0.9, 1.8)  # slow decay, tiny M, tight tolerance
        with pytest.raises(TruncationError):
            generic_kernel(e, AngularFunction.constant(1.0), M=4, eps_trunc=1e-4)

    def test_memory_cap(self):
        e = derive_exponents(1.6, 1.6)
        with pytest.raises(MemoryCapError):
            generic_kernel(e, AngularFunction.constant(1.0), M=40000)

    def test_tail_decreases_with_M(self):
        e = derive_exponents(1.6, 1.6)
        tails = [
            generic_kernel(e, AngularFunction.constant(1.0), M=m, eps_trunc=0.9).truncated_l2_tail
            for m in (16, 64, 256)
        ]
        assert tails[0] > tails[1] > tails[2]


class TestPsi:
    def test_psi0(self):
        assert frac_binomial_psi(0, 0.25) == 1.0

    def test_psi1(self):
        assert frac_binomial_psi(1, 0.25) == pytest.approx(-0.25)

    def test_psi2(self):
        assert frac_binomial_psi(2, 0.25) == pytest.approx(-0.09375)

    def test_generating_function(self):
        # (1 - z)^d partial series against the binomial theorem value
        d, z, n = 0.37, 0.4, 400
        series = float(np.polyval(psi_sequence(n, d)[::-1], z))
        assert series == pytest.approx((1 - z) ** d, abs=1e-10)

    def test_psi_minus_d_positive(self):
        assert np.all(psi_sequence(50, -0.3) > 0)


class TestRw2d:
    def test_step0(self):
        assert rw2d_transitions(0) == {(0, 0): 1.0}

    def test_step1(self):
        p = rw2d_transitions(1)
        assert p[(1, 0)] == pytest.approx(0.25)
        assert len(p) == 4

    def test_step2_origin(self):
        assert rw2d_transitions(2)[(0, 0)] == pytest.approx(0.25)

    def test_mass_and_parity(self):
        for j in (3, 6, 11):
            p = rw2d_transitions(j)
            assert sum(p.values()) == pytest.approx(1.0, abs=1e-12)
            assert all((u + v - j) % 2 == 0 for u, v in p)
            assert all(abs(u) + abs(v) <= j for u, v in p)


def iso_a00_series(d: float, J: int) -> float:
    """Independent oracle for the isotropic kernel's center value.

    Direct series over even steps, p_j(0,0) = (C(j, j/2) 2^-j)^2, plus the
    closed-form continuation of the remainder.
    """
    j = np.arange(0, J + 1, 2, dtype=float)
    logp = 2.0 * (gammaln(j + 1.0) - 2.0 * gammaln(j / 2.0 + 1.0) - j * math.log(2.0))
    psi = psi_sequence(J + 1, -d)[::2]
    head = float(np.sum(psi * np.exp(logp)))
    tail = J ** (d - 1.0) / (math.pi * math.gamma(d) * (1.0 - d))
    return head + tail


class TestIsoFracKernel:
    def test_center_series_oracle(self):
        d = 0.2
        a1 = iso_a00_series(d, 20000)
        a2 = iso_a00_series(d, 40000)
        assert abs(a1 - a2) < 1e-8
        k = iso_frac_kernel(d, M=16)
        assert k.a_at(0, 0) == pytest.approx(a2, rel=3e-4)
        assert k.a_at(0, 0) > 0

    def test_small_lag_series_oracle(self):
        # a(1, 1) against the direct walk series (j <= 600 plus tail),
        # which is independent of the rotated-coordinate assembly.
        d = 0.3
        J = 600
        psi = psi_sequence(J + 1, -d)
        total = 0.0
        for j in range(2, J + 1, 2):
            total += psi[j] * rw2d_probability_oracle(j, 1, 1)
        c = 2.0
        from scipy.special import gammainc

        tail = (
            math.gamma(1.0 - d)
            / (math.pi * math.gamma(d))
            * c ** (d - 1.0)
            * gammainc(1.0 - d, c / J)
        )
        k = iso_frac_kernel(d, M=8, j_exact=2048)
        assert k.a_at(1, 1) == pytest.approx(total + tail, rel=2e-3)

    def test_asymptotic_constant(self):
        d = 0.2
        k = iso_frac_kernel(d, M=256, eps_trunc=0.5)
        A = iso_angular_constant(d)
        t, s = 200, 0
        val = (t * t + s * s) ** (1.0 - d) * k.a_at(t, s)
        assert val == pytest.approx(A, rel=0.05)

    def test_dihedral_symmetry(self):
        k = iso_frac_kernel(0.25, M=12)
        v = k.values
        assert np.allclose(v, v[::-1, :], atol=0, rtol=0)
        assert np.allclose(v, v[:, ::-1], atol=0, rtol=0)
        assert np.allclose(v, v.T, atol=0, rtol=0)

    def test_domain(self):
        with pytest.raises(DomainError):
            iso_frac_kernel(0.6, M=8)


def rw2d_probability_oracle(j: int, u: int, v: int) -> float:
    """p_j(u, v) from the two independent +-1 walks in rotated coordinates."""
    w, r = u + v, u - v
    if (j + w) % 2 or abs(w) > j or abs(r) > j:
        return 0.0
    logb = lambda m: (
        gammaln(j + 1.0) - gammaln((j + m) / 2.0 + 1.0) - gammaln((j - m) / 2.0 + 1.0)
        - j * math.log(2.0)
    )
    return math.exp(logb(w) + logb(r))


class TestRotatedWalkIdentity:
    def test_matches_convolution(self):
        for j in (2, 5, 8):
            p = rw2d_transitions(j)
            for (u, v), prob in p.items():
                assert prob == pytest.approx(rw2d_probability_oracle(j, u, v), rel=1e-12)


class TestHeatWalk:
    def test_one_step(self):
        q = heat_rw_transitions(1, 0.5)
        assert q[0] == pytest.approx(0.5)
        assert q[1] == pytest.approx(0.25)
        assert q[-1] == pytest.approx(0.25)

    def test_two_step_origin(self):
        assert heat_rw_transitions(2, 0.5)[0] == pytest.approx(0.375)

    def test_mass(self):
        rows = heat_rw_rows(50, 0.3)
        sums = rows.sum(axis=1)
        assert np.all(np.abs(sums - 1.0) < 1e-12)

    def test_binomial_oracle(self):
        # Eq-form binomial cross-check against the recursion, u <= 30
        for theta in (0.3, 0.5, 0.8):
            for u in (1, 7, 30):
                rec = heat_rw_transitions(u, theta)
                bino = heat_rw_transitions_binomial(u, theta)
                for v, val in bino.items():
                    assert rec.get(v, 0.0) == pytest.approx(val, abs=1e-13)


class TestHeatAngular:
    def test_lower_branch(self):
        assert heat_angular_L0(-0.5, 0.6, 0.5) == 0.0

    def test_unit_value(self):
        assert heat_angular_L0(1.0, 0.5, 0.5) == pytest.approx(1.0 / math.pi, rel=1e-12)

    def test_continuity_at_zero(self):
        vals = heat_angular_L0(np.array([1e-3, 1e-2, 0.05]), 0.6, 0.5)
        assert vals[0] < vals[1] < vals[2]
        assert vals[0] < 1e-30


class TestHeatKernel:
    def test_one_sided(self):
        k = heat_frac_kernel(0.6, 0.5, M=16)
        assert k.t_min == 0
        assert k.a_at(-1, 0) == 0.0

    def test_a10(self):
        d, theta = 0.6, 0.5
        k = heat_frac_kernel(d, theta, M=16)
        assert k.a_at(1, 0) == pytest.approx(d * theta, rel=1e-12)

    def test_v_symmetry(self):
        k = heat_frac_kernel(0.6, 0.5, M=32)
        assert np.allclose(k.values, k.values[:, ::-1], rtol=0, atol=0)

    def test_angular_convergence(self):
        # rho^(3/2-d) a(u, v) approaches L0(z) along lattice rays
        d, theta = 0.5, 0.5
        k = heat_frac_kernel(d, theta, M=1100, eps_trunc=0.5)
        errs = []
        for rho in (64.0, 256.0, 1024.0):
            z = 0.6
            u = int(round(z * rho))
            v = int(round((rho * rho * (1 - z * z)) ** 0.25))
            rho_l = (u * u + v**4) ** 0.5
            z_l = u / rho_l
            val = rho_l ** (1.5 - d) * k.a_at(u, v)
            errs.append(abs(val - heat_angular_L0(z_l, d, theta)))
        assert errs[0] > errs[1] > errs[2]
        assert errs[2] < 0.02 * heat_angular_L0(1.0, d, theta)

    def test_exponents(self):
        k = heat_frac_kernel(0.6, 0.5, M=8)
        assert k.exponents.q1 == pytest.approx(0.9)
        assert k.exponents.q2 == pytest.approx(1.8)
        assert k.exponents.gamma0 == pytest.approx(0.5)

    def test_domain(self):
        with pytest.raises(DomainError):
            heat_frac_kernel(0.8, 0.5, M=8)
        with pytest.raises(DomainError):
            heat_frac_kernel(0.6, 1.0, M=8)


class TestSeparableKernel:
    def test_center(self):
        k = separable_kernel(0.3, 0.4, M=16)
        assert k.a_at(0, 0) == 1.0

    def test_a11(self):
        d1, d2 = 0.3, 0.4
        k = separable_kernel(d1, d2, M=16)
        assert k.a_at(1, 1) == pytest.approx(d1 * d2, rel=1e-12)

    def test_factorization(self):
        k = separable_kernel(0.2, 0.35, M=24)
        rng = np.random.default_rng(3)
        for _ in range(50):
            u, v = rng.integers(0, 24, size=2)
            lhs = k.a_at(u, v) * k.a_at(0, 0)
            rhs = k.a_at(u, 0) * k.a_at(0, v)
            assert lhs == pytest.approx(rhs, rel=1e-12)


class TestDelta:
    def test_values(self):
        k = delta_kernel()
        assert k.a_at(0, 0) == 1.0
        assert k.l2 == 1.0


class TestIntegrabilityDichotomy:
    def test_lattice_sum_growth(self):
        # sum over [-N, N]^2 of rho_+^-h diverges iff h < 1 + varpi
        varpi = 1.0
        for h, divergent in ((1.8, True), (2.2, False)):
            sums = []
            for N in (128, 256, 512):
                ts = np.arange(-N, N + 1, dtype=float)
                rho = np.maximum(1.0, np.hypot(ts[:, None], ts[None, :]))
                sums.append(float(np.sum(rho**-h)))
            r1, r2 = sums[1] / sums[0], sums[2] / sums[1]
            if divergent:
                # growth persists at a roughly stable geometric rate
                assert r1 > 1.1 and r2 > 1.1
            else:
                # gaps shrink geometrically at rate 2^(1 + varpi - h)
                assert r2 < 1.1
                gap_ratio = (r2 - 1.0) / (r1 - 1.0)
                assert gap_ratio == pytest.approx(2.0 ** (1.0 + varpi - h), rel=0.15)
