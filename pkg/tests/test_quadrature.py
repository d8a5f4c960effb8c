import math

import numpy as np
import pytest
from scipy import integrate

from qbath import closed_form as cf
from qbath import quadrature as qd
from qbath.errors import InvalidParameters, ToleranceNotMet
from qbath.model import PoleDecomposition, im_alpha, to_physical_parameters

REF = PoleDecomposition(1, 5, 1, 1)
LOOSE = qd.QuadratureConfig(rtol=1e-8)


def rel(a, b):
    return abs(a - b) / abs(b)


class TestConfig:
    @pytest.mark.parametrize("kw", [
        dict(rtol=0), dict(atol=-1), dict(max_subdivisions=49), dict(tail="filon"),
    ])
    def test_rejects(self, kw):
        with pytest.raises(InvalidParameters):
            qd.QuadratureConfig(**kw)

    def test_temperature(self):
        assert qd.BathTemperature().is_zero
        assert not qd.BathTemperature(0.1).is_zero
        for bad in (-1.0, math.inf, math.nan):
            with pytest.raises(InvalidParameters):
                qd.BathTemperature(bad)
        with pytest.raises(InvalidParameters):
            qd.correlation(REF, -0.5)


class TestZeroTemperature:
    @pytest.mark.parametrize("poles", [REF, PoleDecomposition(1, 5, 1, 3), PoleDecomposition(2.0, 1.5, 0.7, 3.5)])
    def test_oracle_pairing(self, poles):
        assert rel(qd.correlation(poles), cf.mean_sq_position(poles)) < 1e-8
        assert rel(qd.velocity_correlation(poles), cf.mean_sq_velocity(poles)) < 1e-8
        assert rel(qd.mean_energy(poles), cf.mean_energy(poles)) < 1e-8
        assert rel(qd.free_energy(poles), cf.free_energy_T0(poles)) < 1e-8

    def test_weak_coupling_limits(self):
        # node rounding near a width-1e-6 peak is ~1e-11 relative, so ask for 1e-8 only
        p = PoleDecomposition(1, 5, 1, 1e-6)
        assert abs(qd.correlation(p, cfg=LOOSE) - 0.5) < 1e-5
        assert abs(qd.velocity_correlation(p, cfg=LOOSE) - 0.5) < 1e-5
        assert abs(qd.free_energy(p, cfg=LOOSE) - 0.5) < 1e-6

    def test_hbar_scaling(self):
        assert qd.correlation(REF, hbar=0.3) == pytest.approx(0.3 * qd.correlation(REF), rel=1e-10)

    def test_cutoff_strategy_agrees(self):
        cfg = qd.QuadratureConfig(tail="cutoff")
        # the analytic w^-p remainder is first order only; 1e-6 is what it buys
        assert rel(qd.correlation(REF, cfg=cfg), cf.mean_sq_position(REF)) < 1e-6
        assert rel(qd.free_energy(REF, cfg=cfg), cf.free_energy_T0(REF)) < 1e-6

    def test_tolerance_honesty(self):
        for poles in (REF, PoleDecomposition(1, 50, 1, 0.1), PoleDecomposition(1, 1.5, 1, 4)):
            for fn in (qd.correlation, qd.velocity_correlation, qd.free_energy):
                a = fn(poles, cfg=qd.QuadratureConfig(rtol=1e-8))
                b = fn(poles, cfg=qd.QuadratureConfig(rtol=5e-9))
                assert abs(a - b) <= 1e-8 * abs(a)

    def test_budget_exhaustion_reports(self):
        p = PoleDecomposition(1, 5, 1, 1e-7)
        cfg = qd.QuadratureConfig(rtol=1e-13, atol=1e-300, max_subdivisions=50)
        with pytest.raises(ToleranceNotMet) as info:
            qd.correlation(p, cfg=cfg)
        assert info.value.abserr > 0
        assert math.isfinite(info.value.value)


class TestIntegrandPositivity:
    @pytest.mark.parametrize("kT", [0.0, 0.1, 10.0])
    def test_sampled(self, kT):
        for poles in (REF, PoleDecomposition(1, 1.5, 1, 4), PoleDecomposition(1, 50, 1, 0.1)):
            spec = to_physical_parameters(poles)
            w = np.concatenate([np.linspace(1e-6, 20, 4001), np.geomspace(20, 1e8, 500)])
            vals = np.array([im_alpha(poles, x, spec) for x in w])
            if kT:
                vals = vals / np.tanh(w / (2 * kT))
            assert np.all(vals >= 0)


class TestNonzeroLag:
    @pytest.mark.parametrize("lag", [0.7, 3.0, -3.0])
    def test_against_weighted_quadpack(self, lag):
        spec = to_physical_parameters(REF)
        f = lambda w: (1 / (spec.K - w * w - 1j * w * spec.zeta / (1 - 1j * w * spec.tau))).imag / math.pi
        oracle = integrate.quad(f, 0, np.inf, weight="cos", wvar=abs(lag))[0]
        assert qd.correlation(REF, lag=lag) == pytest.approx(oracle, rel=1e-6, abs=1e-9)

    def test_lag_zero_is_maximum(self):
        c0 = qd.correlation(REF)
        for lag in (0.5, 2.0, 10.0):
            assert abs(qd.correlation(REF, lag=lag)) < c0


class TestFiniteTemperature:
    def test_equipartition(self):
        p = PoleDecomposition(1, 50, 1, 0.1)
        K = to_physical_parameters(p).K
        x2 = qd.correlation(p, 10.0)
        assert rel(x2, 10.0 / K) < 0.01

    def test_omega_zero_limit_is_continuous(self):
        # the analytic endpoint value must join the integrand smoothly
        spec = to_physical_parameters(REF)
        kT = 0.3
        limit = (2 * kT) * spec.zeta / spec.K ** 2 / math.pi
        w = 1e-6
        near = float(im_alpha(REF, w, spec)) / math.tanh(w / (2 * kT)) / math.pi
        assert near == pytest.approx(limit, rel=1e-6)

    def test_free_oscillator_limit(self):
        p = PoleDecomposition(1, 5, 1, 1e-6)
        kT = 0.1
        exact = kT * math.log(2 * math.sinh(1 / (2 * kT)))
        assert qd.free_oscillator_free_energy(1.0, kT) == pytest.approx(exact, rel=1e-14)
        assert abs(qd.free_energy(p, kT, cfg=LOOSE) - exact) < 1e-4

    def test_continuity_at_zero(self):
        assert abs(qd.free_energy(REF, 1e-6) - qd.free_energy(REF, 0.0)) < 1e-6

    def test_free_energy_decreasing(self):
        F = [qd.free_energy(REF, kT) for kT in (0.0, 1e-6, 0.1, 0.3, 1.0, 3.0)]
        assert all(a > b for a, b in zip(F, F[1:]))

    def test_mean_energy_increasing(self):
        H = [qd.mean_energy(REF, kT) for kT in (0.0, 0.1, 0.3, 1.0, 3.0)]
        assert all(a < b for a, b in zip(H, H[1:]))

    def test_entropy_third_law(self):
        for poles in (REF, PoleDecomposition(1, 1.5, 1, 4), PoleDecomposition(1, 50, 1, 0.1)):
            S = qd.entropy(poles, 1e-3)
            assert 0 <= S < 0.05

    def test_entropy_low_temperature_slope(self):
        # S ~ (pi/3) kT Im dlog alpha'(0), the linear specific heat of a dissipative oscillator
        W, g = 5.0, 1.0
        slope = g + 1 / W - 1 / (W + g)
        assert qd.entropy(REF, 1e-3) == pytest.approx(math.pi / 3 * slope * 1e-3, rel=1e-3)

    def test_entropy_classical(self):
        p = PoleDecomposition(1, 50, 1, 0.1)
        S = qd.entropy(p, 10.0)
        assert rel(S, 1 + math.log(10.0)) < 0.05

    def test_entropy_monotone(self):
        S = [qd.entropy(REF, kT) for kT in (0.1, 0.3, 1.0, 3.0)]
        assert all(a < b for a, b in zip(S, S[1:]))

    def test_entropy_matches_free_energy_difference(self):
        kT, h = 0.5, 1e-3
        fd = -(qd.free_energy(REF, kT + h) - qd.free_energy(REF, kT - h)) / (2 * h)
        assert qd.entropy(REF, kT) == pytest.approx(fd, rel=1e-5)

    def test_entropy_requires_positive_temperature(self):
        with pytest.raises(InvalidParameters):
            qd.entropy(REF, 0.0)
