"""Resonance geometry, width law, overlap criterion, and critical fields."""

import math
import warnings

import numpy as np
import pytest

import qchaos.action_angle as aa
import qchaos.chirikov as ch
from qchaos.errors import (
    DomainError,
    NoResonanceError,
    RegimeWarning,
    SingularFormulaError,
)
from qchaos.potential import SystemParams


def _omega(chart):
    """Drive resonant with the n=3 orbit of the chart's system."""
    return chart.omega0_of_n(3.0)


class TestResonanceLocations:
    def test_resonance_condition(self, quark_chart):
        # drive at the orbital frequency of n=3 so the chart holds the k=1
        # resonance there and at least the k=2 one further out
        omega = quark_chart.omega0_of_n(3.0)
        found = ch.resonance_locations(omega, range(1, 6), quark_chart)
        assert len(found) >= 2
        for r in found:
            assert r.k * quark_chart.omega0_of_n(r.n_k) == pytest.approx(
                omega, rel=1e-10
            )
        assert [r.k for r in found] == sorted(r.k for r in found)

    def test_out_of_range_is_empty_not_error(self, quark_chart):
        # drive far above every orbital frequency in the chart: no resonance
        assert ch.resonance_locations(1e6, range(1, 4), quark_chart) == []

    def test_bad_harmonic_index(self, quark_chart):
        with pytest.raises(DomainError):
            ch.resonance_locations(0.5, [0], quark_chart)
        with pytest.raises(DomainError):
            ch.Resonance(k=1, n_k=-1.0, omega=0.1)

    def test_frequency_spacing_identity(self, quark_chart):
        # adjacent k:1 and (k+1):1 resonances differ in orbital frequency by
        # exactly omega/(k(k+1))
        omega = quark_chart.omega0_of_n(3.0)
        found = ch.resonance_locations(omega, range(1, 5), quark_chart)
        by_k = {r.k: r for r in found}
        for k in sorted(by_k):
            if k + 1 not in by_k:
                continue
            dw = quark_chart.omega0_of_n(by_k[k].n_k) - quark_chart.omega0_of_n(
                by_k[k + 1].n_k
            )
            assert dw == pytest.approx(omega / (k * (k + 1)), rel=1e-9)


@pytest.fixture(scope="module")
def width_setup(quark_params, quark_chart):
    omega = quark_chart.omega0_of_n(3.0)
    res = ch.resonance_locations(omega, [1], quark_chart)[0]
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        amps = aa.fourier_x_k(res.n_k, 3, quark_params)
    return res, amps


class TestWidth:
    @pytest.fixture
    def setup(self, width_setup):
        return width_setup

    def test_square_root_law(self, quark_chart, setup):
        res, amps = setup
        w1 = ch.resonance_width(1e-4, res, quark_chart, amps)
        w4 = ch.resonance_width(4e-4, res, quark_chart, amps)
        assert w4 == pytest.approx(2.0 * w1, rel=1e-12)

    def test_printed_form_is_linear(self, quark_chart, setup):
        res, amps = setup
        w1 = ch.resonance_width(1e-4, res, quark_chart, amps, printed_form=True)
        w2 = ch.resonance_width(2e-4, res, quark_chart, amps, printed_form=True)
        assert w2 == pytest.approx(2.0 * w1, rel=1e-12)

    def test_explicit_pendulum_value(self, quark_chart, setup):
        res, amps = setup
        eps = 3e-4
        expect = 2.0 * math.sqrt(
            eps * abs(amps[res.k]) / abs(quark_chart.domega0_dn(res.n_k))
        )
        assert ch.resonance_width(eps, res, quark_chart, amps) == pytest.approx(
            expect, rel=1e-12
        )

    def test_negative_epsilon_rejected(self, quark_chart, setup):
        res, amps = setup
        with pytest.raises(DomainError):
            ch.resonance_width(-1.0, res, quark_chart, amps)


class TestOverlapRatio:
    def test_zero_at_zero_drive(self, quark_params, quark_chart):
        r = ch.overlap_ratio(0.0, 1, quark_chart, quark_params, _omega(quark_chart))
        assert r == 0.0

    def test_strictly_increasing_in_epsilon(self, quark_params, quark_chart):
        eps = [1e-5, 1e-4, 1e-3, 1e-2]
        vals = [
            ch.overlap_ratio(e, 1, quark_chart, quark_params, _omega(quark_chart)) for e in eps
        ]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_missing_pair_raises(self, quark_params, quark_chart):
        with pytest.raises(NoResonanceError):
            ch.overlap_ratio(1e-3, 500, quark_chart, quark_params, _omega(quark_chart))

    def test_threshold_crossing_matches_numeric_solver(
        self, quark_params, quark_chart
    ):
        res = ch.epsilon_cr_numeric(3.0, _omega(quark_chart), quark_chart, quark_params)
        k = res.k_pair[0]
        ratio = ch.overlap_ratio(
            res.epsilon_cr, k, quark_chart, quark_params, _omega(quark_chart)
        )
        assert ratio == pytest.approx(ch.OVERLAP_THRESHOLD, rel=5e-4)


class TestWideOrbitClosedForm:
    def test_independent_re_evaluation(self):
        # spelled out term by term, independently of the implementation
        p = SystemParams(Z=0.15, lam=0.4)
        n, k, omega = 5.0, 1, 1.0
        A = (3.0 * math.pi * 0.4 / (2.0 * 2.0**0.5)) ** (2.0 / 3.0)
        bracket = 1.0 + 0.4 / (A * A * n ** (4.0 / 3.0)) * (
            5.0 * math.log(4.0 * A * n ** (2.0 / 3.0) / 0.4**0.5) - 7.0
        )
        expect = (
            0.07 * 0.15**2 * omega * math.pi**2 * 0.4 / 25.0 * (2.0 / 5.0) * bracket
        )
        got = ch.epsilon_cr_large_a(n, k, omega, p, check_regime=False)
        assert got.epsilon_cr == pytest.approx(expect, rel=1e-12)
        assert got.regime == "large_a"
        assert got.k_pair == (1, 2)

    def test_linear_in_omega(self, quark_params):
        e1 = ch.epsilon_cr_large_a(20.0, 1, 1.0, quark_params, check_regime=False)
        e2 = ch.epsilon_cr_large_a(20.0, 1, 2.0, quark_params, check_regime=False)
        assert e2.epsilon_cr == pytest.approx(2.0 * e1.epsilon_cr, rel=1e-12)

    def test_k_factor_limit(self, quark_params):
        # k(k+1)/((k+1)^2 + k^2) -> 1/2 as k grows
        base = ch.epsilon_cr_large_a(20.0, 1, 1.0, quark_params, check_regime=False)
        ref = base.epsilon_cr / (1 * 2 / (4 + 1))
        big = ch.epsilon_cr_large_a(20.0, 400, 1.0, quark_params, check_regime=False)
        assert big.epsilon_cr == pytest.approx(0.5 * ref, rel=1e-4)


class TestNarrowOrbitClosedForm:
    def test_independent_re_evaluation(self):
        p = SystemParams(Z=0.15, lam=0.4)
        n, k, omega = 5.0, 1, 1.0
        rootlam = 0.4**0.5
        s = (
            math.sin(0.5 * math.pi * 1 * rootlam) ** 2 / 1
            + math.sin(0.5 * math.pi * 2 * rootlam) ** 2 / 2
        )
        corr = (29.0 * 0.4 * n**4 - 9.0) / (29.0 * 0.4 * n**4 - 3.0)
        expect = 0.3 * omega * 0.4 / (1 * 2 * n * n) * corr / s
        got = ch.epsilon_cr_small_a(n, k, omega, p, check_regime=False)
        assert got.epsilon_cr == pytest.approx(expect, rel=1e-12)

    def test_linear_in_omega(self, quark_params):
        e1 = ch.epsilon_cr_small_a(5.0, 1, 1.0, quark_params, check_regime=False)
        e2 = ch.epsilon_cr_small_a(5.0, 1, 2.0, quark_params, check_regime=False)
        assert e2.epsilon_cr == pytest.approx(2.0 * e1.epsilon_cr, rel=1e-12)

    def test_n_ratio_near_four(self, quark_params):
        # the 1/n^2 prefactor gives a factor 4 between n=5 and n=10, modified
        # by the (29 lam n^4 - 9)/(29 lam n^4 - 3) corrections; reference
        # tabulated values give 1.215/0.3008 = 4.039 and 1.018e19/2.544e18 = 4.00
        e5 = ch.epsilon_cr_small_a(5.0, 1, 1.0, quark_params, check_regime=False)
        e10 = ch.epsilon_cr_small_a(10.0, 1, 1.0, quark_params, check_regime=False)
        ratio = e5.epsilon_cr / e10.epsilon_cr

        def corr(n):
            return (29.0 * 0.4 * n**4 - 9.0) / (29.0 * 0.4 * n**4 - 3.0)

        assert ratio == pytest.approx(4.0 * corr(5.0) / corr(10.0), rel=1e-12)
        assert abs(ratio - 4.039) / 4.039 < 0.05
        assert abs(ratio - 4.00) / 4.00 < 0.05

    def test_singular_when_both_sine_factors_vanish(self):
        # sqrt(lam) = 2 makes k*sqrt(lam) and (k+1)*sqrt(lam) even for all k
        p = SystemParams(Z=0.15, lam=4.0)
        with pytest.raises(SingularFormulaError):
            ch.epsilon_cr_small_a(5.0, 1, 1.0, p, check_regime=False)


class TestThreeDClosedForm:
    def test_domain_and_gate(self, quark_params):
        with pytest.raises(DomainError):
            ch.epsilon_cr_3d(5.0, 2.0, 1, 1.0, quark_params)  # L >= n/pi
        with pytest.warns(RegimeWarning):
            warnings.simplefilter("always")
            ch.epsilon_cr_3d(5.0, 0.5, 1, 1.0, quark_params, check_regime=True)

    def test_linear_in_omega_and_lambda(self, quark_params):
        base = ch.epsilon_cr_3d(20.0, 1.0, 1, 1.0, quark_params, check_regime=False)
        twice_w = ch.epsilon_cr_3d(20.0, 1.0, 1, 2.0, quark_params, check_regime=False)
        p2 = SystemParams(Z=0.15, lam=0.8)
        twice_lam = ch.epsilon_cr_3d(20.0, 1.0, 1, 1.0, p2, check_regime=False)
        assert twice_w.epsilon_cr == pytest.approx(2.0 * base.epsilon_cr, rel=1e-12)
        assert twice_lam.epsilon_cr == pytest.approx(2.0 * base.epsilon_cr, rel=1e-12)

    def test_monotone_decreasing_in_k(self, quark_params):
        vals = [
            ch.epsilon_cr_3d(20.0, 1.0, k, 1.0, quark_params, check_regime=False).epsilon_cr
            for k in range(1, 10)
        ]
        assert all(b < a for a, b in zip(vals, vals[1:]))

    def test_independent_re_evaluation(self, quark_params):
        n, L, k, omega = 20.0, 1.0, 1, 1.0
        root = 16.0 * math.pi**2 / 9.0
        denom = math.sqrt(root + 1.0) + math.sqrt(root + 0.25)
        expect = (
            0.07 * 0.4 * omega / (2.0 * math.pi * 400.0)
            * (1.0 - math.pi / 20.0)
            / denom
            * (1.0 - 1.0 / (4.0 * math.pi**4 * 400.0))
        )
        got = ch.epsilon_cr_3d(n, L, k, omega, quark_params, check_regime=False)
        assert got.epsilon_cr == pytest.approx(expect, rel=1e-12)


class TestHydrogenAssembled:
    Z = 0.15

    def test_low_drive_raises(self):
        with pytest.raises(NoResonanceError):
            ch.epsilon_cr_hydrogen(1.0, 1e-6, self.Z)

    def test_strictly_decreasing_in_n(self):
        omega = 4.0 * self.Z**2
        ns = np.arange(1.0, 20.1, 0.25)
        vals = [ch.epsilon_cr_hydrogen(n, omega, self.Z).epsilon_cr for n in ns]
        assert all(b < a for a, b in zip(vals, vals[1:]))


class TestNumericSolver:
    def test_result_sits_on_threshold(self, quark_params, quark_chart):
        omega = _omega(quark_chart)
        res = ch.epsilon_cr_numeric(3.0, omega, quark_chart, quark_params)
        assert res.regime == "numeric"
        assert res.epsilon_cr > 0.0
        r = ch.overlap_ratio(
            res.epsilon_cr, res.k_pair[0], quark_chart, quark_params, omega
        )
        assert r == pytest.approx(ch.OVERLAP_THRESHOLD, rel=5e-4)

    def test_threshold_override(self, quark_params, quark_chart):
        omega = _omega(quark_chart)
        lo = ch.epsilon_cr_numeric(3.0, omega, quark_chart, quark_params, threshold=1.0)
        hi = ch.epsilon_cr_numeric(3.0, omega, quark_chart, quark_params, threshold=2.5)
        # ratio ~ sqrt(eps): threshold 2.5 needs (2.5)^2 the drive of threshold 1
        assert hi.epsilon_cr / lo.epsilon_cr == pytest.approx(6.25, rel=1e-3)

    def test_no_resonance_error(self, quark_params, quark_chart):
        # a drive below the chart's frequency floor resonates with nothing
        with pytest.raises(NoResonanceError):
            ch.epsilon_cr_numeric(3.0, 0.01, quark_chart, quark_params)


class TestScan:
    OMEGA = 0.09  # closed-form scan modes use their own printed convention

    def test_row_bookkeeping(self, quark_params):
        ns = [1.0, 2.0, 3.0]
        rows = ch.scan_critical_field(
            ns, self.OMEGA, ["hydrogen", "small_a", "large_a"], quark_params
        )
        assert len(rows) == 9
        # ordered by mode then n
        assert [(r[1], r[0]) for r in rows] == [
            (m, n) for m in ("hydrogen", "small_a", "large_a") for n in ns
        ]
        for r in rows:
            assert isinstance(r[4], bool) or r[4] in (True, False)

    def test_failures_become_nan_gaps(self, quark_params):
        # hydrogen mode below the fundamental resonance cannot produce a value
        rows = ch.scan_critical_field([0.05], 1e-4, ["hydrogen"], quark_params)
        assert len(rows) == 1
        assert math.isnan(rows[0][2])

    def test_empty_or_unknown_mode(self, quark_params):
        with pytest.raises(DomainError):
            ch.scan_critical_field([1.0], self.OMEGA, [], quark_params)
        with pytest.raises(DomainError):
            ch.scan_critical_field([1.0], self.OMEGA, ["bogus"], quark_params)

    def test_parallel_matches_serial(self, quark_params):
        ns = np.arange(1.0, 6.0, 1.0)
        serial = ch.scan_critical_field(
            ns, self.OMEGA, ["hydrogen", "large_a"], quark_params, jobs=1
        )
        parallel = ch.scan_critical_field(
            ns, self.OMEGA, ["hydrogen", "large_a"], quark_params, jobs=4
        )
        assert serial == parallel
