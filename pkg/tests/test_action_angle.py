"""Action-angle tests: definitional quadrature as the oracle for the
closed forms, Kepler identities for the hydrogen limit, Bessel-form
amplitudes for the Fourier machinery, and chart round trips."""

import math
import warnings

import numpy as np
import pytest
from scipy.integrate import quad

from qchaos import action_angle as aa
from qchaos.errors import RangeError, RegimeWarning
from qchaos.potential import SystemParams, potential_1d, turning_points_1d


def action_oracle(E, p):
    """Direct (1/pi) * integral sqrt(2(E-V)) dx with adaptive quadrature."""
    tp = turning_points_1d(E, p)
    lo = 0.0 if p.lam > 0 or True else tp.c
    f = lambda x: math.sqrt(max(0.0, 2.0 * (E - potential_1d(x, p))))
    val, _ = quad(f, lo, tp.a, epsabs=1e-13, epsrel=1e-12, limit=300)
    return val / math.pi


class TestAction1D:
    def test_closed_vs_quadrature_lattice(self, quark_params):
        # 50-point lattice across (E, Z, lam)
        count = 0
        for Z in (0.1, 0.15, 0.5, 1.0, 2.0):
            for lam in (0.05, 0.4):
                p = SystemParams(Z=Z, lam=lam)
                for E in (-0.5, -0.1, 0.3, 1.0, 5.0):
                    nc = aa.action_1d_closed(E, p)
                    nq = aa.action_1d_quadrature(E, p)
                    assert nc == pytest.approx(nq, rel=1e-8), (Z, lam, E)
                    count += 1
        assert count == 50

    def test_quadrature_vs_independent_oracle(self, quark_params):
        for E in (-0.5, 1.0, 4.0):
            assert aa.action_1d_quadrature(E, quark_params) == pytest.approx(
                action_oracle(E, quark_params), rel=1e-9
            )

    def test_hydrogen_identities(self):
        Z = 0.15
        p = SystemParams(Z=Z, lam=0.0)
        for E in (-0.8, -0.3, -0.05):
            n_ref = Z / math.sqrt(-2.0 * E)
            assert aa.action_1d_quadrature(E, p) == pytest.approx(n_ref, rel=1e-9)
            assert aa.omega0_exact(E, p) == pytest.approx(Z**2 / n_ref**3, rel=1e-9)

    def test_energy_of_action_round_trip(self, quark_params):
        for n in (0.3, 1.0, 7.0):
            E = aa.energy_of_action(n, quark_params)
            assert aa.action_1d_closed(E, quark_params) == pytest.approx(n, rel=1e-10)


class TestFrequency:
    def test_omega0_vs_action_derivative(self, quark_params):
        h = 1e-6
        for E in (0.2, 1.0, 4.0):
            dn_dE = (
                aa.action_1d_closed(E + h, quark_params)
                - aa.action_1d_closed(E - h, quark_params)
            ) / (2 * h)
            assert aa.omega0_exact(E, quark_params) == pytest.approx(
                1.0 / dn_dE, rel=1e-6
            )

    def test_omega0_vs_chart_derivative(self, quark_params):
        # interpolation error sets the floor here, so use a dense chart
        chart = aa.ActionAngleChart.build(
            quark_params, n_min=0.02, n_max=60.0, nodes=4096
        )
        for n in (0.5, 3.0, 15.0):
            E = chart.E_of_n(n)
            h = 1e-5 * max(1.0, abs(E))
            fd = 2 * h / (chart.n_of_E(E + h) - chart.n_of_E(E - h))
            assert aa.omega0_exact(E, quark_params) == pytest.approx(fd, rel=1e-6)

    def test_asymptotic_frequencies_match_their_energies(self, quark_params):
        # omega0 = dH0/dn must hold within each printed asymptotic family
        h = 1e-5
        for n in (40.0, 80.0):  # wide-orbit regime
            fd = (
                aa.h0_large_a(n + h, quark_params, check_regime=False)
                - aa.h0_large_a(n - h, quark_params, check_regime=False)
            ) / (2 * h)
            assert aa.omega0_large_a(n, quark_params, check_regime=False) == pytest.approx(
                fd, rel=1e-5
            )
        for n in (0.05, 0.1):  # narrow-orbit regime
            fd = (
                aa.h0_small_a(n + 1e-7, quark_params, check_regime=False)
                - aa.h0_small_a(n - 1e-7, quark_params, check_regime=False)
            ) / 2e-7
            assert aa.omega0_small_a(n, quark_params, check_regime=False) == pytest.approx(
                fd, rel=1e-5
            )

    def test_3d_asymptotic_frequency(self, quark_params):
        p = SystemParams(Z=0.15, lam=0.4, L=0.5)
        h = 1e-5
        for n in (5.0, 20.0):
            fd = (
                aa.h0_3d(n + h, p.L, p, check_regime=False)
                - aa.h0_3d(n - h, p.L, p, check_regime=False)
            ) / (2 * h)
            assert aa.omega0_3d(n, p.L, p, check_regime=False) == pytest.approx(
                fd, rel=1e-5
            )

    def test_regime_warning(self, quark_params):
        with pytest.warns(RegimeWarning):
            warnings.simplefilter("always")
            aa.h0_large_a(1.0, quark_params)  # orbit not wide at n=1


class TestFourier:
    def test_hydrogen_vs_bessel(self):
        Z = 0.15
        p = SystemParams(Z=Z, lam=0.0)
        n = 2.0
        amps = aa.fourier_x_k(n, 6, p)
        assert amps[0] == pytest.approx(1.5 * n**2 / Z, rel=1e-7)
        for k in range(1, 7):
            ref = aa.kepler_fourier_x_k(n, k, Z)
            assert amps[k] == pytest.approx(ref, rel=1e-6), k

    def test_parseval_reconstruction(self, quark_params):
        n = 3.0
        amps = aa.fourier_x_k(n, 40, quark_params)
        E = aa.energy_of_action(n, quark_params)
        xs, thetas, _, _ = aa._orbit_theta_samples(E, quark_params)
        rec = amps.reconstruct(thetas)
        a = turning_points_1d(E, quark_params).a
        # the k^(-5/3) amplitude decay (collision cusp) limits pointwise
        # truncation error; 40 harmonics reach ~1.6e-2 of the orbit size
        err40 = np.max(np.abs(rec - xs)) / a
        assert err40 < 3e-2
        # doubling the harmonic count must shrink the truncation error
        amps80 = aa.fourier_x_k(n, 80, quark_params)
        err80 = np.max(np.abs(amps80.reconstruct(thetas) - xs)) / a
        assert err80 < err40

    def test_amplitude_decay(self, quark_params):
        amps = aa.fourier_x_k(5.0, 30, quark_params)
        ratio = abs(amps[24]) / abs(amps[3])
        assert ratio < (24 / 3.0) ** (-1.4)


class TestAction3D:
    def test_closed_vs_quadrature(self):
        for L in (0.3, 0.8):
            p = SystemParams(Z=0.15, lam=0.4, L=L)
            for E in (1.0, 3.0):
                nc = aa.action_3d_closed(E, p)
                nq = aa.action_3d_quadrature(E, p)
                assert nc == pytest.approx(nq, rel=1e-8), (L, E)

    def test_centrifugal_convention_flag(self):
        p_half = SystemParams(Z=0.15, lam=0.4, L=0.8, centrifugal="half")
        p_full = SystemParams(Z=0.15, lam=0.4, L=0.8, centrifugal="full")
        n_half = aa.action_3d_closed(2.0, p_half)
        n_full = aa.action_3d_closed(2.0, p_full)
        assert n_full < n_half  # stronger barrier shrinks the action


class TestChart:
    def test_round_trip(self, quark_chart):
        for n in (0.1, 1.0, 10.0, 50.0):
            E = quark_chart.E_of_n(n)
            assert quark_chart.n_of_E(E) == pytest.approx(n, rel=1e-10)

    def test_monotone(self, quark_chart):
        assert np.all(np.diff(quark_chart.n_grid) > 0)
        assert np.all(np.diff(quark_chart.omega0_grid) < 0)

    def test_out_of_range(self, quark_chart):
        with pytest.raises(RangeError):
            quark_chart.E_of_n(1e6)
        with pytest.raises(RangeError):
            quark_chart.n_of_E(-1e6)

    def test_csv_round_trip(self, quark_chart, quark_params, tmp_path):
        path = tmp_path / "chart.csv"
        quark_chart.dump_csv(path)
        header = path.read_text().splitlines()[0]
        assert header == "E,n,omega0"
        loaded = aa.ActionAngleChart.load_csv(path, quark_params)
        for n in (0.5, 5.0):
            assert loaded.E_of_n(n) == pytest.approx(quark_chart.E_of_n(n), rel=1e-12)

    def test_hydrogen_chart_matches_kepler(self, hydrogen_chart, hydrogen_params):
        Z = hydrogen_params.Z
        # chart accessors interpolate between exact nodes, so the tolerance
        # reflects interpolation error rather than the node values themselves
        for n in (0.5, 2.0, 20.0):
            E = hydrogen_chart.E_of_n(n)
            assert E == pytest.approx(-(Z**2) / (2 * n**2), rel=1e-6)
            assert hydrogen_chart.omega0_of_n(n) == pytest.approx(Z**2 / n**3, rel=1e-6)


class TestAngle:
    def test_angle_range_and_symmetry(self, quark_params):
        E = 1.0
        tp = turning_points_1d(E, quark_params)
        x = 0.4 * tp.a
        th_out = aa.angle_of_x(x, E, 1, quark_params)
        th_in = aa.angle_of_x(x, E, -1, quark_params)
        assert 0.0 < th_out < math.pi
        assert th_in == pytest.approx(2 * math.pi - th_out, rel=1e-10)

    def test_turning_point_is_half_period(self, quark_params):
        E = 1.0
        tp = turning_points_1d(E, quark_params)
        assert aa.angle_of_x(tp.a, E, 1, quark_params) == pytest.approx(
            math.pi, rel=1e-8
        )
