"""Cross-module invariant suite behind the `validate` command/endpoint.

Runs fast numerical identity checks spanning every module and reports
them as structured pass/fail items, together with the value of every
fitted or chosen convention constant so downstream users can audit them.
The `flip_action_convention` switch is a negative control: it perturbs
the action normalization inside the comparisons (only), which must make
the closed-form checks fail loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import action_angle as aa
from . import chirikov as ch
from . import dynamics as dyn
from . import elliptic as el
from .potential import SystemParams, turning_points_1d
from .units import GEV2_TO_V_PER_FM, UnitContext

__all__ = ["Check", "ValidationReport", "run_validation", "convention_constants"]


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    checks: list
    constants: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "detail": c.detail}
                for c in self.checks
            ],
            "constants": self.constants,
        }


def convention_constants() -> dict:
    """Every chosen/fitted convention constant, by name."""
    return {
        "action_normalization": "n = (1/pi) * integral_0^a sqrt(2(E-V)) dx",
        "small_a_quadratic_coeff": aa.SMALL_A_QUADRATIC_COEFF,
        "large_a_regime_factor": aa.LARGE_A_FACTOR,
        "small_a_regime_factor": aa.SMALL_A_FACTOR,
        "width_prefactor": ch.WIDTH_PREFACTOR,
        "overlap_threshold": ch.OVERLAP_THRESHOLD,
        "chaos_rate_threshold": dyn.CHAOS_RATE_THRESHOLD,
        "escape_radius_factor": dyn.ESCAPE_RADIUS_FACTOR,
        "default_dtau": dyn.DEFAULT_DTAU,
        "section_time_tolerance": dyn.SECTION_TIME_TOLERANCE,
        "centrifugal_default": "half (L^2 / 2r^2)",
        "gev2_to_v_per_fm": GEV2_TO_V_PER_FM,
    }


def run_validation(flip_action_convention: bool = False) -> ValidationReport:
    checks = []

    def add(name, passed, detail):
        checks.append(Check(name=name, passed=bool(passed), detail=detail))

    flip = 2.0 if flip_action_convention else 1.0

    # elliptic identities -------------------------------------------------
    err = abs(el.ellip_K(el.EllipticModulus.from_k(0.0)) - math.pi / 2)
    add("elliptic_K_at_0", err < 1e-14, f"|K(0)-pi/2|={err:.2e}")
    err = abs(el.ellip_E(el.EllipticModulus.from_k(1.0)) - 1.0)
    add("elliptic_E_at_1", err < 1e-14, f"|E(1)-1|={err:.2e}")
    m = el.EllipticModulus.from_k(0.6)
    err = abs(el.ellip_Pi(0.0, m) - el.ellip_K(m))
    add("elliptic_Pi_reduction", err < 1e-13, f"|Pi(0,k)-K(k)|={err:.2e}")
    # Legendre relation at k=0.6
    mc = el.EllipticModulus.from_k(m.kc)
    legendre = (
        el.ellip_E(m) * el.ellip_K(mc)
        + el.ellip_E(mc) * el.ellip_K(m)
        - el.ellip_K(m) * el.ellip_K(mc)
    )
    err = abs(legendre - math.pi / 2)
    add("elliptic_legendre_relation", err < 1e-13, f"err={err:.2e}")

    # action-angle conventions -------------------------------------------
    Z = 0.15
    ph = SystemParams(Z=Z, lam=0.0)
    E = -0.3
    n_quad = aa.action_1d_quadrature(E, ph)
    n_kepler = Z / math.sqrt(-2.0 * E)
    err = abs(flip * n_quad - n_kepler) / n_kepler
    add("hydrogen_action_identity", err < 1e-9, f"rel err={err:.2e}")
    w = aa.omega0_exact(E, ph)
    err = abs(w - Z**2 / n_kepler**3) / w
    add("hydrogen_frequency_identity", err < 1e-9, f"rel err={err:.2e}")

    pq = SystemParams(Z=0.15, lam=0.4)
    worst = 0.0
    for E in (-0.5, 0.2, 1.0, 4.0):
        nc = flip * aa.action_1d_closed(E, pq)
        nq = aa.action_1d_quadrature(E, pq)
        worst = max(worst, abs(nc - nq) / nq)
    add("action_closed_vs_quadrature", worst < 1e-8, f"worst rel err={worst:.2e}")

    chart = aa.ActionAngleChart.build(pq, n_min=0.1, n_max=30.0, nodes=128)
    worst = 0.0
    for n in (0.5, 2.0, 10.0):
        E = chart.E_of_n(n)
        worst = max(worst, abs(chart.n_of_E(E) - n) / n)
    add("chart_round_trip", worst < 1e-10, f"worst rel err={worst:.2e}")

    E = chart.E_of_n(3.0)
    h = 1e-5
    dn_dE = (flip * aa.action_1d_closed(E + h, pq) - flip * aa.action_1d_closed(E - h, pq)) / (2 * h)
    err = abs(aa.omega0_exact(E, pq) - 1.0 / dn_dE) / aa.omega0_exact(E, pq)
    add("frequency_vs_action_derivative", err < 1e-6, f"rel err={err:.2e}")

    k_bessel_err = 0.0
    for k in (1, 2, 3):
        xk = aa.fourier_x_k(2.0, 5, ph)[k]
        ref = aa.kepler_fourier_x_k(2.0, k, Z)
        k_bessel_err = max(k_bessel_err, abs(xk - ref) / abs(ref))
    add("fourier_vs_bessel_hydrogen", k_bessel_err < 1e-6, f"worst rel err={k_bessel_err:.2e}")

    # 3D action coherence -------------------------------------------------
    p3 = SystemParams(Z=0.15, lam=0.4, L=0.8)
    E3 = 2.0
    nc = flip * aa.action_3d_closed(E3, p3)
    nq = aa.action_3d_quadrature(E3, p3)
    err = abs(nc - nq) / nq
    add("action_3d_closed_vs_quadrature", err < 1e-8, f"rel err={err:.2e}")

    # resonance algebra ---------------------------------------------------
    omega = chart.omega0_of_n(3.0)
    res = ch.resonance_locations(omega, range(1, 4), chart)
    by_k = {r.k: r for r in res}
    worst = 0.0
    for k in (1, 2):
        if k in by_k and k + 1 in by_k:
            gap = chart.omega0_of_n(by_k[k].n_k) - chart.omega0_of_n(by_k[k + 1].n_k)
            worst = max(worst, abs(gap - omega / (k * (k + 1))) / omega)
    add("resonance_spacing_identity", worst < 1e-9, f"worst rel err={worst:.2e}")

    amps = aa.fourier_x_k(by_k[1].n_k, 3, pq)
    w1 = ch.resonance_width(1e-4, by_k[1], chart, amps)
    w2 = ch.resonance_width(4e-4, by_k[1], chart, amps)
    err = abs(w2 / w1 - 2.0)
    add("width_sqrt_law", err < 1e-6, f"|ratio-2|={err:.2e}")

    # dynamics spot checks ------------------------------------------------
    E0 = 1.0
    tp = turning_points_1d(E0, pq)
    from .potential import DriveParams, potential_1d

    s = dyn.PhaseState(x=tp.a / 2, p=math.sqrt(2 * (E0 - potential_1d(tp.a / 2, pq))))
    d0 = DriveParams(epsilon=0.0, omega=aa.omega0_exact(E0, pq))
    r0 = dyn.to_regularized(s, pq, d0)
    r = r0
    for _ in range(2000):
        r = dyn.step_regularized(r, dyn.DEFAULT_DTAU, pq, d0)
    drift = abs(dyn.to_phase(r).energy(pq) - E0) / abs(E0)
    add("integrator_energy_drift_short", drift < 1e-11, f"rel drift={drift:.2e}")
    for _ in range(2000):
        r = dyn.step_regularized(r, -dyn.DEFAULT_DTAU, pq, d0)
    rev = max(abs(r.u - r0.u), abs(r.pu - r0.pu))
    add("integrator_reversibility_short", rev < 1e-10, f"max err={rev:.2e}")

    # units ---------------------------------------------------------------
    ctx = UnitContext(mass_scale_gev=0.15)
    vals = np.array([0.3, 2.0, 7.0])
    rt = max(
        abs(ctx.lambda_to_gev2(ctx.lambda_to_natural(v)) - v) / v for v in vals
    )
    rt = max(rt, max(abs(ctx.omega_to_gev(ctx.omega_to_natural(v)) - v) / v for v in vals))
    rt = max(rt, max(abs(ctx.field_to_gev2(ctx.field_to_natural(v)) - v) / v for v in vals))
    add("unit_round_trip", rt < 1e-12, f"worst rel err={rt:.2e}")

    return ValidationReport(checks=checks, constants=convention_constants())
