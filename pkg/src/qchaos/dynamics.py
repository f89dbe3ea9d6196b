"""Driven one-dimensional dynamics with collision regularization.

Integrates H = p^2/2 - Z/x + lam*x + eps*x*cos(omega*t + phase) through
the square-root substitution x = u^2 with fictitious time dt = x dtau.
In the extended phase space (u, pu, t, pt) the collision at x = 0
becomes a regular passage of u through zero, so trajectories that graze
the wall cost no step-size penalty.

The extended Hamiltonian (with pt conjugate to physical time t, and
pt = -H on the physical manifold) is

    Gamma = pu^2/8 + pt*u^2 - Z + lam*u^4 + eps*u^4*cos(omega*t + phase)

and one fictitious-time unit advances physical time by roughly x.  The
base step is a Strang (kick-drift-kick) split whose linear drift part is
applied as three shears, which keeps the map exactly area-preserving in
floating point; higher order comes from triple-jump compositions.

Public entry points: :func:`stroboscopic_section` (drive-period
sampling with exact-time interpolation), :func:`action_diffusion`,
:func:`chaotic_fraction`, and :func:`lyapunov_mle`.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from . import action_angle as aa
from .errors import DomainError, InsufficientDataError, NumericError
from .potential import (
    DriveParams,
    SystemParams,
    force_1d,
    potential_1d,
    turning_points_1d,
)

__all__ = [
    "PhaseState",
    "RegularizedState",
    "SectionPoint",
    "TrajectoryResult",
    "DiffusionFit",
    "LyapunovEstimate",
    "DEFAULT_DTAU",
    "ESCAPE_RADIUS_FACTOR",
    "CHAOS_RATE_THRESHOLD",
    "SECTION_TIME_TOLERANCE",
    "to_regularized",
    "to_phase",
    "derivatives",
    "step_regularized",
    "orbit_initials",
    "stroboscopic_section",
    "action_diffusion",
    "chaotic_fraction",
    "lyapunov_mle",
]

#: Default fictitious-time step.  Chosen by a convergence study: with the
#: 6th-order composition this holds the unperturbed-energy drift below
#: 1e-12 relative over 1e4 wall-to-wall oscillations for orbits across
#: the parameter range exercised by the acceptance suite.
DEFAULT_DTAU = 0.01

#: Escape radius in units of the initial outer turning point a(E0).  For
#: lam > 0 true escape is impossible; crossing this radius means the
#: trajectory left the charted region and is tagged, not a physics claim.
ESCAPE_RADIUS_FACTOR = 20.0

#: Section timestamps are located to this fraction of a drive period.
SECTION_TIME_TOLERANCE = 1e-9

#: Per-drive-period tangent-growth rate above which a trajectory is
#: classified chaotic.  Frozen from a calibration run: regular ensembles
#: (eps = 0, and eps well below critical) score below ~0.05 log-units
#: per period once the O(log T / T) transient is subtracted, while
#: ensembles at 10x the critical field score above ~1.  The threshold
#: sits an order of magnitude above the regular floor.
CHAOS_RATE_THRESHOLD = 0.5

#: Relative offset used to seed the shadow trajectory of the divergence
#: proxy and of the Lyapunov estimator.
SHADOW_OFFSET = 1e-8

_TAGS = {0: "completed", 1: "escaped", 2: "step-failure"}

# Composition coefficients (palindromic substep weights) for the base
# Strang map: 2nd order (single step), 4th order and 6th order
# triple-jump/Yoshida schedules.
_W4 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
_SCHEMES = {
    "strang": np.array([1.0]),
    "yoshida4": np.array([_W4, 1.0 - 2.0 * _W4, _W4]),
    "yoshida6": np.array(
        [
            0.784513610477560,
            0.235573213359357,
            -1.17767998417887,
            1.31518632068391,
            -1.17767998417887,
            0.235573213359357,
            0.784513610477560,
        ]
    ),
}
DEFAULT_SCHEME = "yoshida6"


# --------------------------------------------------------------------------
# state containers


@dataclass(frozen=True)
class PhaseState:
    """Physical state (x, p) at time t; x > 0 always."""

    x: float
    p: float
    t: float = 0.0

    def __post_init__(self):
        if not self.x > 0.0:
            raise DomainError(f"x must be positive, got {self.x}")

    def energy(self, p: SystemParams) -> float:
        """Unperturbed energy p^2/2 + V(x)."""
        return 0.5 * self.p**2 + potential_1d(self.x, p)


@dataclass(frozen=True)
class RegularizedState:
    """Extended state (u, pu, t, pt) with x = u^2, pu = 2 u p.

    `pt` is the momentum conjugate to physical time (equal to -H on the
    physical manifold); `tau` is accumulated fictitious time.
    """

    u: float
    pu: float
    t: float
    pt: float
    tau: float = 0.0

    @property
    def x(self) -> float:
        return self.u * self.u


@dataclass(frozen=True)
class SectionPoint:
    """One stroboscopic sample t = t0 + 2 pi m / omega."""

    trajectory_id: int
    m: int
    t: float
    x: float
    p: float
    n: float
    theta: float
    tag: str


@dataclass(frozen=True)
class TrajectoryResult:
    trajectory_id: int
    points: list
    tag: str


@dataclass(frozen=True)
class DiffusionFit:
    """Ensemble action variance per stroboscopic index with linear fit."""

    m: np.ndarray
    variance: np.ndarray
    slope: float
    slope_stderr: float

    @property
    def slope_lower_95(self) -> float:
        return self.slope - 1.96 * self.slope_stderr


@dataclass(frozen=True)
class LyapunovEstimate:
    """Maximal Lyapunov exponent from shadow-trajectory renormalization."""

    value: float
    stderr: float
    window: tuple
    partial: bool = False
    interval_rates: np.ndarray = field(default=None, repr=False)


# --------------------------------------------------------------------------
# coordinate maps and the direct vector field


def to_regularized(s: PhaseState, p: SystemParams, d: DriveParams) -> RegularizedState:
    """Lift a physical state onto the extended manifold (pt = -H)."""
    u = math.sqrt(s.x)
    pu = 2.0 * u * s.p
    h = s.energy(p) + d.epsilon * s.x * math.cos(d.omega * s.t + d.phase)
    return RegularizedState(u=u, pu=pu, t=s.t, pt=-h, tau=0.0)


def to_phase(r: RegularizedState) -> PhaseState:
    """Project back to (x, p); requires u != 0 (x > 0)."""
    x = r.u * r.u
    if x <= 0.0:
        raise DomainError("cannot project the collision point u = 0 to (x, p)")
    return PhaseState(x=x, p=r.pu / (2.0 * r.u), t=r.t)


def derivatives(s: PhaseState, p: SystemParams, d: DriveParams):
    """Direct vector field (dx/dt, dp/dt) of the driven Hamiltonian.

    Delegates the conservative force to the potential module's analytic
    derivative; the drive contributes -eps*cos(omega t + phase).
    """
    if s.x <= 0.0:
        raise DomainError(f"x must be positive, got {s.x}")
    f = force_1d(s.x, p) - d.epsilon * math.cos(d.omega * s.t + d.phase)
    return (s.p, f)


# --------------------------------------------------------------------------
# numba kernels


@njit(cache=True, nogil=True, inline="always")
def _strang(u, pu, t, pt, h, lam, eps, om, ph):
    # half kick from the quartic + drive part of Gamma
    cu = math.cos(om * t + ph)
    pu -= 0.5 * h * (4.0 * lam * u**3 + 4.0 * eps * u**3 * cu)
    pt += 0.5 * h * eps * u**4 * om * math.sin(om * t + ph)
    # linear drift in (u, pu) generated by pu^2/8 + pt*u^2, applied as
    # three shears so the map determinant is exactly 1 in floating point;
    # t advances by the closed-form integral of u(tau)^2.
    w2 = 0.5 * pt
    if w2 > 1e-12:
        w = math.sqrt(w2)
        th = w * h
        cw = math.cos(th)
        sw = math.sin(th)
        aa_ = math.tan(0.5 * th) / (4.0 * w)
        bb = 4.0 * w * sw
        C = u
        S = pu / (4.0 * w)
        u += aa_ * pu
        pu -= bb * u
        u += aa_ * pu
        t += (
            C * C * (0.5 * h + sw * cw / (2.0 * w))
            + S * S * (0.5 * h - sw * cw / (2.0 * w))
            + C * S * sw * sw / w
        )
    elif w2 < -1e-12:
        w = math.sqrt(-w2)
        th = w * h
        cw = math.cosh(th)
        sw = math.sinh(th)
        aa_ = math.tanh(0.5 * th) / (4.0 * w)
        bb = 4.0 * w * sw
        C = u
        S = pu / (4.0 * w)
        u += aa_ * pu
        pu += bb * u
        u += aa_ * pu
        t += (
            C * C * (0.5 * h + sw * cw / (2.0 * w))
            + S * S * (-0.5 * h + sw * cw / (2.0 * w))
            + C * S * sw * sw / w
        )
    else:
        C = u
        S = pu
        u += pu * h / 4.0
        t += C * C * h + C * S * h * h / 4.0 + S * S * h**3 / 48.0
    # second half kick
    cu = math.cos(om * t + ph)
    pu -= 0.5 * h * (4.0 * lam * u**3 + 4.0 * eps * u**3 * cu)
    pt += 0.5 * h * eps * u**4 * om * math.sin(om * t + ph)
    return u, pu, t, pt


@njit(cache=True, nogil=True)
def _composite(u, pu, t, pt, h, lam, eps, om, ph, weights):
    for i in range(weights.shape[0]):
        u, pu, t, pt = _strang(u, pu, t, pt, weights[i] * h, lam, eps, om, ph)
    return u, pu, t, pt


@njit(cache=True, nogil=True)
def _integrate_section(
    u,
    pu,
    t,
    pt,
    dtau,
    period,
    n_periods,
    lam,
    eps,
    om,
    ph,
    weights,
    x_escape,
    tol_t,
):
    """Fixed-step integration with exact-time stroboscopic sampling.

    Section times are located by bisecting the substep length from the
    saved pre-crossing state, then the fixed-step sequence resumes from
    that same pre-crossing state so the symplectic trajectory is never
    perturbed by the sampling.  Returns (t_s, x_s, p_s, m_reached,
    status) with status 0 completed / 1 escaped / 2 step failure.
    """
    t_s = np.full(n_periods + 1, np.nan)
    x_s = np.full(n_periods + 1, np.nan)
    p_s = np.full(n_periods + 1, np.nan)
    t_s[0] = t
    x_s[0] = u * u
    p_s[0] = pu / (2.0 * u) if u != 0.0 else np.inf
    t0 = t
    m_next = 1
    status = 0
    max_steps = 1 << 62
    step = 0
    while m_next <= n_periods and step < max_steps:
        step += 1
        u0 = u
        pu0 = pu
        tpre = t
        pt0 = pt
        u, pu, t, pt = _composite(u, pu, t, pt, dtau, lam, eps, om, ph, weights)
        if not (math.isfinite(u) and math.isfinite(pu) and math.isfinite(t)):
            status = 2
            break
        while m_next <= n_periods and t >= t0 + period * m_next:
            target = t0 + period * m_next
            lo = 0.0
            hi = dtau
            um = u
            pum = pu
            tm = t
            for _ in range(90):
                mid = 0.5 * (lo + hi)
                um, pum, tm, _ptm = _composite(
                    u0, pu0, tpre, pt0, mid, lam, eps, om, ph, weights
                )
                if tm < target:
                    lo = mid
                else:
                    hi = mid
                if abs(tm - target) <= tol_t:
                    break
            t_s[m_next] = tm
            x_s[m_next] = um * um
            p_s[m_next] = pum / (2.0 * um) if um != 0.0 else np.inf
            m_next += 1
        if u * u > x_escape:
            status = 1
            break
    return t_s, x_s, p_s, m_next - 1, status


@njit(cache=True, nogil=True)
def _shadow_rates(
    u,
    pu,
    t,
    pt,
    dtau,
    period,
    n_periods,
    lam,
    eps,
    om,
    ph,
    weights,
    x_escape,
    delta0,
    du0,
    dpu0,
    steps_per_interval,
):
    """Benettin-style shadow-pair integration.

    Renormalizes the 4-component separation (u, pu, t, pt) back to
    delta0 every `steps_per_interval` composite steps and records the
    per-interval log growth.  Returns (log_growth array, interval count
    actually completed, elapsed physical time, status).
    """
    n_intervals = n_periods
    logs = np.zeros(n_intervals)
    norm0 = math.sqrt(du0 * du0 + dpu0 * dpu0)
    s_u = u + delta0 * du0 / norm0
    s_pu = pu + delta0 * dpu0 / norm0
    s_t = t
    s_pt = pt
    t_start = t
    t_done = t
    status = 0
    done = 0
    for interval in range(n_intervals):
        for _ in range(steps_per_interval):
            u, pu, t, pt = _composite(u, pu, t, pt, dtau, lam, eps, om, ph, weights)
            s_u, s_pu, s_t, s_pt = _composite(
                s_u, s_pu, s_t, s_pt, dtau, lam, eps, om, ph, weights
            )
        if not (
            math.isfinite(u)
            and math.isfinite(pu)
            and math.isfinite(t)
            and math.isfinite(pt)
            and math.isfinite(s_u)
            and math.isfinite(s_pu)
            and math.isfinite(s_t)
            and math.isfinite(s_pt)
        ):
            status = 2
            break
        d = math.sqrt(
            (s_u - u) ** 2 + (s_pu - pu) ** 2 + (s_t - t) ** 2 + (s_pt - pt) ** 2
        )
        if d == 0.0:
            d = 1e-300
        logs[interval] = math.log(d / delta0)
        # pull the shadow back to distance delta0 along the separation
        f = delta0 / d
        s_u = u + (s_u - u) * f
        s_pu = pu + (s_pu - pu) * f
        s_t = t + (s_t - t) * f
        s_pt = pt + (s_pt - pt) * f
        done = interval + 1
        t_done = t
        if u * u > x_escape or s_u * s_u > x_escape:
            status = 1
            break
    return logs, done, t_done - t_start, status


# --------------------------------------------------------------------------
# python wrappers


def _weights(scheme: str) -> np.ndarray:
    try:
        return _SCHEMES[scheme]
    except KeyError:
        raise DomainError(
            f"unknown scheme {scheme!r}; choose from {sorted(_SCHEMES)}"
        ) from None


def step_regularized(
    r: RegularizedState,
    dtau: float,
    p: SystemParams,
    d: DriveParams,
    scheme: str = DEFAULT_SCHEME,
) -> RegularizedState:
    """Advance one composite step of fictitious time dtau."""
    w = _weights(scheme)
    u, pu, t, pt = _composite(
        r.u, r.pu, r.t, r.pt, dtau, p.lam, d.epsilon, d.omega, d.phase, w
    )
    if not (math.isfinite(u) and math.isfinite(pu) and math.isfinite(t)):
        raise NumericError("step produced a non-finite state; reduce dtau")
    return RegularizedState(u=u, pu=pu, t=t, pt=pt, tau=r.tau + dtau)


def orbit_initials(
    n: float,
    count: int,
    p: SystemParams,
    chart: aa.ActionAngleChart,
    t0: float = 0.0,
):
    """`count` states equispaced in angle on the invariant circle of action n.

    The momentum is recomputed from the energy at each sampled x, so all
    returned states share the energy E(n) to machine precision even
    though x(theta) itself is interpolated.
    """
    E = chart.E_of_n(n)
    xs, thetas, _, _ = aa._orbit_theta_samples(E, p)
    tp = turning_points_1d(E, p)
    out = []
    for j in range(count):
        theta = 2.0 * math.pi * j / count
        if theta <= math.pi:
            x = float(np.interp(theta, thetas, xs))
            sign = 1.0
        else:
            x = float(np.interp(2.0 * math.pi - theta, thetas, xs))
            sign = -1.0
        # floor keeps p^2/2 + V(x) representable: at x ~ 1e-12 a the huge
        # +-Z/x cancellation costs ~5 digits of the launch energy
        x = min(max(x, 1e-3 * tp.a), tp.a)
        v2 = 2.0 * (E - potential_1d(x, p))
        if v2 < 0.0:
            # interpolated x overshot the outer turning point: snap to it
            x = tp.a
            v2 = max(0.0, 2.0 * (E - potential_1d(x, p)))
        pz = sign * math.sqrt(v2)
        out.append(PhaseState(x=x, p=pz, t=t0))
    return out


def _escape_radius(s: PhaseState, p: SystemParams) -> float:
    E0 = s.energy(p)
    return ESCAPE_RADIUS_FACTOR * turning_points_1d(E0, p).a


def _run_one_section(args):
    (tid, s, n_periods, p, d, chart, dtau, x_escape, weights) = args
    r = to_regularized(s, p, d)
    period = d.period
    t_s, x_s, p_s, m_reached, status = _integrate_section(
        r.u,
        r.pu,
        r.t,
        r.pt,
        dtau,
        period,
        n_periods,
        p.lam,
        d.epsilon,
        d.omega,
        d.phase,
        weights,
        x_escape if x_escape is not None else _escape_radius(s, p),
        SECTION_TIME_TOLERANCE * period,
    )
    tag = _TAGS[status]
    points = []
    for m in range(m_reached + 1):
        if not math.isfinite(x_s[m]):
            continue
        x = x_s[m]
        pz = p_s[m]
        n_val = math.nan
        theta = math.nan
        if chart is not None and math.isfinite(pz):
            E = 0.5 * pz * pz + potential_1d(x, p)
            if chart.contains_E(E):
                n_val = chart.n_of_E(E)
                try:
                    theta = aa.angle_of_x(x, E, 1 if pz >= 0 else -1, p)
                except (DomainError, ValueError):
                    theta = math.nan
        points.append(
            SectionPoint(
                trajectory_id=tid,
                m=m,
                t=t_s[m],
                x=x,
                p=pz,
                n=n_val,
                theta=theta,
                tag=tag,
            )
        )
    return TrajectoryResult(trajectory_id=tid, points=points, tag=tag)


def stroboscopic_section(
    initials,
    n_periods: int,
    p: SystemParams,
    d: DriveParams,
    chart: aa.ActionAngleChart = None,
    dtau: float = DEFAULT_DTAU,
    x_escape: float = None,
    scheme: str = DEFAULT_SCHEME,
    jobs: int = 1,
):
    """Stroboscopic (drive-period) sections for an ensemble of initials.

    Each trajectory is integrated independently in the regularized
    variables; (x, p) is recorded at t = t0 + 2 pi m / omega located to
    1e-9 of a period by bisection on the substep length.  (n, theta) are
    attached from the chart when the instantaneous unperturbed energy is
    in range.  Escaping trajectories stop early and are tagged.
    """
    weights = _weights(scheme)
    work = [
        (tid, s, n_periods, p, d, chart, dtau, x_escape, weights)
        for tid, s in enumerate(initials)
    ]
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one_section, work))
    else:
        results = [_run_one_section(w) for w in work]
    results.sort(key=lambda r: r.trajectory_id)
    return results


def action_diffusion(results) -> DiffusionFit:
    """Ensemble variance of the action vs stroboscopic index, with fit.

    Accepts either TrajectoryResults or a flat list of SectionPoints;
    needs at least 100 points carrying finite n.
    """
    points = []
    for r in results:
        points.extend(r.points if isinstance(r, TrajectoryResult) else [r])
    points = [q for q in points if math.isfinite(q.n)]
    if len(points) < 100:
        raise InsufficientDataError(
            f"need at least 100 section points with finite action, got {len(points)}"
        )
    by_m = {}
    for q in points:
        by_m.setdefault(q.m, []).append(q.n)
    ms = np.array(sorted(m for m, vals in by_m.items() if len(vals) >= 2))
    var = np.array([np.var(by_m[m]) for m in ms])
    if len(ms) < 3:
        raise InsufficientDataError("need at least 3 stroboscopic indices with >=2 points")
    coeffs, cov = np.polyfit(ms, var, 1, cov=True)
    return DiffusionFit(
        m=ms,
        variance=var,
        slope=float(coeffs[0]),
        slope_stderr=float(math.sqrt(max(cov[0, 0], 0.0))),
    )


def _shadow_run(
    s: PhaseState,
    n_periods: int,
    p: SystemParams,
    d: DriveParams,
    dtau: float,
    scheme: str,
    direction,
    x_escape: float = None,
):
    """One shadow-pair run; returns (per-period log growth, elapsed t, status)."""
    weights = _weights(scheme)
    r = to_regularized(s, p, d)
    # fictitious steps per drive period, from dt ~ <x> dtau at the start
    tp = turning_points_1d(s.energy(p), p)
    x_mean = 0.5 * tp.a
    steps = max(16, int(round(d.period / (x_mean * dtau))))
    scale = math.sqrt(r.u * r.u + r.pu * r.pu)
    logs, done, elapsed, status = _shadow_rates(
        r.u,
        r.pu,
        r.t,
        r.pt,
        dtau,
        d.period,
        n_periods,
        p.lam,
        d.epsilon,
        d.omega,
        d.phase,
        weights,
        x_escape if x_escape is not None else _escape_radius(s, p),
        SHADOW_OFFSET * max(scale, 1.0),
        direction[0],
        direction[1],
        steps,
    )
    return logs[:done], elapsed, status


def chaotic_fraction(
    initials,
    epsilon_ratio: float,
    p: SystemParams,
    d: DriveParams,
    chart: aa.ActionAngleChart = None,
    n_periods: int = 200,
    dtau: float = DEFAULT_DTAU,
    scheme: str = DEFAULT_SCHEME,
    threshold: float = CHAOS_RATE_THRESHOLD,
    seed: int = 0,
    jobs: int = 1,
    return_details: bool = False,
):
    """Fraction of the ensemble classified chaotic.

    The drive's epsilon field is interpreted as the reference (critical)
    field; the integration runs at eps = epsilon_ratio * d.epsilon.
    Classification: mean per-drive-period log growth of a renormalized
    shadow separation above `threshold` (or escape) is chaotic.  The
    classification parameters are returned in the metadata dict.
    """
    d_run = DriveParams(
        epsilon=epsilon_ratio * d.epsilon, omega=d.omega, phase=d.phase
    )
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(len(initials), 2))

    def classify(item):
        idx, s = item
        if d_run.epsilon == 0.0:
            return 0.0, "completed"
        logs, elapsed, status = _shadow_run(
            s, n_periods, p, d_run, dtau, scheme, dirs[idx]
        )
        if status == 1:
            return math.inf, "escaped"
        if status == 2 or len(logs) == 0:
            return math.inf, "step-failure"
        # discard the first fifth: transient alignment of the shadow
        skip = max(1, len(logs) // 5)
        rate = float(np.mean(logs[skip:])) if len(logs) > skip else float(np.mean(logs))
        return rate, _TAGS[status]

    items = list(enumerate(initials))
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            outcomes = list(ex.map(classify, items))
    else:
        outcomes = [classify(it) for it in items]
    rates = [r for r, _ in outcomes]
    flags = [r > threshold for r in rates]
    fraction = sum(flags) / len(flags)
    meta = {
        "threshold": threshold,
        "n_periods": n_periods,
        "dtau": dtau,
        "scheme": scheme,
        "shadow_offset": SHADOW_OFFSET,
        "epsilon": d_run.epsilon,
        "epsilon_ratio": epsilon_ratio,
        "omega": d.omega,
        "seed": seed,
        "rates": rates,
        "tags": [t for _, t in outcomes],
    }
    if return_details:
        return fraction, meta
    return fraction


def lyapunov_mle(
    initial: PhaseState,
    T: float,
    p: SystemParams,
    d: DriveParams,
    dtau: float = DEFAULT_DTAU,
    scheme: str = DEFAULT_SCHEME,
    direction=(1.0, 0.0),
) -> LyapunovEstimate:
    """Maximal Lyapunov exponent by shadow renormalization over time T.

    The exponent is the total log growth divided by elapsed physical
    time; the uncertainty is the standard error of the per-interval
    rates.  Escape before T yields a partial estimate (tagged).
    """
    n_periods = max(3, int(math.ceil(T / d.period)))
    logs, elapsed, status = _shadow_run(initial, n_periods, p, d, dtau, scheme, direction)
    if len(logs) == 0:
        raise NumericError("no complete renormalization interval before escape")
    dt_int = elapsed / len(logs)
    rates = np.asarray(logs) / dt_int
    value = float(np.sum(logs) / elapsed)
    stderr = float(np.std(rates, ddof=1) / math.sqrt(len(rates))) if len(rates) > 1 else math.inf
    return LyapunovEstimate(
        value=value,
        stderr=stderr,
        window=(0.0, elapsed),
        partial=(status != 0),
        interval_rates=rates,
    )
