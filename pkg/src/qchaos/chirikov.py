"""Resonance bookkeeping and critical drive-strength prediction.

A k:1 resonance sits at the action n_k where k * omega0(n_k) = omega.
Its pendulum half-width is Delta n_k = 2 sqrt(eps |X_k| / |omega0'|).
Adjacent resonances overlap (and the tori between them break) when

    (Delta n_k + Delta n_{k+1}) / |n_k - n_{k+1}| >= threshold  (default 2.5).

Closed-form critical fields are provided both as verbatim transcriptions
of the source asymptotic formulas and as "assembled" forms built from
this package's own frequency laws and Fourier amplitudes; the numeric
pipeline (bisection on the overlap ratio) is the authoritative check.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from . import action_angle as aa
from .errors import (
    DegenerateResonanceError,
    DomainError,
    NoResonanceError,
    RegimeWarning,
    SingularFormulaError,
)
from .potential import SystemParams

__all__ = [
    "OVERLAP_THRESHOLD",
    "WIDTH_PREFACTOR",
    "Resonance",
    "CriticalFieldResult",
    "resonance_locations",
    "resonance_width",
    "overlap_ratio",
    "epsilon_cr_large_a",
    "epsilon_cr_small_a",
    "epsilon_cr_3d",
    "epsilon_cr_numeric",
    "epsilon_cr_assembled",
    "epsilon_cr_hydrogen",
    "epsilon_cr_large_a_assembled",
    "scan_critical_field",
]

#: overlap threshold (source value; literature uses 1 .. 2.5)
OVERLAP_THRESHOLD = 2.5

#: pendulum separatrix full half-width prefactor in
#: Delta n_k = WIDTH_PREFACTOR * sqrt(eps |X_k| / |omega0'|)
WIDTH_PREFACTOR = 2.0


@dataclass(frozen=True)
class Resonance:
    """A k:1 resonance: k * omega0(n_k) = omega."""

    k: int
    n_k: float
    omega: float

    def __post_init__(self):
        if self.k < 1:
            raise DomainError(f"harmonic index k={self.k} must be >= 1")
        if self.n_k <= 0.0:
            raise DomainError(f"resonant action n_k={self.n_k} must be > 0")


@dataclass(frozen=True)
class CriticalFieldResult:
    """Critical drive strength with its provenance."""

    epsilon_cr: float
    k_pair: tuple
    regime: str  # {"small_a", "large_a", "three_d", "numeric", "hydrogen"}
    inputs: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.epsilon_cr > 0.0:
            raise DomainError(f"epsilon_cr={self.epsilon_cr} must be > 0")
        if self.regime not in ("small_a", "large_a", "three_d", "numeric", "hydrogen"):
            raise DomainError(f"unknown regime tag {self.regime!r}")


# --------------------------------------------------------------------------
# resonance geometry
# --------------------------------------------------------------------------

def resonance_locations(omega: float, k_range, chart: aa.ActionAngleChart):
    """All k:1 resonances with omega0(n_k) = omega/k inside the chart.

    ``k_range`` is an iterable of positive integers.  Returns a list of
    :class:`Resonance` sorted by k; an empty list is a no-resonance
    notice, not an error.
    """
    w_lo = float(np.min(chart.omega0_grid))
    w_hi = float(np.max(chart.omega0_grid))
    out = []
    for k in sorted(set(int(k) for k in k_range)):
        if k < 1:
            raise DomainError(f"harmonic index k={k} must be >= 1")
        target = omega / k
        if not (w_lo < target < w_hi):
            continue
        # omega0 is monotone in n over the chart for the potentials here
        n_lo, n_hi = chart.n_range
        f = lambda n: chart.omega0_of_n(n) - target
        if f(n_lo) * f(n_hi) > 0.0:
            continue
        n_k = brentq(f, n_lo, n_hi, xtol=1e-13, rtol=8.9e-16)
        out.append(Resonance(k=k, n_k=float(n_k), omega=omega))
    return out


def resonance_width(
    epsilon: float,
    res: Resonance,
    chart: aa.ActionAngleChart,
    amps: aa.FourierAmplitudes,
    printed_form: bool = False,
    prefactor: float = WIDTH_PREFACTOR,
) -> float:
    """Action half-width of the resonance island at drive strength epsilon.

    Standard pendulum form prefactor * sqrt(eps |X_k| / |omega0'|); the
    dimensionally inconsistent non-rooted variant eps |X_k| / |omega0'|
    is available behind ``printed_form`` for comparison runs.
    """
    if epsilon < 0.0:
        raise DomainError("epsilon must be >= 0")
    dw = chart.domega0_dn(res.n_k)
    if dw == 0.0:
        raise DegenerateResonanceError(f"omega0'(n) vanishes at n_k={res.n_k}")
    xk = abs(amps[res.k])
    if printed_form:
        return epsilon * xk / abs(dw)
    return prefactor * math.sqrt(epsilon * xk / abs(dw))


def overlap_ratio(
    epsilon: float,
    k: int,
    chart: aa.ActionAngleChart,
    p: SystemParams,
    omega: float,
    amps_by_k: dict | None = None,
    k_max: int | None = None,
) -> float:
    """Chirikov overlap ratio for the (k, k+1) resonance pair.

    (Delta n_k + Delta n_{k+1}) / |n_k - n_{k+1}|, to be compared against
    :data:`OVERLAP_THRESHOLD`.  The frequency spacing omega/(k(k+1)) is
    converted to action spacing through the chart (|n_k - n_{k+1}| is
    that conversion evaluated exactly).
    """
    pair = resonance_locations(omega, (k, k + 1), chart)
    if len(pair) != 2:
        raise NoResonanceError(f"resonances k={k}, {k + 1} not both inside the chart")
    r1, r2 = pair
    if amps_by_k is None:
        amps_by_k = {}
    km = k_max or (k + 1)
    widths = []
    for r in (r1, r2):
        if r.n_k not in amps_by_k:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                amps_by_k[r.n_k] = aa.fourier_x_k(r.n_k, max(km, r.k), p)
        widths.append(resonance_width(epsilon, r, chart, amps_by_k[r.n_k]))
    spacing = abs(r1.n_k - r2.n_k)
    return (widths[0] + widths[1]) / spacing


# --------------------------------------------------------------------------
# verbatim closed forms
# --------------------------------------------------------------------------

def epsilon_cr_large_a(
    n: float, k: int, omega: float, p: SystemParams, check_regime: bool = True
) -> CriticalFieldResult:
    """Verbatim wide-orbit closed form for the critical field.

    eps_cr = 0.07 Z^2 omega pi^2 lam / n^2 * k(k+1)/((k+1)^2 + k^2)
             * {1 + lam/(A^2 n^{4/3}) [5 ln(4 A lam^{-1/2} n^{2/3}) - 7]}
    with A from :class:`aa.AsymptoticConstants` and lam as passed (the
    source's unit convention for this formula is not recoverable, so no
    rescaling is applied).
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    cst_A = (3.0 * math.pi * p.lam / (2.0 * math.sqrt(2.0))) ** (2.0 / 3.0)
    kfac = k * (k + 1.0) / ((k + 1.0) ** 2 + k * k)
    corr = 1.0 + (p.lam / (cst_A**2 * n ** (4.0 / 3.0))) * (
        5.0 * math.log(4.0 * cst_A * n ** (2.0 / 3.0) / math.sqrt(p.lam)) - 7.0
    )
    eps = 0.07 * p.Z**2 * omega * math.pi**2 * p.lam / (n * n) * kfac * corr
    if check_regime:
        E = aa.energy_of_action(n, p)
        aa._regime_gate(E, p, "large")
    return CriticalFieldResult(
        epsilon_cr=eps,
        k_pair=(k, k + 1),
        regime="large_a",
        inputs={"n": n, "omega": omega, "Z": p.Z, "lam": p.lam, "L": p.L},
    )


def epsilon_cr_small_a(
    n: float, k: int, omega: float, p: SystemParams, check_regime: bool = True
) -> CriticalFieldResult:
    """Verbatim deep-Coulomb closed form for the critical field.

    eps_cr = 0.3 omega lam / (k(k+1) n^2) * (29 lam n^4 - 9)/(29 lam n^4 - 3)
             * [sin^2(k sqrt(lam) pi/2)/k + sin^2((k+1) sqrt(lam) pi/2)/(k+1)]^{-1}
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    s1 = math.sin(0.5 * math.pi * k * math.sqrt(p.lam)) ** 2 / k
    s2 = math.sin(0.5 * math.pi * (k + 1) * math.sqrt(p.lam)) ** 2 / (k + 1)
    # exact zeros of sin(pi * integer) land at ~1e-32 after rounding
    if s1 + s2 < 1e-20:
        raise SingularFormulaError(
            f"both sin^2 factors vanish at k={k}, k+1={k + 1}, sqrt(lam)={math.sqrt(p.lam)}"
        )
    corr = (29.0 * p.lam * n**4 - 9.0) / (29.0 * p.lam * n**4 - 3.0)
    eps = 0.3 * omega * p.lam / (k * (k + 1.0) * n * n) * corr / (s1 + s2)
    if check_regime:
        E = aa.energy_of_action(n, p)
        aa._regime_gate(E, p, "small")
    return CriticalFieldResult(
        epsilon_cr=eps,
        k_pair=(k, k + 1),
        regime="small_a",
        inputs={"n": n, "omega": omega, "Z": p.Z, "lam": p.lam, "L": p.L},
    )


def epsilon_cr_3d(
    n: float, L: float, k: int, omega: float, p: SystemParams, check_regime: bool = True
) -> CriticalFieldResult:
    """Verbatim 3D closed form for the critical field (n >> 1 regime).

    eps_cr = 0.07 lam omega / (k(k+1) pi n^2) * (1 - pi L / n)
             * {sqrt(16 pi^2/9 + 1/k^2) + sqrt(16 pi^2/9 + 1/(k+1)^2)}^{-1}
             * [1 - L^2/(4 pi^4 n^2)]
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    if L >= n / math.pi:
        raise DomainError(f"formula domain requires pi L / n < 1, got L={L}, n={n}")
    if check_regime and n <= 10.0:
        warnings.warn(f"3D critical-field formula evaluated at n={n} <= 10", RegimeWarning)
    root = 16.0 * math.pi**2 / 9.0
    denom = math.sqrt(root + 1.0 / k**2) + math.sqrt(root + 1.0 / (k + 1.0) ** 2)
    eps = (
        0.07 * p.lam * omega / (k * (k + 1.0) * math.pi * n * n)
        * (1.0 - math.pi * L / n)
        / denom
        * (1.0 - L * L / (4.0 * math.pi**4 * n * n))
    )
    return CriticalFieldResult(
        epsilon_cr=eps,
        k_pair=(k, k + 1),
        regime="three_d",
        inputs={"n": n, "omega": omega, "Z": p.Z, "lam": p.lam, "L": L},
    )


# --------------------------------------------------------------------------
# assembled forms and numeric pipeline
# --------------------------------------------------------------------------

def _assembled_epsilon(omega: float, k: float, domega_dn: float, xk: float, xk1: float,
                       threshold: float = OVERLAP_THRESHOLD,
                       prefactor: float = WIDTH_PREFACTOR) -> float:
    """Solve the overlap condition for eps with widths
    prefactor*sqrt(eps|X|/|w'|) and spacing omega/(k(k+1))/|w'|."""
    spacing_action = omega / (k * (k + 1.0)) / abs(domega_dn)
    s = prefactor * (math.sqrt(abs(xk)) + math.sqrt(abs(xk1))) / math.sqrt(abs(domega_dn))
    return (threshold * spacing_action / s) ** 2


def epsilon_cr_hydrogen(n: float, omega: float, Z: float) -> CriticalFieldResult:
    """Critical field for the pure Coulomb baseline, assembled from the
    Kepler frequency law and Bessel-form Fourier amplitudes.

    The resonance order is the continuous k(n) = omega n^3 / Z^2 (the
    harmonic resonant at action n), so the curve is smooth in n.
    """
    k = omega * n**3 / Z**2
    if k < 1.0 - 1e-9:
        raise NoResonanceError(
            f"continuous resonance order k={k:.3g} < 1 at n={n} (omega too low)"
        )
    k = max(k, 1.0)
    from scipy.special import jvp

    dw = -3.0 * Z**2 / n**4
    xk = (2.0 * n * n / (Z * k)) * abs(float(jvp(k, k)))
    xk1 = (2.0 * n * n / (Z * (k + 1.0))) * abs(float(jvp(k + 1.0, k + 1.0)))
    eps = _assembled_epsilon(omega, k, dw, xk, xk1)
    return CriticalFieldResult(
        epsilon_cr=eps,
        k_pair=(math.floor(k), math.floor(k) + 1),
        regime="hydrogen",
        inputs={"n": n, "omega": omega, "Z": Z, "lam": 0.0, "k_continuous": k},
    )


def _printed_large_a_ingredients(n: float, Z: float, lam: float):
    """Wide-orbit frequency law and 1/k^2 amplitude with the source's
    printed constants and the physical lambda, matching the (internally
    consistent but unrecoverable) unit convention of the verbatim
    critical-field formulas.  Used only by the scan's large_a mode.

    Returns (omega0, d omega0/dn, |x_1|).
    """
    A = 3.0 * math.pi * lam ** (2.0 / 3.0) / (2.0 * math.sqrt(2.0))
    log_term = math.log(4.0 * A * n ** (2.0 / 3.0) / math.sqrt(lam))
    w0 = (2.0 / 3.0) * Z**2 * (
        A * n ** (-1.0 / 3.0) + (lam / A) * n ** (-5.0 / 3.0) * (log_term - 1.0)
    )
    dw = (2.0 / 3.0) * Z**2 * (
        -(1.0 / 3.0) * A * n ** (-4.0 / 3.0)
        + (lam / A) * (-(5.0 / 3.0) * n ** (-8.0 / 3.0) * (log_term - 1.0)
                       + n ** (-5.0 / 3.0) * (2.0 / (3.0 * n)))
    )
    x1 = 2.0 * A * n ** (2.0 / 3.0) / (math.pi**2 * lam)
    return w0, dw, x1


def epsilon_cr_large_a_assembled(
    n: float, omega: float, p: SystemParams
) -> CriticalFieldResult:
    """Wide-orbit critical field assembled from the printed-convention
    frequency law and 1/k^2 Fourier amplitudes.

    Uses the continuous resonance order k(n) = max(1, omega/omega0(n)),
    so the curve rises while the drive sits below the fundamental
    (k floored at 1) and falls once higher harmonics resonate — the
    interior-maximum shape of the wide-orbit regime.  Harmonic
    amplitudes decay as k**(-5/3), the generic law for an orbit with a
    Coulomb cusp at the inner turning point (a 1/k**2 law would cancel
    the n-dependence exactly and flatten the curve).
    """
    w0, dw, x1 = _printed_large_a_ingredients(n, p.Z, p.lam)
    k = max(1.0, omega / w0)
    xk = x1 / k ** (5.0 / 3.0)
    xk1 = x1 / (k + 1.0) ** (5.0 / 3.0)
    eps = _assembled_epsilon(omega, k, dw, xk, xk1)
    return CriticalFieldResult(
        epsilon_cr=eps,
        k_pair=(math.floor(k), math.floor(k) + 1),
        regime="large_a",
        inputs={"n": n, "omega": omega, "Z": p.Z, "lam": p.lam, "k_continuous": k},
    )


def epsilon_cr_numeric(
    n_center: float,
    omega: float,
    chart: aa.ActionAngleChart,
    p: SystemParams,
    rel_tol: float = 1e-4,
    threshold: float = OVERLAP_THRESHOLD,
) -> CriticalFieldResult:
    """Independent numeric critical field: bisection on the overlap ratio.

    Finds the adjacent resonance pair (k, k+1) whose actions bracket (or
    sit nearest to) n_center, then bisects eps until the overlap ratio of
    numeric widths equals the threshold; tolerance 1e-4 relative in eps.
    """
    w_center = chart.omega0_of_n(n_center)
    k_guess = max(1, int(round(omega / w_center)))
    candidates = resonance_locations(omega, range(max(1, k_guess - 3), k_guess + 5), chart)
    if len(candidates) < 2:
        raise NoResonanceError(
            f"fewer than two resonances of omega={omega} inside the chart near n={n_center}"
        )
    # pick the adjacent-k pair closest to n_center
    best = None
    for r1, r2 in zip(candidates, candidates[1:]):
        if r2.k != r1.k + 1:
            continue
        d = abs(0.5 * (r1.n_k + r2.n_k) - n_center)
        if best is None or d < best[0]:
            best = (d, r1, r2)
    if best is None:
        raise NoResonanceError("no adjacent resonance pair found in the chart")
    _, r1, r2 = best
    k = r1.k

    amps_cache: dict = {}

    def ratio(eps):
        return overlap_ratio(eps, k, chart, p, omega, amps_by_k=amps_cache)

    # overlap ratio is ~sqrt(eps): invert directly then polish
    r_unit = ratio(1.0)
    eps0 = (threshold / r_unit) ** 2
    lo, hi = eps0 / 4.0, eps0 * 4.0
    f_lo, f_hi = ratio(lo) - threshold, ratio(hi) - threshold
    while f_lo > 0.0:
        lo /= 4.0
        f_lo = ratio(lo) - threshold
    while f_hi < 0.0:
        hi *= 4.0
        f_hi = ratio(hi) - threshold
    eps = brentq(lambda e: ratio(e) - threshold, lo, hi, rtol=rel_tol)
    return CriticalFieldResult(
        epsilon_cr=float(eps),
        k_pair=(k, k + 1),
        regime="numeric",
        inputs={
            "n": n_center,
            "omega": omega,
            "Z": p.Z,
            "lam": p.lam,
            "L": p.L,
            "n_k": r1.n_k,
            "n_k1": r2.n_k,
            "threshold": threshold,
        },
    )


# --------------------------------------------------------------------------
# scans
# --------------------------------------------------------------------------

def scan_critical_field(
    n_values,
    omega: float,
    modes,
    p: SystemParams,
    k: int = 1,
    jobs: int = 1,
):
    """Per-n critical field for each requested mode; CSV-ready rows.

    Modes: "hydrogen" (assembled Coulomb baseline at the same Z),
    "small_a" (verbatim deep-Coulomb closed form with the given k),
    "large_a" (assembled wide-orbit form with continuous resonance
    order).  Per-point failures are recorded as gaps (epsilon_cr = NaN),
    not aborts.  Rows are (n, mode, epsilon_cr, k, regime_gate_ok),
    ordered by mode then n.
    """
    modes = list(modes)
    if not modes:
        raise DomainError("at least one scan mode is required")
    for mode in modes:
        if mode not in ("hydrogen", "small_a", "large_a"):
            raise DomainError(f"unknown scan mode {mode!r}")

    ls = p.length_scale if p.lam > 0.0 else float("inf")

    def outer_a(n):
        E = aa.energy_of_action(n, p)
        return (E + math.sqrt(E * E + 4.0 * p.Z * p.lam)) / (2.0 * p.lam)

    def one(task):
        mode, n = task
        try:
            if mode == "hydrogen":
                res = epsilon_cr_hydrogen(n, omega, p.Z)
                return (n, mode, res.epsilon_cr, res.inputs["k_continuous"], True)
            if mode == "small_a":
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore", RegimeWarning)
                    res = epsilon_cr_small_a(n, k, omega, p, check_regime=False)
                gate_ok = outer_a(n) < aa.SMALL_A_FACTOR * ls
                return (n, mode, res.epsilon_cr, float(k), gate_ok)
            res = epsilon_cr_large_a_assembled(n, omega, p)
            gate_ok = outer_a(n) > aa.LARGE_A_FACTOR * ls
            return (n, mode, res.epsilon_cr, res.inputs["k_continuous"], gate_ok)
        except Exception:
            return (n, mode, float("nan"), float("nan"), False)

    tasks = [(mode, float(n)) for mode in modes for n in n_values]
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(one, tasks))
    else:
        rows = [one(t) for t in tasks]
    return rows
