"""Action-angle machinery for the Coulomb-plus-linear potential.

Action convention
-----------------
The action is the full-loop Poincare invariant

    n(E) = (1/2pi) closed-loop integral of p dx = (1/pi) * int_0^a sqrt(2(E - V(x))) dx,

which reproduces the familiar Coulomb results n = Z / sqrt(-2E) and
omega0 = Z^2 / n^3 in the lambda = 0 baseline.

Fourier convention
------------------
The orbit is expanded in a real cosine series with theta = 0 at the wall
bounce (x = 0):

    x(theta) = X_0 + sum_{k>=1} X_k cos(k theta),
    X_k = (1/pi) int_0^{2pi} x(theta) cos(k theta) dtheta   (k >= 1),
    X_0 = orbit mean of x.

The definitional integrals (action quadrature, time-integral angle,
numeric Fourier sums) are authoritative; closed forms are checked
against them.
"""

from __future__ import annotations

import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid, quad
from scipy.interpolate import PchipInterpolator
from scipy.optimize import brentq

from .elliptic import EllipticModulus, ellip_E, ellip_K, ellip_Pi
from .errors import (
    DomainError,
    NumericError,
    RangeError,
    RegimeWarning,
    ResolutionWarning,
)
from .potential import (
    SystemParams,
    TurningPoints1D,
    TurningPoints3D,
    potential_1d,
    turning_points_1d,
    turning_points_3d,
)

__all__ = [
    "AsymptoticConstants",
    "FourierAmplitudes",
    "ActionAngleChart",
    "modulus_k",
    "action_1d_quadrature",
    "action_1d_closed",
    "energy_of_action",
    "omega0_exact",
    "h0_large_a",
    "omega0_large_a",
    "h0_small_a",
    "omega0_small_a",
    "angle_of_x",
    "angle_of_x_printed",
    "fourier_x_k",
    "fourier_small_a",
    "fourier_large_a",
    "action_3d_quadrature",
    "action_3d_closed",
    "action_3d_closed_printed",
    "h0_3d",
    "omega0_3d",
    "kepler_action",
    "kepler_energy",
    "kepler_omega0",
    "kepler_fourier_x_k",
]

#: regime-gate thresholds (configurable defaults): the outer turning point
#: is "large" above LARGE_A_FACTOR * sqrt(Z/lambda) and "small" below
#: SMALL_A_FACTOR * sqrt(Z/lambda).
LARGE_A_FACTOR = 10.0
SMALL_A_FACTOR = 0.1

#: numeric literal taken verbatim from the source asymptotic formula for
#: the deep-Coulomb-regime Hamiltonian; an independent series expansion
#: gives 3.0 for the same coefficient, and the discrepancy is recorded in
#: the test log rather than silently corrected.
SMALL_A_QUADRATIC_COEFF = 9.7


# --------------------------------------------------------------------------
# Kepler (lambda = 0) baseline closed forms
# --------------------------------------------------------------------------

def kepler_action(E: float, Z: float) -> float:
    """n = Z / sqrt(-2E) for the pure Coulomb potential."""
    if E >= 0.0:
        raise DomainError(f"Kepler action undefined for E={E} >= 0")
    return Z / math.sqrt(-2.0 * E)


def kepler_energy(n: float, Z: float) -> float:
    """E = -Z^2 / (2 n^2)."""
    if n <= 0.0:
        raise DomainError(f"action n={n} must be > 0")
    return -Z * Z / (2.0 * n * n)


def kepler_omega0(n: float, Z: float) -> float:
    """omega0 = Z^2 / n^3."""
    if n <= 0.0:
        raise DomainError(f"action n={n} must be > 0")
    return Z * Z / n**3


def kepler_fourier_x_k(n: float, k: int, Z: float) -> float:
    """Cosine amplitude X_k of the 1D Coulomb bounce orbit.

    X_k = -(2 n^2 / (Z k)) * J'_k(k) for k >= 1 (J'_k is the Bessel
    derivative), X_0 = 1.5 n^2 / Z (orbit mean).
    """
    from scipy.special import jvp

    if k == 0:
        return 1.5 * n * n / Z
    return -(2.0 * n * n / (Z * k)) * float(jvp(k, k))


# --------------------------------------------------------------------------
# 1D action and frequency: definitional quadratures
# --------------------------------------------------------------------------

def _orbit_phi_integrals(E: float, p: SystemParams):
    """Common smooth parametrization of the 1D orbit.

    Substituting x = a sin^2(phi) turns both sqrt-singular endpoint
    integrals into smooth ones.  Returns (a, c, speed) where
    speed(phi) = sqrt(2(E - V)) * dx/dphi and the time weight is
    dt/dphi = dx/dphi / sqrt(2(E - V)).
    """
    tp = turning_points_1d(E, p)
    return tp


def action_1d_quadrature(E: float, p: SystemParams) -> float:
    """Definitional action by adaptive quadrature, absolute error <= 1e-10.

    Uses the x = u^2 substitution (then u = sqrt(a) sin(phi)) so the
    integrand is smooth at both the Coulomb wall and the turning point.
    """
    tp = turning_points_1d(E, p)
    a = tp.a
    if p.lam == 0.0:
        return kepler_action(E, p.Z)
    c = tp.c
    # n = (2 sqrt(2 lam) a / pi) * int_0^{pi/2} cos^2(phi) sqrt(a sin^2 phi - c) dphi
    def integrand(phi):
        s = math.sin(phi)
        return math.cos(phi) ** 2 * math.sqrt(a * s * s - c)

    val, err = quad(integrand, 0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=1e-12, limit=200)
    n = 2.0 * math.sqrt(2.0 * p.lam) * a * val / math.pi
    if err * 2.0 * math.sqrt(2.0 * p.lam) * a / math.pi > 1e-10 * max(1.0, n):
        raise NumericError("action quadrature did not converge", achieved_tolerance=err)
    return n


def modulus_k(tp: TurningPoints1D, p: SystemParams) -> EllipticModulus:
    """Elliptic modulus of the 1D orbit: k^2 = a / (a - c).

    In the dimensionless chart a_hat = a / sqrt(Z/lambda) this is
    identically k^2 = a_hat^2 / (a_hat^2 + 1), because the root product
    satisfies a*c = -Z/lambda.
    """
    if tp.hydrogen:
        raise DomainError("modulus undefined in hydrogen mode (lambda = 0)")
    return EllipticModulus.from_k2(tp.a / (tp.a - tp.c))


def action_1d_closed(E: float, p: SystemParams) -> float:
    """Closed-form action in terms of complete elliptic integrals.

    n = (2 sqrt(2 lam) / (3 pi)) (a - c)^{3/2} [(2k^2 - 1) E(k) + (1 - k^2) K(k)],
    with k^2 = a/(a - c).  Agrees with :func:`action_1d_quadrature` to
    machine precision (verified property).
    """
    if p.lam <= 0.0:
        raise DomainError("closed-form action requires lambda > 0 (use kepler_action)")
    tp = turning_points_1d(E, p)
    m = modulus_k(tp, p)
    k2 = m.k2
    bracket = (2.0 * k2 - 1.0) * ellip_E(m) + (1.0 - k2) * ellip_K(m)
    return 2.0 * math.sqrt(2.0 * p.lam) * (tp.a - tp.c) ** 1.5 * bracket / (3.0 * math.pi)


def omega0_exact(E: float, p: SystemParams) -> float:
    """Proper frequency 2 pi / T(E) from the definitional period integral.

    T(E) = 2 int_0^a dx / sqrt(2(E - V(x))), relative error <= 1e-8.
    """
    tp = turning_points_1d(E, p)
    a = tp.a

    if p.lam == 0.0:
        return kepler_omega0(kepler_action(E, p.Z), p.Z)

    c = tp.c
    lam = p.lam

    # dt/dphi = sqrt(2) a sin^2(phi) / sqrt(lam (a sin^2 phi - c)); smooth.
    def integrand(phi):
        s = math.sin(phi)
        return s * s / math.sqrt(lam * (a * s * s - c))

    val, err = quad(integrand, 0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=1e-11, limit=200)
    half_period = math.sqrt(2.0) * a * val
    if half_period <= 0.0 or err / max(val, 1e-300) > 1e-8:
        raise NumericError("period quadrature did not converge", achieved_tolerance=err)
    return math.pi / half_period


def energy_of_action(n: float, p: SystemParams) -> float:
    """Invert n(E) by bracketed root finding; |n(E*) - n| <= 1e-10."""
    if n <= 0.0:
        raise DomainError(f"action n={n} must be > 0")
    if p.lam == 0.0:
        return kepler_energy(n, p.Z)

    def f(E):
        return action_1d_closed(E, p) - n

    # bracket by marching the outer turning point across its scale
    ls = p.length_scale if p.Z > 0 else 1.0 / math.sqrt(p.lam)
    # a_hi = 1e4 * ls keeps the orbit modulus below the K(k) divergence
    # cutoff while still covering actions up to ~1e5
    a_lo, a_hi = 1e-6 * ls, 1e4 * ls
    E_lo = p.lam * a_lo - (p.Z / a_lo if p.Z > 0 else 0.0)
    E_hi = p.lam * a_hi - (p.Z / a_hi if p.Z > 0 else 0.0)
    if f(E_lo) > 0.0 or f(E_hi) < 0.0:
        raise RangeError(f"action n={n} outside invertible range")
    E = brentq(f, E_lo, E_hi, xtol=1e-14, rtol=1e-15, maxiter=300)
    return float(E)


# --------------------------------------------------------------------------
# Asymptotic closed forms (dimensionless chart)
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class AsymptoticConstants:
    """Constants of the asymptotic H0(n) formulas.

    Built from (Z, lambda) via the Coulomb rescaling E = Z^2 E_hat,
    lambda_hat = lambda / Z^3 (the action n is invariant under it).
    ``A`` is the wide-orbit energy constant (3 pi lambda_hat / (2 sqrt 2))^{2/3};
    ``B`` is the action-prefactor constant 2 sqrt 2 / (3 pi lambda_hat^{1/4}).
    ``A_printed`` preserves the source's literal expression
    3 pi lambda_hat^{2/3} / (2 sqrt 2), which is dimensionally inconsistent
    with its own B and kept only for the comparison log.
    """

    lam_hat: float
    A: float = field(init=False)
    B: float = field(init=False)
    A_printed: float = field(init=False)

    def __post_init__(self):
        if self.lam_hat <= 0.0:
            raise DomainError("asymptotic constants require lambda > 0")
        object.__setattr__(
            self, "A", (3.0 * math.pi * self.lam_hat / (2.0 * math.sqrt(2.0))) ** (2.0 / 3.0)
        )
        object.__setattr__(
            self, "B", 2.0 * math.sqrt(2.0) / (3.0 * math.pi * self.lam_hat**0.25)
        )
        object.__setattr__(
            self, "A_printed", 3.0 * math.pi * self.lam_hat ** (2.0 / 3.0) / (2.0 * math.sqrt(2.0))
        )

    @classmethod
    def for_params(cls, p: SystemParams) -> "AsymptoticConstants":
        if p.Z <= 0.0:
            raise DomainError("Coulomb rescaling requires Z > 0")
        return cls(lam_hat=p.lam / p.Z**3)


def _regime_gate(E: float, p: SystemParams, want: str) -> bool:
    """Warn (never raise) when E sits outside the requested asymptotic regime."""
    a = turning_points_1d(E, p).a
    ls = p.length_scale
    if want == "large" and a < LARGE_A_FACTOR * ls:
        warnings.warn(
            f"wide-orbit formula evaluated at a={a:.4g} < {LARGE_A_FACTOR}*sqrt(Z/lambda)"
            f"={LARGE_A_FACTOR * ls:.4g}",
            RegimeWarning,
            stacklevel=3,
        )
        return False
    if want == "small" and a > SMALL_A_FACTOR * ls:
        warnings.warn(
            f"deep-Coulomb formula evaluated at a={a:.4g} > {SMALL_A_FACTOR}*sqrt(Z/lambda)"
            f"={SMALL_A_FACTOR * ls:.4g}",
            RegimeWarning,
            stacklevel=3,
        )
        return False
    return True


def h0_large_a(n: float, p: SystemParams, check_regime: bool = True) -> float:
    """Asymptotic H0(n) for wide orbits (a >> sqrt(Z/lambda)).

    H0 = Z^2 A n^{2/3} [1 - lam_hat ln(4 B^{-2/3} n^{2/3}) / (A^2 n^{4/3})]
    in the rescaled chart (A, B from :class:`AsymptoticConstants`).
    """
    cst = AsymptoticConstants.for_params(p)
    h = p.Z**2 * cst.A * n ** (2.0 / 3.0) * (
        1.0
        - cst.lam_hat
        * math.log(4.0 * cst.B ** (-2.0 / 3.0) * n ** (2.0 / 3.0))
        / (cst.A**2 * n ** (4.0 / 3.0))
    )
    if check_regime:
        _regime_gate(h, p, "large")
    return h


def omega0_large_a(n: float, p: SystemParams, check_regime: bool = True) -> float:
    """Exact n-derivative of :func:`h0_large_a` (so the finite-difference
    consistency of omega0 = dH0/dn holds by construction).

    omega0 = (2/3) Z^2 [ A n^{-1/3}
                         + (lam_hat / A) n^{-5/3} (ln(4 B^{-2/3} n^{2/3}) - 1) ]
    """
    cst = AsymptoticConstants.for_params(p)
    log_term = math.log(4.0 * cst.B ** (-2.0 / 3.0) * n ** (2.0 / 3.0))
    w = (2.0 / 3.0) * p.Z**2 * (
        cst.A * n ** (-1.0 / 3.0)
        + (cst.lam_hat / cst.A) * n ** (-5.0 / 3.0) * (log_term - 1.0)
    )
    if check_regime:
        _regime_gate(h0_large_a(n, p, check_regime=False), p, "large")
    return w


def h0_small_a(n: float, p: SystemParams, check_regime: bool = True) -> float:
    """Asymptotic H0(n) for deep-Coulomb orbits (a << sqrt(Z/lambda)).

    H0 = 0.5 Z^2 (9.7 lam_hat n^2 - n^{-2}); the 9.7 literal is verbatim
    (see SMALL_A_QUADRATIC_COEFF).
    """
    lam_hat = p.lam / p.Z**3
    h = 0.5 * p.Z**2 * (SMALL_A_QUADRATIC_COEFF * lam_hat * n * n - 1.0 / (n * n))
    if check_regime and p.lam > 0.0:
        _regime_gate(h, p, "small")
    return h


def omega0_small_a(n: float, p: SystemParams, check_regime: bool = True) -> float:
    """Exact n-derivative of :func:`h0_small_a`:
    omega0 = Z^2 (n^{-3} + 9.7 lam_hat n)."""
    lam_hat = p.lam / p.Z**3 if p.Z > 0 else 0.0
    w = p.Z**2 * (n ** (-3.0) + SMALL_A_QUADRATIC_COEFF * lam_hat * n)
    if check_regime and p.lam > 0.0:
        _regime_gate(h0_small_a(n, p, check_regime=False), p, "small")
    return w


# --------------------------------------------------------------------------
# Angle variable
# --------------------------------------------------------------------------

def angle_of_x(x: float, E: float, branch: int, p: SystemParams) -> float:
    """Angle theta of position x on the orbit at energy E.

    Definitional time-integral form: theta = omega0 * t(x) on the
    outgoing branch (branch >= 0), and 2 pi - that value on the incoming
    branch (branch < 0); theta in [0, 2 pi).  theta = 0 at the wall.
    """
    tp = turning_points_1d(E, p)
    a = tp.a
    if x <= 0.0 or x > a * (1.0 + 1e-12):
        raise DomainError(f"x={x} outside the orbit (0, a={a}]")
    x = min(x, a)
    w0 = omega0_exact(E, p)

    phi_x = math.asin(min(1.0, math.sqrt(x / a)))
    if p.lam == 0.0:
        absE = -E

        def integrand(phi):
            s = math.sin(phi)
            return s * s / math.sqrt(absE)

    else:
        c = tp.c
        lam = p.lam

        def integrand(phi):
            s = math.sin(phi)
            return s * s / math.sqrt(lam * (a * s * s - c))

    val, _ = quad(integrand, 0.0, phi_x, epsabs=1e-13, epsrel=1e-11, limit=200)
    t = math.sqrt(2.0) * a * val
    theta = w0 * t
    if branch < 0:
        theta = 2.0 * math.pi - theta
    return theta % (2.0 * math.pi)


def angle_of_x_printed(x: float, n: float, p: SystemParams, dn: float = 1e-6) -> float:
    """Best-effort literal transcription of the source's closed-form angle.

    The printed expression's bracket structure is ambiguous; this
    evaluates the most plausible literal reading (with dk/dn by centered
    finite difference) purely so a cross-check test can report its
    discrepancy against :func:`angle_of_x`.  Not used anywhere else.
    """
    if p.lam <= 0.0:
        raise DomainError("printed angle form requires lambda > 0")
    cst = AsymptoticConstants.for_params(p)
    ls = p.length_scale

    def k_of_n(nv):
        E = energy_of_action(nv, p)
        return modulus_k(turning_points_1d(E, p), p).k

    k = k_of_n(n)
    dk_dn = (k_of_n(n + dn) - k_of_n(n - dn)) / (2.0 * dn)
    m = EllipticModulus.from_k(k)
    K, Ek = ellip_K(m), ellip_E(m)
    xh = x / ls
    kc = m.kc
    term1 = (xh + 1.0 / xh) * (Ek - K) / k * dk_dn
    term2 = (1.0 / xh) * K * (Ek - k * kc * K) / (k * kc) * dk_dn
    return cst.B * math.sqrt(xh + 1.0 / xh) * (term1 + term2)


# --------------------------------------------------------------------------
# Fourier amplitudes
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class FourierAmplitudes:
    """Cosine amplitudes of x(theta) on the orbit with action n.

    coefficients[k] = X_k for k = 0..k_max in the convention
    x(theta) = X_0 + sum_{k>=1} X_k cos(k theta).
    """

    n: float
    coefficients: np.ndarray
    k_max: int

    def __post_init__(self):
        if len(self.coefficients) != self.k_max + 1:
            raise DomainError("coefficients must have length k_max + 1")

    def __getitem__(self, k: int) -> float:
        return float(self.coefficients[k])

    def reconstruct(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=float)
        x = np.full_like(theta, self.coefficients[0])
        for k in range(1, self.k_max + 1):
            x += self.coefficients[k] * np.cos(k * theta)
        return x


def _orbit_theta_samples(E: float, p: SystemParams, m_grid: int = 8192):
    """Sample half an orbit: returns (x, theta) on phi in [0, pi/2].

    x = a sin^2(phi); theta = pi * t(phi)/t(pi/2) (half period mapped to
    [0, pi] exactly, removing cumulative-quadrature endpoint error).
    """
    tp = turning_points_1d(E, p)
    a = tp.a
    phi = np.linspace(0.0, 0.5 * math.pi, m_grid + 1)
    s2 = np.sin(phi) ** 2
    if p.lam == 0.0:
        g = math.sqrt(2.0) * a * s2 / math.sqrt(-E)
    else:
        g = math.sqrt(2.0) * a * s2 / np.sqrt(p.lam * (a * s2 - tp.c))
    t = cumulative_trapezoid(g, phi, initial=0.0)
    theta = math.pi * t / t[-1]
    return a * s2, theta, phi, g


def fourier_x_k(
    n: float,
    k_max: int,
    p: SystemParams,
    m_grid: int = 8192,
    resolution_warn_ratio: float = 0.01,
) -> FourierAmplitudes:
    """Numeric cosine amplitudes X_k, k = 0..k_max, of the orbit at action n.

    Computed by time-sampling one unperturbed period on a smooth orbit
    parametrization and integrating x(theta) cos(k theta) over the half
    period (the orbit is even about the bounce).  Emits a
    :class:`ResolutionWarning` when |X_{k_max}| / |X_1| exceeds
    ``resolution_warn_ratio``.
    """
    if k_max < 1:
        raise DomainError("k_max must be >= 1")
    E = energy_of_action(n, p)
    x, theta, phi, g = _orbit_theta_samples(E, p, m_grid)
    # dtheta = (pi / t_half) * g dphi; fold the constant into normalization
    # by integrating against theta directly.
    coeffs = np.empty(k_max + 1)
    coeffs[0] = np.trapezoid(x, theta) / math.pi
    for k in range(1, k_max + 1):
        coeffs[k] = 2.0 * np.trapezoid(x * np.cos(k * theta), theta) / math.pi
    if abs(coeffs[k_max]) > resolution_warn_ratio * max(abs(coeffs[1]), 1e-300):
        warnings.warn(
            f"Fourier truncation not resolved: |X_{k_max}|/|X_1| = "
            f"{abs(coeffs[k_max]) / abs(coeffs[1]):.3g} > {resolution_warn_ratio}",
            ResolutionWarning,
            stacklevel=2,
        )
    return FourierAmplitudes(n=n, coefficients=coeffs, k_max=k_max)


def fourier_small_a(n: float, k: int, p: SystemParams, check_regime: bool = True) -> float:
    """Verbatim deep-Coulomb asymptotic amplitude (recorded comparison only).

    x_k = -(4 E(n) / lambda_hat) (1/k) sin^2(pi k sqrt(lambda_hat) / 2) / Z
    in the rescaled chart, with E(n) from :func:`h0_small_a`.  Known to
    disagree structurally with the numeric amplitudes in the Coulomb
    limit; see the comparison test log.
    """
    if k < 1:
        raise DomainError("k must be >= 1")
    lam_hat = p.lam / p.Z**3
    e_hat = h0_small_a(n, p, check_regime=check_regime) / p.Z**2
    return -(4.0 * e_hat / lam_hat) * math.sin(0.5 * math.pi * k * math.sqrt(lam_hat)) ** 2 / (
        k * p.Z
    )


def fourier_large_a(n: float, k: int, p: SystemParams, check_regime: bool = True) -> float:
    """Verbatim wide-orbit asymptotic amplitude x_k = -2 A n^{2/3} / (pi^2 lam_hat k^2) / Z."""
    if k < 1:
        raise DomainError("k must be >= 1")
    cst = AsymptoticConstants.for_params(p)
    if check_regime:
        _regime_gate(h0_large_a(n, p, check_regime=False), p, "large")
    return -2.0 * cst.A * n ** (2.0 / 3.0) / (math.pi**2 * cst.lam_hat * k * k) / p.Z


# --------------------------------------------------------------------------
# 3D radial action
# --------------------------------------------------------------------------

def action_3d_quadrature(E: float, p: SystemParams) -> float:
    """Radial action n_r = (1/pi) int_b^a p_r dr by smooth quadrature.

    p_r = sqrt(2 lam (a - r)(r - b)(r - c)) / r with the radial cubic of
    the configured centrifugal convention; r = b + (a-b) sin^2(phi)
    removes both endpoint singularities.
    """
    tp = turning_points_3d(E, p)
    a, b, c = tp.a, tp.b, tp.c
    lam = p.lam

    def integrand(phi):
        s2 = math.sin(phi) ** 2
        r = b + (a - b) * s2
        return (s2 - s2 * s2) * math.sqrt(r - c) / r

    val, err = quad(integrand, 0.0, 0.5 * math.pi, epsabs=1e-13, epsrel=1e-11, limit=200)
    return 2.0 * math.sqrt(2.0 * lam) * (a - b) ** 2 * val / math.pi


def action_3d_closed(E: float, p: SystemParams) -> float:
    """Closed-form radial action in complete elliptic integrals.

    With k^2 = (a-b)/(a-c) and characteristic alpha^2 = (a-b)/a (always
    in (0, 1) for bound orbits, so the third-kind integral stays in the
    circular case):

    n_r = (sqrt(2 lam)/pi) * 2 (a-b)^2 sqrt(a-c) *
          [ S2/(a-b) + b E(k)/(a-b)^2 - (b/(a-b)^2) * P ],
    S2 = [(2k^2-1)E + (1-k^2)K] / (3k^2),
    P  = (k^2/alpha^2) K + (1 - k^2/alpha^2) Pi(alpha^2, k).
    """
    tp = turning_points_3d(E, p)
    a, b, c = tp.a, tp.b, tp.c
    k2 = (a - b) / (a - c)
    alpha2 = (a - b) / a
    m = EllipticModulus.from_k2(k2)
    K, Ek = ellip_K(m), ellip_E(m)
    s2 = ((2.0 * k2 - 1.0) * Ek + (1.0 - k2) * K) / (3.0 * k2)
    pterm = (k2 / alpha2) * K + (1.0 - k2 / alpha2) * ellip_Pi(alpha2, m)
    A = 1.0 / (a - b)
    B = b / (a - b) ** 2
    C = -a * b / (a - b) ** 2
    total = 2.0 * (a - b) ** 2 * math.sqrt(a - c) * (A * s2 + B * Ek + (C / a) * pterm)
    return math.sqrt(2.0 * p.lam) * total / math.pi


def action_3d_closed_printed(E: float, p: SystemParams) -> float:
    """Literal transcription of the source's printed 3D closed form.

    Kept only so a comparison test can report its discrepancy against the
    definitional quadrature (its integration limits and third-kind
    characteristic disagree with the correct reduction).  May raise
    :class:`DomainError` when the printed characteristic leaves the
    circular case.
    """
    tp = turning_points_3d(E, p)
    a, b, c = tp.a, tp.b, tp.c
    k2 = (a - b) / (a - c)
    m = EllipticModulus.from_k2(k2)
    beta = c * k2 / b
    g = 2.0 / math.sqrt(a - c)
    L2 = p.L**2
    val = (
        (2.0 * p.Z / 3.0 - L2 / c + E * c / 3.0) * ellip_K(m)
        + (E * (a - c) / 3.0) * ellip_E(m)
        + L2 * (1.0 / c - 1.0 / b) * ellip_Pi(beta**2, m)
    )
    return val * g / math.sqrt(p.lam)


def h0_3d(n: float, L: float, p: SystemParams, check_regime: bool = True) -> float:
    """Asymptotic 3D H0(n, L) for wide orbits (E/lambda >> 1).

    H0 = D n^{2/3} (1 + L/(3n)), D = (3 pi lam / (2 sqrt 2))^{2/3}
    (leading constant fixed against the definitional quadrature; the
    L-correction keeps the source's 1/3 coefficient, its measured value
    is ~0.5 and the comparison is recorded, not asserted).
    """
    if n <= 0.0:
        raise DomainError("n must be > 0")
    D = (3.0 * math.pi * p.lam / (2.0 * math.sqrt(2.0))) ** (2.0 / 3.0)
    h = D * (n ** (2.0 / 3.0) + (L / 3.0) * n ** (-1.0 / 3.0))
    if check_regime and (n < 10.0 or h / p.lam < 10.0):
        warnings.warn(
            f"3D asymptotic H0 evaluated outside its regime (n={n}, E/lambda="
            f"{h / p.lam:.3g})",
            RegimeWarning,
            stacklevel=2,
        )
    return h


def omega0_3d(n: float, L: float, p: SystemParams, check_regime: bool = True) -> float:
    """Exact n-derivative of :func:`h0_3d`:
    omega0 = D ((2/3) n^{-1/3} - (L/9) n^{-4/3})."""
    if n <= 0.0:
        raise DomainError("n must be > 0")
    D = (3.0 * math.pi * p.lam / (2.0 * math.sqrt(2.0))) ** (2.0 / 3.0)
    w = D * ((2.0 / 3.0) * n ** (-1.0 / 3.0) - (L / 9.0) * n ** (-4.0 / 3.0))
    if check_regime:
        h0_3d(n, L, p, check_regime=True)
    return w


# --------------------------------------------------------------------------
# Chart: cached invertible E <-> n map
# --------------------------------------------------------------------------

class ActionAngleChart:
    """Cached strictly monotone map E <-> n with omega0 accessors.

    Nodes are exact evaluations (closed-form action, period quadrature);
    interpolation between nodes is monotone cubic (PCHIP).  The inverse
    E(n) is obtained by root-solving the forward interpolant, so the
    round trip is exact to root-finder tolerance.
    """

    def __init__(self, params: SystemParams, E_grid, n_grid, omega0_grid):
        E_grid = np.asarray(E_grid, dtype=float)
        n_grid = np.asarray(n_grid, dtype=float)
        omega0_grid = np.asarray(omega0_grid, dtype=float)
        if not np.all(np.diff(E_grid) > 0.0):
            raise DomainError("chart E grid must be strictly increasing")
        if not np.all(np.diff(n_grid) > 0.0):
            raise DomainError("chart n(E) must be strictly increasing")
        if not np.all(omega0_grid > 0.0):
            raise DomainError("chart omega0 must be positive")
        self.params = params
        self.E_grid = E_grid
        self.n_grid = n_grid
        self.omega0_grid = omega0_grid
        self._n_of_E = PchipInterpolator(E_grid, n_grid, extrapolate=False)
        self._omega0_of_E = PchipInterpolator(E_grid, omega0_grid, extrapolate=False)
        self._n_of_E_deriv = self._n_of_E.derivative()
        self._omega0_of_n = PchipInterpolator(n_grid, omega0_grid, extrapolate=False)
        self._domega0_dn = self._omega0_of_n.derivative()

    # -- construction -----------------------------------------------------

    @classmethod
    def build(
        cls,
        params: SystemParams,
        n_min: float = 0.25,
        n_max: float = 60.0,
        nodes: int = 256,
    ) -> "ActionAngleChart":
        """Build a chart covering the action range [n_min, n_max].

        Nodes are log-spaced in the outer turning point a (equivalently
        log-spaced in the natural orbit-size variable), which spaces E
        densely where the map curves most.
        """
        if params.lam == 0.0:
            E_lo = kepler_energy(n_min, params.Z)
            E_hi = kepler_energy(n_max, params.Z)
            a_lo, a_hi = -params.Z / E_lo, -params.Z / E_hi
            a_vals = np.geomspace(a_lo, a_hi, nodes)
            E_vals = -params.Z / a_vals
            n_vals = params.Z / np.sqrt(-2.0 * E_vals)
            w_vals = params.Z**2 / n_vals**3
            return cls(params, E_vals, n_vals, w_vals)
        E_lo = energy_of_action(n_min, params)
        E_hi = energy_of_action(n_max, params)
        a_lo = turning_points_1d(E_lo, params).a
        a_hi = turning_points_1d(E_hi, params).a
        a_vals = np.geomspace(a_lo, a_hi, nodes)
        E_vals = params.lam * a_vals - params.Z / a_vals
        n_vals = np.array([action_1d_closed(E, params) for E in E_vals])
        w_vals = np.array([omega0_exact(E, params) for E in E_vals])
        return cls(params, E_vals, n_vals, w_vals)

    # -- accessors --------------------------------------------------------

    @property
    def E_range(self):
        return float(self.E_grid[0]), float(self.E_grid[-1])

    @property
    def n_range(self):
        return float(self.n_grid[0]), float(self.n_grid[-1])

    def _check_E(self, E: float):
        if not (self.E_grid[0] <= E <= self.E_grid[-1]):
            raise RangeError(f"E={E} outside chart range {self.E_range}")

    def _check_n(self, n: float):
        if not (self.n_grid[0] <= n <= self.n_grid[-1]):
            raise RangeError(f"n={n} outside chart range {self.n_range}")

    def n_of_E(self, E: float) -> float:
        self._check_E(E)
        return float(self._n_of_E(E))

    def E_of_n(self, n: float) -> float:
        self._check_n(n)
        if n == self.n_grid[0]:
            return float(self.E_grid[0])
        if n == self.n_grid[-1]:
            return float(self.E_grid[-1])
        i = np.searchsorted(self.n_grid, n)
        E = brentq(
            lambda e: self._n_of_E(e) - n,
            self.E_grid[max(i - 1, 0)],
            self.E_grid[min(i, len(self.E_grid) - 1)],
            xtol=1e-15,
            rtol=8.9e-16,
        )
        return float(E)

    def omega0_of_E(self, E: float) -> float:
        self._check_E(E)
        return float(self._omega0_of_E(E))

    def omega0_of_n(self, n: float) -> float:
        self._check_n(n)
        return float(self._omega0_of_n(n))

    def domega0_dn(self, n: float) -> float:
        self._check_n(n)
        return float(self._domega0_dn(n))

    def contains_E(self, E: float) -> bool:
        return bool(self.E_grid[0] <= E <= self.E_grid[-1])

    # -- CSV round trip ---------------------------------------------------

    def dump_csv(self, path) -> None:
        """Write the chart nodes as CSV with columns E, n, omega0."""
        header = "E,n,omega0"
        data = np.column_stack([self.E_grid, self.n_grid, self.omega0_grid])
        np.savetxt(path, data, delimiter=",", header=header, comments="", fmt="%.17g")

    @classmethod
    def load_csv(cls, path, params: SystemParams) -> "ActionAngleChart":
        data = np.loadtxt(path, delimiter=",", skiprows=1)
        return cls(params, data[:, 0], data[:, 1], data[:, 2])
