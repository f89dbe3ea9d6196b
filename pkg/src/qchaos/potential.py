"""Unperturbed system definition, potential evaluation, and turning points.

The core math is unit-free: mass = 1, Z dimensionless, lambda and epsilon
carry energy^2.  Unit conversion lives at the CLI boundary only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NoBoundOrbitError, UnboundOrbitError

__all__ = [
    "SystemParams",
    "DriveParams",
    "TurningPoints1D",
    "TurningPoints3D",
    "potential_1d",
    "force_1d",
    "effective_potential_3d",
    "turning_points_1d",
    "turning_points_3d",
    "circular_orbit_energy",
]


@dataclass(frozen=True)
class SystemParams:
    """Parameters of the unperturbed system.

    Z: Coulomb coupling (dimensionless); lam: confining strength
    (energy^2, mass = 1 units); L: angular momentum (0 for 1D);
    mass_scale_mev: particle mass in MeV, used only for unit conversion
    at the CLI boundary, never inside the core math.
    """

    Z: float
    lam: float
    L: float = 0.0
    mass_scale_mev: float | None = None
    #: centrifugal convention: "half" uses L^2/(2 r^2) (textbook, default),
    #: "full" uses L^2/r^2.
    centrifugal: str = "half"

    def __post_init__(self):
        if self.Z < 0.0:
            raise DomainError(f"Z={self.Z} must be >= 0")
        if self.lam < 0.0:
            raise DomainError(f"lambda={self.lam} must be >= 0")
        if self.L < 0.0:
            raise DomainError(f"L={self.L} must be >= 0")
        if self.centrifugal not in ("half", "full"):
            raise DomainError(f"centrifugal={self.centrifugal!r} not in {{'half','full'}}")

    @property
    def hydrogen_mode(self) -> bool:
        """True when the confining term is absent (pure Coulomb baseline)."""
        return self.lam == 0.0

    @property
    def length_scale(self) -> float:
        """sqrt(Z/lambda): the radius where -Z/x and lambda*x cancel."""
        if self.lam == 0.0:
            raise DomainError("length scale sqrt(Z/lambda) undefined at lambda=0")
        return math.sqrt(self.Z / self.lam)

    @property
    def centrifugal_coefficient(self) -> float:
        """Coefficient c_L in the effective potential term c_L * L^2 / r^2."""
        return 0.5 if self.centrifugal == "half" else 1.0


@dataclass(frozen=True)
class DriveParams:
    """Monochromatic drive epsilon * x * cos(omega t + phase)."""

    epsilon: float
    omega: float
    phase: float = 0.0

    def __post_init__(self):
        if self.epsilon < 0.0:
            raise DomainError(f"epsilon={self.epsilon} must be >= 0")
        if self.omega <= 0.0:
            raise DomainError(f"omega={self.omega} must be > 0")

    @property
    def period(self) -> float:
        return 2.0 * math.pi / self.omega


@dataclass(frozen=True)
class TurningPoints1D:
    """Roots of lambda x^2 - E x - Z = 0.

    a is the outer turning point (the only physical one: the inner barrier
    is the wall at x = 0); c is the negative quadratic root, kept because
    the closed-form action depends on it.  In hydrogen mode (lambda = 0,
    E < 0) c is NaN and ``hydrogen`` is True.
    """

    a: float
    c: float
    hydrogen: bool = False

    def __post_init__(self):
        if not self.a > 0.0:
            raise DomainError(f"outer turning point a={self.a} must be > 0")
        if not self.hydrogen and not self.c < 0.0:
            raise DomainError(f"negative root c={self.c} must be < 0")


@dataclass(frozen=True)
class TurningPoints3D:
    """Real roots of the radial cubic, ordered a >= b > 0 > c."""

    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a >= self.b > 0.0 > self.c):
            raise DomainError(
                f"3D turning points must satisfy a >= b > 0 > c, got "
                f"({self.a}, {self.b}, {self.c})"
            )


def potential_1d(x: float, p: SystemParams) -> float:
    """V(x) = -Z/x + lambda*x for x > 0 (infinite wall at x <= 0).

    Note V is strictly increasing (V' = Z/x^2 + lambda > 0 everywhere),
    so it has no interior minimum; V vanishes at x = sqrt(Z/lambda).
    """
    if x <= 0.0:
        raise DomainError(f"x={x} is inside the infinite wall (x <= 0)")
    return -p.Z / x + p.lam * x


def force_1d(x: float, p: SystemParams) -> float:
    """Analytic conservative force -dV/dx = -Z/x^2 - lambda."""
    if x <= 0.0:
        raise DomainError(f"x={x} is inside the infinite wall (x <= 0)")
    return -p.Z / (x * x) - p.lam


def effective_potential_3d(r: float, p: SystemParams) -> float:
    """V(r) + c_L * L^2 / r^2 with the configured centrifugal convention."""
    if r <= 0.0:
        raise DomainError(f"r={r} must be > 0")
    return -p.Z / r + p.lam * r + p.centrifugal_coefficient * p.L**2 / (r * r)


def turning_points_1d(E: float, p: SystemParams) -> TurningPoints1D:
    """Closed-form roots of lambda x^2 - E x - Z = 0.

    For lambda > 0: a, c = (E +/- sqrt(E^2 + 4 Z lambda)) / (2 lambda),
    with a - c = sqrt(E^2 + 4 Z lambda)/lambda.  For lambda = 0 the orbit
    is bound only for E < 0, with a = -Z/E (hydrogen mode).
    """
    if p.lam == 0.0:
        if E >= 0.0:
            raise UnboundOrbitError(
                f"lambda=0 with E={E} >= 0: no bound orbit in the pure Coulomb case"
            )
        return TurningPoints1D(a=-p.Z / E, c=float("nan"), hydrogen=True)
    disc = math.sqrt(E * E + 4.0 * p.Z * p.lam)
    if disc == 0.0:
        # only possible when Z = 0 and E = 0: motion collapsed to the wall
        raise UnboundOrbitError("degenerate orbit: E = 0 with Z = 0")
    a = (E + disc) / (2.0 * p.lam)
    c = (E - disc) / (2.0 * p.lam)
    if c == 0.0:
        # Z = 0, E > 0 pure linear case: the formula's c is exactly 0;
        # keep it infinitesimally negative so the invariant a > 0 > c is
        # intelligible downstream (closed forms are continuous in c).
        c = -0.0
        return TurningPoints1D(a=a, c=-1e-300, hydrogen=False)
    return TurningPoints1D(a=a, c=c, hydrogen=False)


def _radial_cubic_coefficients(E: float, p: SystemParams) -> np.ndarray:
    """Coefficients of the cubic  -2 lam r^3 + 2 E r^2 + 2 Z r - 2 c_L L^2."""
    cl = p.centrifugal_coefficient
    return np.array([-2.0 * p.lam, 2.0 * E, 2.0 * p.Z, -2.0 * cl * p.L**2])


def turning_points_3d(E: float, p: SystemParams) -> TurningPoints3D:
    """Real roots of the radial cubic (radicand of p_r^2 cleared of r^2).

    Requires lambda > 0 and L > 0 with (E, L) admitting a bound orbit
    (three real roots a >= b > 0 > c).
    """
    if p.lam <= 0.0:
        raise DomainError("turning_points_3d requires lambda > 0")
    if p.L <= 0.0:
        raise DomainError("turning_points_3d requires L > 0 (use turning_points_1d at L=0)")
    coeffs = _radial_cubic_coefficients(E, p)
    # discriminant of a3 r^3 + a2 r^2 + a1 r + a0
    a3, a2, a1, a0 = coeffs
    disc = (
        18.0 * a3 * a2 * a1 * a0
        - 4.0 * a2**3 * a0
        + a2**2 * a1**2
        - 4.0 * a3 * a1**3
        - 27.0 * a3**2 * a0**2
    )
    roots = np.roots(coeffs)
    real = np.sort(roots[np.abs(roots.imag) < 1e-9 * (1.0 + np.abs(roots))].real)
    if len(real) != 3 or disc < 0.0:
        raise NoBoundOrbitError(
            f"no bound orbit at E={E}, L={p.L}: radial cubic has complex roots",
            discriminant=disc,
        )
    c, b, a = real
    if not (b > 0.0 > c):
        raise NoBoundOrbitError(
            f"radial cubic roots {real} do not bracket a bound orbit",
            discriminant=disc,
        )
    return TurningPoints3D(a=a, b=b, c=c)


def circular_orbit_energy(p: SystemParams) -> float:
    """Energy of the circular orbit: the minimum of the effective potential.

    Only defined for L > 0, where the centrifugal barrier creates a
    minimum (the bare 1D potential is strictly monotone and has none).
    """
    if p.L <= 0.0:
        raise DomainError("circular orbit requires L > 0")
    from scipy.optimize import minimize_scalar

    ls = p.length_scale if p.lam > 0.0 else p.L**2 / max(p.Z, 1e-30)
    res = minimize_scalar(
        lambda r: effective_potential_3d(r, p),
        bounds=(1e-12 * ls, 1e6 * ls),
        method="bounded",
        options={"xatol": 1e-14 * ls},
    )
    return float(res.fun)
