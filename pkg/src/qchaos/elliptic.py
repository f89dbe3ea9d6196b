"""Complete elliptic integrals of the first, second, and third kind.

All functions take the *modulus* k (not the parameter m = k**2).  The
complementary modulus kc = sqrt(1 - k**2) is carried explicitly in
:class:`EllipticModulus` so callers working near k -> 1 can construct the
pair without cancellation.

Evaluation uses the Carlson symmetric forms R_F, R_D, R_J with the
duplication algorithm, which is uniformly accurate across the domain,
including k close to 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

__all__ = [
    "EllipticModulus",
    "carlson_rf",
    "carlson_rc",
    "carlson_rd",
    "carlson_rj",
    "ellip_K",
    "ellip_E",
    "ellip_Pi",
]

#: K(k) is treated as divergent above this modulus; callers needing the
#: log-divergent asymptotics must expand explicitly instead of relying on
#: a large finite return value.
K_MODULUS_CUTOFF = 1.0 - 1e-12

_RERR = 1e-16


@dataclass(frozen=True)
class EllipticModulus:
    """Modulus k together with its complementary modulus kc.

    Invariant: 0 <= k <= 1 and |k**2 + kc**2 - 1| <= 1e-14.
    """

    k: float
    kc: float

    def __post_init__(self):
        if not (0.0 <= self.k <= 1.0):
            raise DomainError(f"modulus k={self.k} outside [0, 1]")
        if not (0.0 <= self.kc <= 1.0):
            raise DomainError(f"complementary modulus kc={self.kc} outside [0, 1]")
        if abs(self.k**2 + self.kc**2 - 1.0) > 1e-14:
            raise DomainError(
                f"inconsistent modulus pair: k^2 + kc^2 - 1 = "
                f"{self.k**2 + self.kc**2 - 1.0:.3e}"
            )

    @classmethod
    def from_k(cls, k: float) -> "EllipticModulus":
        if not (0.0 <= k <= 1.0):
            raise DomainError(f"modulus k={k} outside [0, 1]")
        # (1-k)(1+k) avoids cancellation in 1 - k^2 for k near 1
        return cls(float(k), math.sqrt((1.0 - k) * (1.0 + k)))

    @classmethod
    def from_k2(cls, k2: float) -> "EllipticModulus":
        if not (0.0 <= k2 <= 1.0):
            raise DomainError(f"parameter k^2={k2} outside [0, 1]")
        return cls(math.sqrt(k2), math.sqrt(1.0 - k2))

    @property
    def k2(self) -> float:
        return self.k * self.k

    @property
    def kc2(self) -> float:
        return self.kc * self.kc


def _as_modulus(m) -> EllipticModulus:
    if isinstance(m, EllipticModulus):
        return m
    return EllipticModulus.from_k(float(m))


def carlson_rf(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_F(x, y, z) by duplication.

    Requires x, y, z >= 0 with at most one of them zero.
    """
    if min(x, y, z) < 0.0 or (x + y) == 0.0 or (y + z) == 0.0 or (z + x) == 0.0:
        raise DomainError("carlson_rf requires nonnegative args, at most one zero")
    for _ in range(200):
        lam = math.sqrt(x) * math.sqrt(y) + math.sqrt(y) * math.sqrt(z) + math.sqrt(z) * math.sqrt(x)
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        mu = (x + y + z) / 3.0
        if max(abs(x - mu), abs(y - mu), abs(z - mu)) < 1e-8 * mu:
            break
    mu = (x + y + z) / 3.0
    dx, dy, dz = (mu - x) / mu, (mu - y) / mu, (mu - z) / mu
    e2 = dx * dy + dy * dz + dz * dx
    e3 = dx * dy * dz
    s = 1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0
    return s / math.sqrt(mu)


def carlson_rc(x: float, y: float) -> float:
    """Degenerate Carlson integral R_C(x, y) = R_F(x, y, y), y > 0 branch."""
    if x < 0.0 or y <= 0.0:
        raise DomainError("carlson_rc requires x >= 0, y > 0")
    for _ in range(200):
        lam = 2.0 * math.sqrt(x) * math.sqrt(y) + y
        x, y = 0.25 * (x + lam), 0.25 * (y + lam)
        mu = (x + 2.0 * y) / 3.0
        if abs(x - y) < 1e-8 * mu:
            break
    mu = (x + 2.0 * y) / 3.0
    s = (y - x) / (3.0 * mu)
    poly = 1.0 + s * s * (0.3 + s * (1.0 / 7.0 + s * (0.375 + s * 9.0 / 22.0)))
    return poly / math.sqrt(mu)


def carlson_rd(x: float, y: float, z: float) -> float:
    """Carlson symmetric integral R_D(x, y, z) by duplication; z > 0."""
    if min(x, y) < 0.0 or (x + y) == 0.0 or z <= 0.0:
        raise DomainError("carlson_rd requires x, y >= 0 (not both 0) and z > 0")
    acc = 0.0
    fac = 1.0
    for _ in range(200):
        lam = math.sqrt(x) * math.sqrt(y) + math.sqrt(y) * math.sqrt(z) + math.sqrt(z) * math.sqrt(x)
        acc += fac / (math.sqrt(z) * (z + lam))
        fac *= 0.25
        x, y, z = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam)
        mu = (x + y + 3.0 * z) / 5.0
        if max(abs(x - mu), abs(y - mu), abs(z - mu)) < 1e-8 * mu:
            break
    mu = (x + y + 3.0 * z) / 5.0
    dx, dy, dz = (mu - x) / mu, (mu - y) / mu, (mu - z) / mu
    ea = dx * dy
    eb = dz * dz
    ec = ea - eb
    ed = ea - 6.0 * eb
    ee = ed + 2.0 * ec
    s = (
        1.0
        + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
        + dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea))
    )
    return 3.0 * acc + fac * s / (mu * math.sqrt(mu))


def carlson_rj(x: float, y: float, z: float, p: float) -> float:
    """Carlson symmetric integral R_J(x, y, z, p) by duplication; p > 0."""
    if min(x, y, z) < 0.0 or (x + y) == 0.0 or (y + z) == 0.0 or (z + x) == 0.0:
        raise DomainError("carlson_rj requires nonnegative x, y, z, at most one zero")
    if p <= 0.0:
        raise DomainError("carlson_rj implemented for p > 0 (circular case) only")
    acc = 0.0
    fac = 1.0
    for _ in range(200):
        sx, sy, sz = math.sqrt(x), math.sqrt(y), math.sqrt(z)
        lam = sx * sy + sy * sz + sz * sx
        alpha = (p * (sx + sy + sz) + sx * sy * sz) ** 2
        beta = p * (p + lam) ** 2
        acc += fac * carlson_rc(alpha, beta)
        fac *= 0.25
        x, y, z, p = 0.25 * (x + lam), 0.25 * (y + lam), 0.25 * (z + lam), 0.25 * (p + lam)
        mu = (x + y + z + 2.0 * p) / 5.0
        if max(abs(x - mu), abs(y - mu), abs(z - mu), abs(p - mu)) < 1e-8 * mu:
            break
    mu = (x + y + z + 2.0 * p) / 5.0
    dx, dy, dz = (mu - x) / mu, (mu - y) / mu, (mu - z) / mu
    dp = (mu - p) / mu
    ea = dx * (dy + dz) + dy * dz
    eb = dx * dy * dz
    ec = dp * dp
    ed = ea - 3.0 * ec
    ee = eb + 2.0 * dp * (ea - ec)
    s = (
        1.0
        + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * ee)
        + eb * (1.0 / 6.0 + dp * (-3.0 / 11.0 + dp * 3.0 / 26.0))
        + dp * ea * (1.0 / 3.0 - dp * 3.0 / 22.0)
        - dp * ec / 3.0
    )
    return 3.0 * acc + fac * s / (mu * math.sqrt(mu))


def ellip_K(m) -> float:
    """Complete elliptic integral of the first kind K(k).

    Argument is a modulus k or an :class:`EllipticModulus`; relative error
    <= 1e-13.  Raises :class:`DomainError` above the divergence cutoff
    k = 1 - 1e-12 rather than returning a large finite value.
    """
    m = _as_modulus(m)
    if m.k > K_MODULUS_CUTOFF:
        raise DomainError(
            f"K(k) diverges as k -> 1; refusing k={m.k!r} above cutoff "
            f"{K_MODULUS_CUTOFF!r} (use an explicit log expansion instead)"
        )
    return carlson_rf(0.0, m.kc2, 1.0)


def ellip_E(m) -> float:
    """Complete elliptic integral of the second kind E(k), modulus argument.

    Relative error <= 1e-13 on 0 <= k <= 1.
    """
    m = _as_modulus(m)
    if m.k == 1.0:
        return 1.0
    kc2 = m.kc2
    return carlson_rf(0.0, kc2, 1.0) - (m.k2 / 3.0) * carlson_rd(0.0, kc2, 1.0)


def ellip_Pi(beta2: float, m) -> float:
    """Complete elliptic integral of the third kind Pi(beta2, k).

    ``beta2`` is the characteristic; only the circular case beta2 < 1 is
    supported.  Relative error <= 1e-12.
    """
    m = _as_modulus(m)
    if beta2 >= 1.0:
        raise DomainError(f"characteristic beta^2={beta2} >= 1 (hyperbolic case unsupported)")
    if m.k > K_MODULUS_CUTOFF:
        raise DomainError(f"Pi(beta^2, k) diverges as k -> 1; refusing k={m.k!r}")
    kc2 = m.kc2
    base = carlson_rf(0.0, kc2, 1.0)
    if beta2 == 0.0:
        return base
    return base + (beta2 / 3.0) * carlson_rj(0.0, kc2, 1.0, 1.0 - beta2)
