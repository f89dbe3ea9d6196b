"""Unit conversions between natural (mass-1) units and laboratory units.

The core modules work in units where the bound particle's mass, hbar,
and c are all 1.  A physical system with reduced mass mu (GeV) maps onto
those units by the standard Hamiltonian rescaling

    x_hat = mu * x,   p_hat = p / mu,   H_hat = H / mu,

under which the coupling Z is unchanged, the string tension scales as
lam_hat = lam / mu^2, frequencies as omega_hat = omega / mu, and the
drive field strength (a force, GeV^2 in natural units) as
eps_hat = eps / mu^2.

Field strengths convert to laboratory V/fm through
1 GeV^2 = (1/hbar c) GeV/fm = 5.0677 GeV/fm = 5.0677e9 V/fm for unit
charge.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError

__all__ = [
    "HBAR_C_GEV_FM",
    "HBAR_GEV_S",
    "GEV_PER_EV",
    "GEV2_TO_V_PER_FM",
    "OMEGA_UNITS",
    "omega_to_gev",
    "UnitContext",
]

#: hbar*c in GeV*fm.
HBAR_C_GEV_FM = 0.197327

#: hbar in GeV*s (converts a frequency in Hz to an energy in GeV).
HBAR_GEV_S = 6.582119569e-25

#: 1 eV in GeV.
GEV_PER_EV = 1.0e-9

#: 1 GeV^2 of field strength in V/fm (unit charge): (1/hbar c) GeV/fm.
GEV2_TO_V_PER_FM = 1.0e9 / HBAR_C_GEV_FM

OMEGA_UNITS = ("hz", "ev", "natural")


def omega_to_gev(value: float, unit: str) -> float:
    """Express a drive frequency in GeV under the named reading.

    'hz' treats the number as an angular frequency in 1/s, 'ev' as an
    energy in eV, 'natural' as already in GeV.  No reading is ever
    silently substituted for another.
    """
    unit = unit.lower()
    if unit == "hz":
        return value * HBAR_GEV_S
    if unit == "ev":
        return value * GEV_PER_EV
    if unit == "natural":
        return value
    raise ConfigError(f"unknown omega unit {unit!r}; choose from {OMEGA_UNITS}")


@dataclass(frozen=True)
class UnitContext:
    """Conversion context for a system with reduced mass mu (GeV).

    With no mass scale, quantities are already dimensionless and only
    identity conversions are allowed.
    """

    mass_scale_gev: float = None

    def _mu(self) -> float:
        if self.mass_scale_gev is None or self.mass_scale_gev <= 0.0:
            raise ConfigError("a positive mass scale (GeV) is required for this conversion")
        return self.mass_scale_gev

    # lab -> natural -------------------------------------------------------
    def lambda_to_natural(self, lam_gev2: float) -> float:
        return lam_gev2 / self._mu() ** 2

    def omega_to_natural(self, omega_gev: float) -> float:
        return omega_gev / self._mu()

    def field_to_natural(self, eps_gev2: float) -> float:
        return eps_gev2 / self._mu() ** 2

    # natural -> lab -------------------------------------------------------
    def lambda_to_gev2(self, lam_hat: float) -> float:
        return lam_hat * self._mu() ** 2

    def omega_to_gev(self, omega_hat: float) -> float:
        return omega_hat * self._mu()

    def field_to_gev2(self, eps_hat: float) -> float:
        return eps_hat * self._mu() ** 2

    def field_to_v_per_fm(self, eps_hat: float) -> float:
        return self.field_to_gev2(eps_hat) * GEV2_TO_V_PER_FM

    def time_to_natural(self, t_gev_inv: float) -> float:
        return t_gev_inv * self._mu()
