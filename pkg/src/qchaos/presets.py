"""Named quarkonium presets: quark masses and standard couplings.

Each preset describes an equal-mass quark-antiquark pair; the bound
two-body problem reduces to one particle of reduced mass mu = m_q / 2
in the Coulomb-plus-linear potential with Z = (4/3) alpha_s.  The
reduction to mass-1 natural units is handled by :mod:`qchaos.units`.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigError
from .potential import SystemParams
from .units import UnitContext

__all__ = [
    "ALPHA_S_DEFAULT",
    "LAMBDA_GEV2_DEFAULT",
    "QUARK_MASSES_MEV",
    "QuarkoniumPreset",
    "PRESETS",
    "get_preset",
]

ALPHA_S_DEFAULT = 0.112
LAMBDA_GEV2_DEFAULT = 0.2

#: Constituent quark masses in MeV keyed by flavor pair.
QUARK_MASSES_MEV = {"uu": 1.0, "dd": 2.0, "ss": 30.0, "cc": 300.0, "bb": 1560.0}


@dataclass(frozen=True)
class QuarkoniumPreset:
    name: str
    quark_mass_mev: float
    alpha_s: float = ALPHA_S_DEFAULT
    lam_gev2: float = LAMBDA_GEV2_DEFAULT

    @property
    def Z(self) -> float:
        return (4.0 / 3.0) * self.alpha_s

    @property
    def reduced_mass_gev(self) -> float:
        return 0.5 * self.quark_mass_mev * 1e-3

    @property
    def unit_context(self) -> UnitContext:
        return UnitContext(mass_scale_gev=self.reduced_mass_gev)

    def system_params(self, L: float = 0.0) -> SystemParams:
        """Natural-unit (mass-1) system parameters for this preset."""
        ctx = self.unit_context
        return SystemParams(
            Z=self.Z,
            lam=ctx.lambda_to_natural(self.lam_gev2),
            L=L,
            mass_scale_mev=self.reduced_mass_gev * 1e3,
        )


PRESETS = {
    name: QuarkoniumPreset(name=name, quark_mass_mev=m)
    for name, m in QUARK_MASSES_MEV.items()
}


def get_preset(name: str) -> QuarkoniumPreset:
    key = name.lower().replace("bar", "").replace("-", "").replace("_", "")
    if key not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    return PRESETS[key]
