"""Frozen reference ensembles for the phase-portrait comparisons.

The source figures compare three driven systems — a pure-Coulomb
("hydrogen") potential and the Coulomb-plus-linear potential in its
narrow-orbit and wide-orbit regimes — without stating initial
conditions, drive frequency, or ensemble sizes.  The choices here are
frozen so the comparisons are reproducible:

* figure parameters Z = 0.15, lam = 0.4 (lam = 0 for hydrogen);
* hydrogen reference circle n = 1; quarkonium circles chosen so the
  outer turning point is 0.3 (narrow) or 10 (wide) times the potential's
  natural length sqrt(Z/lam);
* 20 trajectories equispaced in angle on each of 5 invariant circles at
  {0.8, 0.9, 1.0, 1.1, 1.2} times the center action;
* drive at the proper frequency of the center action, with the critical
  field from the numeric overlap pipeline as the reference epsilon;
* 500 drive periods for sections, 150 periods at fictitious step 0.04
  for the divergence-based chaos classification (calibrated once: the
  regular floor and the deeply chaotic ensembles are separated by more
  than an order of magnitude in rate at these settings).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import action_angle as aa
from . import chirikov as ch
from .errors import ConfigError
from .potential import DriveParams, SystemParams

__all__ = [
    "FIGURE_Z",
    "FIGURE_LAM",
    "CIRCLE_FACTORS",
    "TRAJECTORIES_PER_CIRCLE",
    "SECTION_PERIODS",
    "CLASSIFY_PERIODS",
    "CLASSIFY_DTAU",
    "ENSEMBLE_SEED",
    "NARROW_ORBIT_RADIUS_FACTOR",
    "WIDE_ORBIT_RADIUS_FACTOR",
    "SYSTEM_KINDS",
    "ReferenceSystem",
    "reference_system",
    "figure_initials",
]

FIGURE_Z = 0.15
FIGURE_LAM = 0.4
CIRCLE_FACTORS = (0.8, 0.9, 1.0, 1.1, 1.2)
TRAJECTORIES_PER_CIRCLE = 20
SECTION_PERIODS = 500
CLASSIFY_PERIODS = 150
CLASSIFY_DTAU = 0.04
ENSEMBLE_SEED = 0
NARROW_ORBIT_RADIUS_FACTOR = 0.3
WIDE_ORBIT_RADIUS_FACTOR = 10.0
SYSTEM_KINDS = ("hydrogen", "small_a", "large_a")

_CHART_CACHE = {}


def _chart(p: SystemParams) -> aa.ActionAngleChart:
    key = (p.Z, p.lam)
    if key not in _CHART_CACHE:
        _CHART_CACHE[key] = aa.ActionAngleChart.build(p, n_min=0.02, n_max=60.0)
    return _CHART_CACHE[key]


@dataclass(frozen=True)
class ReferenceSystem:
    kind: str
    params: SystemParams
    chart: aa.ActionAngleChart
    n_center: float
    omega: float
    epsilon_cr: float

    def drive(self, epsilon: float, phase: float = 0.0) -> DriveParams:
        return DriveParams(epsilon=epsilon, omega=self.omega, phase=phase)


def reference_system(kind: str, Z: float = FIGURE_Z, lam: float = FIGURE_LAM) -> ReferenceSystem:
    """Build one of the three frozen comparison systems.

    The drive frequency is the proper frequency at the center action
    (primary resonance engaged) and epsilon_cr comes from the numeric
    overlap pipeline at that frequency.
    """
    if kind not in SYSTEM_KINDS:
        raise ConfigError(f"unknown system kind {kind!r}; choose from {SYSTEM_KINDS}")
    if kind == "hydrogen":
        p = SystemParams(Z=Z, lam=0.0)
        chart = _chart(p)
        n_center = 1.0
    else:
        p = SystemParams(Z=Z, lam=lam)
        chart = _chart(p)
        ls = math.sqrt(Z / lam)
        radius = (
            NARROW_ORBIT_RADIUS_FACTOR if kind == "small_a" else WIDE_ORBIT_RADIUS_FACTOR
        ) * ls
        n_center = chart.n_of_E(lam * radius - Z / radius)
    omega = chart.omega0_of_n(n_center)
    eps_cr = ch.epsilon_cr_numeric(n_center, omega, chart, p).epsilon_cr
    return ReferenceSystem(
        kind=kind, params=p, chart=chart, n_center=n_center, omega=omega, epsilon_cr=eps_cr
    )


def figure_initials(ref: ReferenceSystem, per_circle: int = TRAJECTORIES_PER_CIRCLE):
    """The frozen ensemble: per_circle states on each of the 5 circles."""
    from .dynamics import orbit_initials

    out = []
    for f in CIRCLE_FACTORS:
        out.extend(orbit_initials(f * ref.n_center, per_circle, ref.params, ref.chart))
    return out
