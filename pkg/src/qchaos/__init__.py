"""Chaotization toolkit for a driven particle in a Coulomb-plus-linear potential.

Core modules: :mod:`qchaos.elliptic` (complete elliptic integrals),
:mod:`qchaos.potential` (system/drive parameters and turning points),
:mod:`qchaos.action_angle` (action-angle structure and asymptotics),
:mod:`qchaos.chirikov` (resonance-overlap critical fields),
:mod:`qchaos.dynamics` (regularized driven integration and chaos
diagnostics).  The HTTP service lives in :mod:`qchaos.service` and the
command-line client in :mod:`qchaos.cli`.
"""

__version__ = "1.0.0"
