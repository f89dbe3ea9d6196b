"""FastAPI application exposing the computation package over HTTP.

The service is stateless: every request carries its full configuration
and the handlers delegate straight to the core modules.  Error mapping:
configuration/domain problems become 400, numeric failures (root
finders, overlap pipeline, integration blowups) become 409, so clients
can distinguish "fix your input" from "the computation failed".
"""

from __future__ import annotations

import math
import warnings

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from .. import action_angle as aa
from .. import chirikov as ch
from .. import dynamics as dyn
from .. import ensembles as ens
from ..errors import (
    ConfigError,
    DomainError,
    InsufficientDataError,
    NoBoundOrbitError,
    NoResonanceError,
    NumericError,
    QchaosError,
    RangeError,
    SingularFormulaError,
)
from ..potential import SystemParams, turning_points_1d
from ..presets import PRESETS, get_preset
from ..units import OMEGA_UNITS, UnitContext, omega_to_gev
from ..validation import run_validation
from . import schemas as sc

_CONFIG_ERRORS = (ConfigError, DomainError, RangeError)
_NUMERIC_ERRORS = (
    NumericError,
    NoResonanceError,
    NoBoundOrbitError,
    SingularFormulaError,
    InsufficientDataError,
)

#: Panel letters follow the figure layout: (a) hydrogen, (b) wide-orbit
#: quarkonium, (c) narrow-orbit quarkonium.
PANELS = {"hydrogen": "a", "large_a": "b", "small_a": "c"}

#: Default drive frequency for the critical-field scan, in units of Z^2.
#: Chosen so the wide-orbit mode's fundamental-resonance crossover (and
#: hence its maximum) falls inside the standard n range of the scan.
SCAN_OMEGA_Z2_FACTOR = 4.0


def _resolve_system(preset_name, Z, lam, L, n, omega, omega_unit):
    """Returns (SystemParams, omega_natural, UnitContext-or-None)."""
    if omega_unit not in OMEGA_UNITS:
        raise ConfigError(f"omega_unit must be one of {OMEGA_UNITS}")
    if preset_name:
        preset = get_preset(preset_name)
        p = preset.system_params(L=L)
        ctx = preset.unit_context
        omega_nat = ctx.omega_to_natural(omega_to_gev(omega, omega_unit))
        return p, omega_nat, ctx
    if Z is None or lam is None:
        raise ConfigError("either a preset or explicit Z and lam must be given")
    if omega_unit != "natural":
        raise ConfigError(
            "omega in hz/ev requires a preset (mass scale); "
            "explicit Z/lam runs take omega in natural units"
        )
    return SystemParams(Z=Z, lam=lam, L=L), omega, None


def create_app() -> FastAPI:
    app = FastAPI(title="qchaos", version=__version__)

    @app.exception_handler(QchaosError)
    async def _qchaos_error(request: Request, exc: QchaosError):
        if isinstance(exc, _NUMERIC_ERRORS):
            status = 409
            kind = "numeric"
        else:
            status = 400
            kind = "config"
        return JSONResponse(
            status_code=status,
            content={"error": kind, "type": type(exc).__name__, "detail": str(exc)},
        )

    @app.get("/health", response_model=sc.HealthResponse)
    def health():
        return sc.HealthResponse(status="ok", version=__version__)

    @app.get("/presets", response_model=sc.PresetsResponse)
    def presets():
        return sc.PresetsResponse(
            presets=[
                sc.PresetInfo(
                    name=p.name,
                    quark_mass_mev=p.quark_mass_mev,
                    alpha_s=p.alpha_s,
                    lam_gev2=p.lam_gev2,
                    Z=p.Z,
                    reduced_mass_gev=p.reduced_mass_gev,
                )
                for p in PRESETS.values()
            ]
        )

    @app.post("/critical-field", response_model=sc.CriticalFieldResponse)
    def critical_field(req: sc.CriticalFieldRequest):
        p, omega_nat, ctx = _resolve_system(
            req.preset, req.Z, req.lam, req.L, req.n, req.omega, req.omega_unit
        )
        if not req.modes:
            raise ConfigError("at least one mode is required")
        entries = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for mode in req.modes:
                if mode == "small_a":
                    r = ch.epsilon_cr_small_a(req.n, req.k, omega_nat, p, check_regime=False)
                elif mode == "large_a":
                    r = ch.epsilon_cr_large_a(req.n, req.k, omega_nat, p, check_regime=False)
                elif mode == "three_d":
                    r = ch.epsilon_cr_3d(req.n, req.L, req.k, omega_nat, p, check_regime=False)
                elif mode == "hydrogen":
                    r = ch.epsilon_cr_hydrogen(req.n, omega_nat, p.Z)
                elif mode == "numeric":
                    chart = aa.ActionAngleChart.build(p, n_min=0.02, n_max=60.0)
                    r = ch.epsilon_cr_numeric(req.n, omega_nat, chart, p)
                else:
                    raise ConfigError(f"unknown mode {mode!r}")
                entry = sc.CriticalFieldEntry(
                    mode=mode,
                    epsilon_cr=r.epsilon_cr,
                    k_pair=list(r.k_pair),
                    regime=r.regime,
                    inputs={
                        k: float(v)
                        for k, v in r.inputs.items()
                        if isinstance(v, (int, float)) and math.isfinite(float(v))
                    },
                )
                if ctx is not None:
                    entry.epsilon_cr_gev2 = ctx.field_to_gev2(r.epsilon_cr)
                    entry.epsilon_cr_v_per_fm = ctx.field_to_v_per_fm(r.epsilon_cr)
                entries.append(entry)
        readings = {}
        if ctx is not None:
            for unit in OMEGA_UNITS:
                w_nat = ctx.omega_to_natural(omega_to_gev(req.omega, unit))
                per_mode = {}
                with warnings.catch_warnings():
                    warnings.simplefilter("ignore")
                    for mode in req.modes:
                        try:
                            if mode == "small_a":
                                rr = ch.epsilon_cr_small_a(req.n, req.k, w_nat, p, check_regime=False)
                            elif mode == "large_a":
                                rr = ch.epsilon_cr_large_a(req.n, req.k, w_nat, p, check_regime=False)
                            elif mode == "three_d":
                                rr = ch.epsilon_cr_3d(req.n, req.L, req.k, w_nat, p, check_regime=False)
                            elif mode == "hydrogen":
                                rr = ch.epsilon_cr_hydrogen(req.n, w_nat, p.Z)
                            else:
                                continue
                            per_mode[mode] = ctx.field_to_v_per_fm(rr.epsilon_cr)
                        except QchaosError:
                            continue
                readings[unit] = per_mode
        return sc.CriticalFieldResponse(
            results=entries, omega_natural=omega_nat, readings_v_per_fm=readings
        )

    @app.post("/scan", response_model=sc.ScanResponse)
    def scan(req: sc.ScanRequest):
        if not req.modes:
            raise ConfigError("at least one mode is required")
        if req.n_max < req.n_min:
            raise ConfigError("n_max must be >= n_min")
        omega = req.omega if req.omega is not None else SCAN_OMEGA_Z2_FACTOR * req.Z**2
        p = SystemParams(Z=req.Z, lam=req.lam)
        n_count = int(math.floor((req.n_max - req.n_min) / req.n_step + 1e-9)) + 1
        n_values = req.n_min + req.n_step * np.arange(n_count)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            rows = ch.scan_critical_field(
                n_values, omega, req.modes, p, k=req.k, jobs=req.jobs
            )
        out = [
            sc.ScanRow(
                n=r[0],
                mode=r[1],
                epsilon_cr=None if not math.isfinite(r[2]) else r[2],
                k=r[3],
                regime_gate_ok=bool(r[4]),
            )
            for r in rows
        ]
        return sc.ScanResponse(rows=out, omega=omega)

    @app.post("/poincare", response_model=sc.PoincareResponse)
    def poincare(req: sc.PoincareRequest):
        kinds = list(ens.SYSTEM_KINDS) if req.system == "all" else [req.system]
        for kind in kinds:
            if kind not in ens.SYSTEM_KINDS:
                raise ConfigError(
                    f"unknown system {kind!r}; choose from {ens.SYSTEM_KINDS} or 'all'"
                )
        rows = []
        meta = {
            "eps_ratio": req.eps_ratio,
            "ratio_is_eps_over_ecr": req.ratio_is_eps_over_ecr,
            "n_periods": req.n_periods,
            "per_circle": req.per_circle,
            "seed": req.seed,
            "systems": {},
        }
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for kind in kinds:
                ref = ens.reference_system(kind)
                if req.ratio_is_eps_over_ecr:
                    eps = req.eps_ratio * ref.epsilon_cr
                else:
                    eps = ref.epsilon_cr / req.eps_ratio
                d = ref.drive(eps)
                initials = ens.figure_initials(ref, per_circle=req.per_circle)
                results = dyn.stroboscopic_section(
                    initials,
                    req.n_periods,
                    ref.params,
                    d,
                    chart=ref.chart,
                    jobs=req.jobs,
                )
                meta["systems"][kind] = {
                    "panel": PANELS[kind],
                    "n_center": ref.n_center,
                    "omega": ref.omega,
                    "epsilon_cr": ref.epsilon_cr,
                    "epsilon": eps,
                    "Z": ref.params.Z,
                    "lam": ref.params.lam,
                }
                for tr in results:
                    for q in tr.points:
                        rows.append(
                            sc.SectionRow(
                                trajectory_id=q.trajectory_id,
                                m=q.m,
                                t=q.t,
                                x=q.x,
                                p=q.p,
                                n=None if not math.isfinite(q.n) else q.n,
                                theta=None if not math.isfinite(q.theta) else q.theta,
                                tag=q.tag,
                                panel=PANELS[kind],
                            )
                        )
        return sc.PoincareResponse(rows=rows, metadata=meta)

    @app.post("/action-table", response_model=sc.ActionTableResponse)
    def action_table(req: sc.ActionTableRequest):
        p = SystemParams(Z=req.Z, lam=req.lam, L=req.L)
        n_values = np.linspace(req.n_min, req.n_max, req.count)
        rows = []
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            for n in n_values:
                if p.lam == 0.0:
                    E = aa.kepler_energy(n, p.Z)
                    w = aa.kepler_omega0(n, p.Z)
                else:
                    E = aa.energy_of_action(n, p)
                    w = aa.omega0_exact(E, p)
                a = turning_points_1d(E, p).a
                ls = p.length_scale if p.lam > 0 else math.inf
                large_ok = p.lam > 0 and a > aa.LARGE_A_FACTOR * ls
                small_ok = p.lam > 0 and a < aa.SMALL_A_FACTOR * ls

                def _try(f):
                    try:
                        v = f()
                        return v if math.isfinite(v) else None
                    except QchaosError:
                        return None

                rows.append(
                    sc.ActionTableRow(
                        E=E,
                        n=n,
                        omega0=w,
                        a=a,
                        regime_large_ok=large_ok,
                        regime_small_ok=small_ok,
                        E_large_asym=_try(lambda: aa.h0_large_a(n, p, check_regime=False)),
                        omega0_large_asym=_try(
                            lambda: aa.omega0_large_a(n, p, check_regime=False)
                        ),
                        E_small_asym=_try(lambda: aa.h0_small_a(n, p, check_regime=False)),
                        omega0_small_asym=_try(
                            lambda: aa.omega0_small_a(n, p, check_regime=False)
                        ),
                    )
                )
        return sc.ActionTableResponse(rows=rows)

    @app.post("/validate", response_model=sc.ValidateResponse)
    def validate(req: sc.ValidateRequest):
        report = run_validation(flip_action_convention=req.flip_action_convention)
        d = report.as_dict()
        return sc.ValidateResponse(
            passed=d["passed"], checks=d["checks"], constants=d["constants"]
        )

    return app
