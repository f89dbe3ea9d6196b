"""Request/response models for the HTTP service."""

from __future__ import annotations

from typing import Dict, List, Optional

from pydantic import BaseModel, Field

from ..ensembles import SECTION_PERIODS, TRAJECTORIES_PER_CIRCLE


class HealthResponse(BaseModel):
    status: str
    version: str


class PresetInfo(BaseModel):
    name: str
    quark_mass_mev: float
    alpha_s: float
    lam_gev2: float
    Z: float
    reduced_mass_gev: float


class PresetsResponse(BaseModel):
    presets: List[PresetInfo]


class CriticalFieldRequest(BaseModel):
    preset: Optional[str] = None
    Z: Optional[float] = None
    lam: Optional[float] = None
    L: float = 0.0
    n: float = Field(gt=0)
    omega: float = Field(gt=0)
    omega_unit: str = "natural"
    k: int = Field(default=1, ge=1)
    modes: List[str] = ["small_a", "large_a"]


class CriticalFieldEntry(BaseModel):
    mode: str
    epsilon_cr: float
    k_pair: List[int]
    regime: str
    epsilon_cr_gev2: Optional[float] = None
    epsilon_cr_v_per_fm: Optional[float] = None
    inputs: Dict[str, float] = {}


class CriticalFieldResponse(BaseModel):
    results: List[CriticalFieldEntry]
    omega_natural: float
    #: epsilon_cr in V/fm under each reading of the omega number, when a
    #: mass scale is available; readings are never silently substituted.
    readings_v_per_fm: Dict[str, Dict[str, float]] = {}


class ScanRequest(BaseModel):
    Z: float = 0.15
    lam: float = 0.4
    n_min: float = 1.0
    n_max: float = 20.0
    n_step: float = Field(default=0.25, gt=0)
    omega: Optional[float] = None
    modes: List[str] = ["hydrogen", "small_a", "large_a"]
    k: int = Field(default=1, ge=1)
    jobs: int = Field(default=1, ge=1)


class ScanRow(BaseModel):
    n: float
    mode: str
    epsilon_cr: Optional[float]
    k: float
    regime_gate_ok: bool


class ScanResponse(BaseModel):
    rows: List[ScanRow]
    omega: float


class PoincareRequest(BaseModel):
    system: str = "all"
    eps_ratio: float = Field(default=0.5, gt=0)
    #: When true, eps_ratio means eps/eps_cr; otherwise it is taken as
    #: printed in the figure captions, eps_cr/eps.
    ratio_is_eps_over_ecr: bool = False
    n_periods: int = Field(default=SECTION_PERIODS, ge=1)
    per_circle: int = Field(default=TRAJECTORIES_PER_CIRCLE, ge=1)
    seed: int = 0
    jobs: int = Field(default=1, ge=1)


class SectionRow(BaseModel):
    trajectory_id: int
    m: int
    t: float
    x: float
    p: float
    n: Optional[float]
    theta: Optional[float]
    tag: str
    panel: str


class PoincareResponse(BaseModel):
    rows: List[SectionRow]
    metadata: Dict


class ActionTableRequest(BaseModel):
    Z: float = 0.15
    lam: float = 0.4
    L: float = 0.0
    n_min: float = Field(default=0.5, gt=0)
    n_max: float = 20.0
    count: int = Field(default=50, ge=2)


class ActionTableRow(BaseModel):
    E: float
    n: float
    omega0: float
    a: float
    regime_large_ok: bool
    regime_small_ok: bool
    E_large_asym: Optional[float]
    omega0_large_asym: Optional[float]
    E_small_asym: Optional[float]
    omega0_small_asym: Optional[float]


class ActionTableResponse(BaseModel):
    rows: List[ActionTableRow]


class ValidateRequest(BaseModel):
    flip_action_convention: bool = False


class ValidateResponse(BaseModel):
    passed: bool
    checks: List[Dict]
    constants: Dict
