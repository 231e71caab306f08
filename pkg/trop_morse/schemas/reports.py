"""
Report schemas; every command result is one of these models, dumped as
canonical JSON (sorted keys, exact rationals as "p/q" strings)
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field

from trop_morse.schemas.common import Betti, PointSchema, RationalStr


class PointSetSchema(BaseModel):
    """Any report carrying labelled points; extra fields are ignored"""
    points: List[PointSchema]


class CurvePointReport(PointSchema):
    kind: str
    ascending: int
    descending: int
    levels: List[int]


class CurveReport(BaseModel):
    """Result of checking one (curve, divisor) pair"""
    name: Optional[str] = None
    points: List[CurvePointReport]
    lmd: Betti
    euler: int
    rotation: int
    degree: int
    chi_top: int
    genus: int
    chips: Dict[str, int]
    rr_ok: bool
    rotation_ok: bool  # rotation == degree
    ok: bool


class SplitReport(BaseModel):
    cut: List[str]
    parts: int
    euler_parts: List[int]
    rotation_parts: List[int]
    correction: int
    ok: bool


class RandomInstanceReport(BaseModel):
    index: int
    seed: int
    genus: int
    leaves: int
    edges: int
    points: int
    euler: int
    rotation: int
    degree: int
    chi_top: int
    rr_ok: bool
    rotation_ok: bool
    split: Optional[SplitReport] = None
    ok: bool


class RandomRunReport(BaseModel):
    genus: int
    leaves: int
    seed: int
    count: int
    passed: int
    failed: int
    first_failure: Optional[RandomInstanceReport] = None
    instances: List[RandomInstanceReport]
    ok: bool


class TorusReport(BaseModel):
    n: int
    matrix: List[List[int]]
    shift: List[RationalStr]
    count: Optional[int]  # None when degenerate
    index: int
    lmd: Betti
    euler: int
    det: int
    degenerate: bool
    points: List[PointSchema]
    brute_force_count: Optional[int] = None
    rr_ok: bool
    ok: bool


class BohrSommerfeldReport(BaseModel):
    n: int
    lattice: List[List[int]]
    count: int
    det: int
    ok: bool


class ReciprocityReport(BaseModel):
    k: int
    signed_value: RationalStr
    interior_count: int
    ok: bool


class EhrhartReport(BaseModel):
    n: int
    kmax: int
    lattice_count: int
    interior_count: int
    boundary_count: int
    ehrhart: List[RationalStr]  # constant term first
    direct_counts: List[int]  # #(kP cap Z^n) for k = 0..2n
    direct_ok: bool
    reciprocity: List[ReciprocityReport]
    reciprocity_ok: bool
    ok: bool


class MomentDiagnostic(BaseModel):
    """Floating point; the only approximate numbers in any report"""
    approximate: bool = True
    samples: int
    max_gradient_error: float
    min_facet_margin: float
    min_hessian_eigenvalue: float
    ok: bool


class ToricReport(BaseModel):
    n: int
    lattice_count: int
    interior_count: int
    boundary_count: int
    lmd: Dict[str, Betti]  # "plus" / "minus"
    euler: Dict[str, int]
    points: List[PointSchema]  # data of +s_P
    delzant: bool
    moment: MomentDiagnostic
    ok: bool


class ComposeReport(BaseModel):
    operation: str
    points: List[PointSchema] = Field(default_factory=list)
    euler: int
    expected: int
    oracle: Optional[int] = None
    details: Dict[str, Any] = Field(default_factory=dict)
    ok: bool


class RunReport(BaseModel):
    """Envelope written to stdout for every command"""
    command: List[str]
    digests: Dict[str, str]
    results: List[Dict[str, Any]]
    ok: bool
    wall_time_s: Optional[float] = None  # the one field that differs between identical runs
