"""
Curve service: Riemann-Roch checks on given and random tropical curves
"""
from typing import Optional

import structlog

from trop_morse.core.config import settings
from trop_morse.core.exceptions import InputError, TropMorseError
from trop_morse.geometry import curve as curves
from trop_morse.geometry import gluing, random_curves
from trop_morse.geometry.curve import CurveDivisor, TropicalCurve
from trop_morse.geometry.graded import euler
from trop_morse.schemas.common import module_pairs
from trop_morse.schemas.reports import (
    CurvePointReport,
    CurveReport,
    RandomInstanceReport,
    RandomRunReport,
    SplitReport,
)
from trop_morse.services.batch import run_batch

logger = structlog.get_logger()

# per-instance seeds; the divisor stream is offset from the curve stream
SEED_STRIDE = 7919
DIVISOR_SEED_OFFSET = 104729


class CurveService:
    """Service for curve LMD computations and theorem checks"""

    @staticmethod
    def check(curve: TropicalCurve, div: CurveDivisor, name: Optional[str] = None) -> CurveReport:
        """validate, intersection points, LMD, rotation, degree and the RR identity"""
        name = name or div.curve_name
        try:
            points = curves.intersection_points(curve, div)
            module = curves.lmd(curve, div)
            rotation = curves.rotation_number(curve, div)
            degree = curves.degree(curve, div)
            chi = curves.chi_top(curve)
            rr_ok = curves.verify_rr(curve, div).ok and euler(module) == rotation + chi
            rotation_ok = rotation == degree
        except TropMorseError as e:
            logger.error("Curve check failed", name=name, error=e.detail)
            raise

        logger.info(
            "Curve checked",
            name=name,
            points=len(points),
            euler=euler(module),
            rotation=rotation,
            degree=degree,
            ok=rr_ok and rotation_ok,
        )
        return CurveReport(
            name=name,
            points=[
                CurvePointReport(
                    label=p.label,
                    kind=p.kind.value,
                    ascending=p.ascending,
                    descending=p.descending,
                    levels=list(p.levels),
                    lmd=module_pairs(curves.local_lmd(p)),
                )
                for p in points
            ],
            lmd=module_pairs(module),
            euler=euler(module),
            rotation=rotation,
            degree=degree,
            chi_top=chi,
            genus=curve.genus,
            chips=dict(sorted(curves.chip_divisor(curve, div).items())),
            rr_ok=rr_ok,
            rotation_ok=rotation_ok,
            ok=rr_ok and rotation_ok,
        )

    @staticmethod
    def split(curve: TropicalCurve, div: CurveDivisor, seed: int) -> SplitReport:
        result = gluing.random_split(curve, div, seed)
        return SplitReport(
            cut=result.labels,
            parts=len(result.parts),
            euler_parts=result.euler_parts,
            rotation_parts=result.rotation_parts,
            correction=result.correction,
            ok=result.identity_ok,
        )

    @classmethod
    def random_instance(
        cls, index: int, genus: int, leaves: int, seed: int, split: bool = False
    ) -> RandomInstanceReport:
        instance_seed = seed + index * SEED_STRIDE
        curve = random_curves.random_curve(genus, leaves, instance_seed, settings.random_max_edges)
        div = random_curves.random_divisor(
            curve,
            instance_seed + DIVISOR_SEED_OFFSET,
            max_level=settings.random_max_level,
            breakpoints_per_edge=settings.random_breakpoints,
        )
        points = curves.intersection_points(curve, div)
        module = curves.lmd(curve, div)
        rotation = curves.rotation_number(curve, div)
        degree = curves.degree(curve, div)
        chi = curves.chi_top(curve)
        split_report = cls.split(curve, div, instance_seed) if split else None
        rr_ok = euler(module) == rotation + chi
        rotation_ok = rotation == degree
        return RandomInstanceReport(
            index=index,
            seed=instance_seed,
            genus=curve.genus,
            leaves=leaves,
            edges=len(curve.edges),
            points=len(points),
            euler=euler(module),
            rotation=rotation,
            degree=degree,
            chi_top=chi,
            rr_ok=rr_ok,
            rotation_ok=rotation_ok,
            split=split_report,
            ok=rr_ok and rotation_ok and (split_report is None or split_report.ok),
        )

    @classmethod
    def random_run(
        cls, genus: int, leaves: int, seed: int, count: int, split: bool = False
    ) -> RandomRunReport:
        """``count`` random instances in parallel, reported in index order"""
        if genus < 0 or leaves < 0 or count < 1:
            raise InputError(f"need genus >= 0, leaves >= 0, count >= 1 (got {genus}, {leaves}, {count})")
        logger.info("Random curve run started", genus=genus, leaves=leaves, seed=seed, count=count)
        instances = run_batch(
            lambda i: cls.random_instance(i, genus, leaves, seed, split), range(count)
        )
        failures = [r for r in instances if not r.ok]
        report = RandomRunReport(
            genus=genus,
            leaves=leaves,
            seed=seed,
            count=count,
            passed=count - len(failures),
            failed=len(failures),
            first_failure=failures[0] if failures else None,
            instances=instances,
            ok=not failures,
        )
        if failures:
            logger.error("Random curve run found failures", failed=len(failures), first=failures[0].index)
        else:
            logger.info("Random curve run passed", count=count)
        return report
