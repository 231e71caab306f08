"""
Torus service: Hesse-form Riemann-Roch and Bohr-Sommerfeld counts
"""
from typing import List, Sequence

import structlog
from sympy import Matrix

from trop_morse.core.config import settings
from trop_morse.core.exceptions import TropMorseError
from trop_morse.core.validators import InputValidator
from trop_morse.geometry import torus
from trop_morse.geometry.graded import free
from trop_morse.geometry.torus import TorusQuadraticDivisor
from trop_morse.schemas.common import PointSchema, module_pairs
from trop_morse.schemas.reports import BohrSommerfeldReport, TorusReport

logger = structlog.get_logger()


def _point_label(point: Sequence) -> str:
    return "(" + ",".join(InputValidator.format_rational(x) for x in point) + ")"


class TorusService:
    """Service for quadratic divisors on integral affine tori"""

    @staticmethod
    def check(d: TorusQuadraticDivisor) -> TorusReport:
        """LMD, Hesse RR, and the intersection count against SNF and brute force"""
        try:
            report = torus.lmd(d)
            hesse = torus.verify_hesse_rr(d)
            points: List[PointSchema] = []
            brute = None
            count_ok = True
            if not report.degenerate:
                local = module_pairs(free(report.index, 1))
                points = [PointSchema(label=_point_label(p), lmd=local) for p in torus.intersection_points(d)]
                count_ok = report.count == abs(report.chern_volume) == len(points)
                if abs(report.chern_volume) <= settings.brute_force_max_det:
                    brute = torus.brute_force_count(d)
                    count_ok = count_ok and brute == report.count
        except TropMorseError as e:
            logger.error("Torus check failed", n=d.n, error=e.detail)
            raise

        ok = hesse.ok and count_ok
        logger.info(
            "Torus checked",
            n=d.n,
            count=report.count,
            index=report.index,
            euler=report.euler,
            det=report.chern_volume,
            degenerate=report.degenerate,
            ok=ok,
        )
        return TorusReport(
            n=d.n,
            matrix=[list(row) for row in d.matrix],
            shift=list(d.shift),
            count=report.count,
            index=report.index,
            lmd=module_pairs(report.lmd),
            euler=report.euler,
            det=report.chern_volume,
            degenerate=report.degenerate,
            points=points,
            brute_force_count=brute,
            rr_ok=hesse.ok,
            ok=ok,
        )

    @staticmethod
    def bohr_sommerfeld(lattice: List[List[int]]) -> BohrSommerfeldReport:
        """|Z^n / L Z^n| cross-checked against |det L|"""
        try:
            count = torus.bohr_sommerfeld_count(lattice)
        except TropMorseError as e:
            logger.error("Bohr-Sommerfeld count failed", error=e.detail)
            raise
        det = int(Matrix(lattice).det(method="bareiss"))
        ok = count == abs(det)
        logger.info("Bohr-Sommerfeld points counted", n=len(lattice), count=count, det=det, ok=ok)
        return BohrSommerfeldReport(n=len(lattice), lattice=[list(r) for r in lattice], count=count, det=det, ok=ok)
