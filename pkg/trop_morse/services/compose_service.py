"""
Compose service: Kunneth products, etale covers and symmetric powers
"""
from typing import Optional, Tuple

import structlog

from trop_morse.core.exceptions import TropMorseError
from trop_morse.geometry import compose
from trop_morse.geometry.compose import CoverMode, IndexedPointSet
from trop_morse.geometry.curve import CurveDivisor, TropicalCurve
from trop_morse.geometry.graded import free
from trop_morse.geometry.torus import TorusQuadraticDivisor
from trop_morse.schemas.common import PointSchema, module_pairs
from trop_morse.schemas.reports import ComposeReport

logger = structlog.get_logger()

CurvePair = Tuple[TropicalCurve, CurveDivisor]


def _points(points: IndexedPointSet) -> list:
    return [PointSchema(label=label, lmd=module_pairs(m)) for label, m in points.points]


class ComposeService:
    """Service for the product, cover and symmetric-power formulas"""

    @staticmethod
    def product(
        a: IndexedPointSet,
        b: IndexedPointSet,
        curves: Optional[Tuple[CurvePair, CurvePair]] = None,
        tori: Optional[Tuple[TorusQuadraticDivisor, TorusQuadraticDivisor]] = None,
    ) -> ComposeReport:
        """chi of the Kunneth product against chi(a) chi(b).

        Two curves add the product of their RR right-hand sides; two tori add
        the block-diagonal divisor as an independent oracle.
        """
        product = compose.kunneth(a, b)
        expected = a.euler * b.euler
        details = {"factors": [a.euler, b.euler]}
        ok = product.euler == expected
        oracle = None
        if curves is not None:
            (curve_a, div_a), (curve_b, div_b) = curves
            check = compose.verify_product_rr(curve_a, div_a, curve_b, div_b)
            details["rr_factors"] = [check.factor_a, check.factor_b]
            oracle = check.factor_a * check.factor_b
            ok = ok and check.ok
        if tori is not None:
            torus_check = compose.verify_torus_product(*tori)
            oracle = torus_check.block.euler
            details["block_diagonal_det"] = torus_check.block.chern_volume
            details["block_diagonal_count"] = torus_check.block.count
            details["block_diagonal_lmd"] = module_pairs(torus_check.block.lmd)
            details["product_lmd"] = module_pairs(torus_check.product_lmd)
            ok = ok and torus_check.ok
        if oracle is not None:
            ok = ok and oracle == product.euler
        logger.info("Kunneth product computed", euler=product.euler, expected=expected, oracle=oracle, ok=ok)
        return ComposeReport(
            operation="product",
            points=_points(product),
            euler=product.euler,
            expected=expected,
            oracle=oracle,
            details=details,
            ok=ok,
        )

    @staticmethod
    def cover(
        points: IndexedPointSet,
        d: int,
        mode: CoverMode = CoverMode.DISJOINT,
        base: Optional[CurvePair] = None,
    ) -> ComposeReport:
        """euler of a degree-d etale cover against d times the base"""
        try:
            cover = compose.etale_scale(points, d, mode, base)
        except TropMorseError as e:
            logger.error("Cover failed", degree=d, mode=CoverMode(mode).value, error=e.detail)
            raise
        expected = d * points.euler
        ok = cover.euler == expected
        logger.info("Etale cover computed", degree=d, mode=CoverMode(mode).value, euler=cover.euler, ok=ok)
        return ComposeReport(
            operation="cover",
            points=_points(cover),
            euler=cover.euler,
            expected=expected,
            details={"degree": d, "mode": CoverMode(mode).value, "base_euler": points.euler},
            ok=ok,
        )

    @staticmethod
    def sym(points: IndexedPointSet, n: int) -> ComposeReport:
        """chi(Sym^n) from the binomial formula against the power-series oracle"""
        check = compose.verify_sym(points, n)
        logger.info("Symmetric power computed", n=n, chi=points.euler, formula=check.formula, ok=check.ok)
        return ComposeReport(
            operation="sym",
            euler=check.formula,
            expected=check.formula,
            oracle=check.oracle,
            details={"n": n, "chi": points.euler},
            ok=check.ok,
        )

    @staticmethod
    def chi_points(chi: int) -> IndexedPointSet:
        """|chi| generators, in degree 0 for chi >= 0 and degree 1 otherwise"""
        degree = 0 if chi >= 0 else 1
        return IndexedPointSet(tuple(
            (f"p{i}", free(degree, 1)) for i in range(abs(chi))
        ))
