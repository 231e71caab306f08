"""
Toric service: Ehrhart reciprocity, LMD of +-s_P and moment-map diagnostics
"""
from typing import Optional

import numpy as np
import structlog

from trop_morse.core.config import settings
from trop_morse.core.exceptions import TropMorseError
from trop_morse.geometry import compose, toric
from trop_morse.geometry.toric import LatticePolytope
from trop_morse.schemas.common import PointSchema, module_pairs
from trop_morse.schemas.reports import EhrhartReport, MomentDiagnostic, ReciprocityReport, ToricReport

logger = structlog.get_logger()

GRADIENT_STEP = 1e-5
GRADIENT_TOLERANCE = 1e-6
SAMPLE_RADIUS = 3.0


def numeric_gradient(polytope: LatticePolytope, x: np.ndarray, h: float = GRADIENT_STEP) -> np.ndarray:
    """Central differences of f_P"""
    grad = np.zeros(polytope.n)
    for i in range(polytope.n):
        step = np.zeros(polytope.n)
        step[i] = h
        grad[i] = (toric.eval_f(polytope, x + step) - toric.eval_f(polytope, x - step)) / (2 * h)
    return grad


class ToricService:
    """Service for lattice polytopes and their toric manifolds"""

    @staticmethod
    def ehrhart(polytope: LatticePolytope, kmax: Optional[int] = None) -> EhrhartReport:
        kmax = settings.ehrhart_kmax if kmax is None else kmax
        try:
            poly = toric.ehrhart(polytope)
            checks = toric.verify_reciprocity(polytope, kmax)
            interior = toric.interior_lattice_points(polytope)
        except TropMorseError as e:
            logger.error("Ehrhart computation failed", n=polytope.n, error=e.detail)
            raise

        direct = [len(toric.lattice_points(polytope, k)) for k in range(2 * polytope.n + 1)]
        direct_ok = all(poly(k) == count for k, count in enumerate(direct))
        reciprocity_ok = all(c.ok for c in checks)
        lattice_count = direct[1]
        logger.info(
            "Ehrhart polynomial computed",
            n=polytope.n,
            lattice_count=lattice_count,
            interior_count=len(interior),
            reciprocity_ok=reciprocity_ok,
            direct_ok=direct_ok,
        )
        return EhrhartReport(
            n=polytope.n,
            kmax=kmax,
            lattice_count=lattice_count,
            interior_count=len(interior),
            boundary_count=lattice_count - len(interior),
            ehrhart=list(poly.coefficients),
            direct_counts=direct,
            direct_ok=direct_ok,
            reciprocity=[
                ReciprocityReport(k=c.k, signed_value=c.signed_value, interior_count=c.interior_count, ok=c.ok)
                for c in checks
            ],
            reciprocity_ok=reciprocity_ok,
            ok=direct_ok and reciprocity_ok,
        )

    @staticmethod
    def moment_diagnostic(polytope: LatticePolytope, samples: int = 50, seed: int = 0) -> MomentDiagnostic:
        """Gradient agreement, facet margins and Hessian positivity at random points"""
        rng = np.random.default_rng(seed)
        normals = polytope.normals.astype(float)
        offsets = polytope.offsets.astype(float)
        worst_error, worst_margin, worst_eigenvalue = 0.0, np.inf, np.inf
        for _ in range(samples):
            x = rng.uniform(-SAMPLE_RADIUS, SAMPLE_RADIUS, polytope.n)
            mu = toric.moment_map(polytope, x)
            error = np.linalg.norm(numeric_gradient(polytope, x) - mu) / max(np.linalg.norm(mu), 1.0)
            worst_error = max(worst_error, float(error))
            if len(offsets):
                worst_margin = min(worst_margin, float(np.min(offsets - normals @ mu)))
            worst_eigenvalue = min(worst_eigenvalue, float(np.linalg.eigvalsh(toric.hessian(polytope, x)).min()))

        full = toric.is_full_dimensional(polytope)
        ok = (
            worst_error <= GRADIENT_TOLERANCE
            and worst_margin > settings.moment_tolerance
            and (worst_eigenvalue > 0 if full else worst_eigenvalue > -settings.moment_tolerance)
        )
        return MomentDiagnostic(
            samples=samples,
            max_gradient_error=worst_error,
            min_facet_margin=worst_margin,
            min_hessian_eigenvalue=worst_eigenvalue,
            ok=ok,
        )

    @classmethod
    def lmd(cls, polytope: LatticePolytope, seed: Optional[int] = None) -> ToricReport:
        """LMD of s_P and -s_P with the Delzant flag and moment diagnostics"""
        try:
            plus = toric.toric_lmd(polytope, 1)
            minus = toric.toric_lmd(polytope, -1)
            delzant = toric.delzant_check(polytope)
            interior = toric.interior_lattice_points(polytope)
        except TropMorseError as e:
            logger.error("Toric LMD failed", n=polytope.n, error=e.detail)
            raise

        lattice_count = len(toric.lattice_points(polytope))
        points = compose.from_toric(polytope, 1)
        moment = cls.moment_diagnostic(polytope, seed=settings.default_seed if seed is None else seed)
        n = polytope.n
        ok = (
            plus.euler == lattice_count
            and minus.euler == (-1) ** n * len(interior)
            and plus.lmd.concentrated_in(0)
            and minus.lmd.concentrated_in(n)
            and moment.ok
        )
        logger.info(
            "Toric LMD computed",
            n=n,
            euler_plus=plus.euler,
            euler_minus=minus.euler,
            delzant=delzant,
            ok=ok,
        )
        return ToricReport(
            n=n,
            lattice_count=lattice_count,
            interior_count=len(interior),
            boundary_count=lattice_count - len(interior),
            lmd={"plus": module_pairs(plus.lmd), "minus": module_pairs(minus.lmd)},
            euler={"plus": plus.euler, "minus": minus.euler},
            points=[PointSchema(label=label, lmd=module_pairs(m)) for label, m in points.points],
            delzant=delzant,
            moment=moment,
            ok=ok,
        )
