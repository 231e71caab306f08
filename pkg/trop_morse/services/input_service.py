"""
Input service: reads JSON files or built-in fixtures into domain objects
"""
import hashlib
import json
from typing import Any, Dict, List, Optional, Tuple, Type, TypeVar

import structlog
from pydantic import BaseModel, ValidationError

from trop_morse.core.exceptions import InputError
from trop_morse.core.validators import InputValidator
from trop_morse.geometry import compose
from trop_morse.geometry.compose import IndexedPointSet
from trop_morse.geometry.curve import CurveDivisor, TropicalCurve
from trop_morse.geometry.toric import LatticePolytope
from trop_morse.geometry.torus import TorusQuadraticDivisor
from trop_morse.schemas.curve import CurveSchema, DivisorSchema
from trop_morse.schemas.reports import PointSetSchema
from trop_morse.schemas.toric import PolytopeSchema
from trop_morse.schemas.torus import LatticeSchema, TorusSchema
from trop_morse.services import fixtures

logger = structlog.get_logger()

SchemaT = TypeVar("SchemaT", bound=BaseModel)

Digests = Dict[str, str]

POINTS = "points"


class InputService:
    """Resolve file paths and ``fixture:`` references"""

    @staticmethod
    def read_json(path: str) -> Tuple[Any, str]:
        """Parse a JSON file; returns the data and the sha256 of its bytes"""
        try:
            with open(path, "rb") as handle:
                raw = handle.read()
            return json.loads(raw.decode("utf-8")), hashlib.sha256(raw).hexdigest()
        except OSError as e:
            logger.error("Failed to read input", path=path, error=str(e))
            raise InputError(f"Cannot read {path}: {e.strerror or e}")
        except (UnicodeDecodeError, json.JSONDecodeError) as e:
            logger.error("Failed to parse input", path=path, error=str(e))
            raise InputError(f"{path} is not valid JSON: {e}")

    @staticmethod
    def parse(schema: Type[SchemaT], data: Any, source: str) -> SchemaT:
        try:
            return schema.model_validate(data)
        except ValidationError as e:
            problems = [f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}" for err in e.errors()]
            logger.error("Schema validation failed", source=source, problems=problems)
            raise InputError(f"{source} does not match the {schema.__name__} schema: {'; '.join(problems)}")

    @staticmethod
    def _fixture(reference: str, *kinds: str) -> fixtures.Fixture:
        fixture = fixtures.load_fixture(reference)
        if fixture.kind not in kinds:
            raise InputError(f"{reference} is a {fixture.kind} fixture, expected {' or '.join(kinds)}")
        return fixture

    @staticmethod
    def _fixture_digest(reference: str) -> str:
        return hashlib.sha256(reference.encode("utf-8")).hexdigest()

    @classmethod
    def load_curve(
        cls, source: str, divisor_source: Optional[str] = None
    ) -> Tuple[TropicalCurve, CurveDivisor, Digests]:
        """A curve fixture, or a curve file plus a divisor file"""
        if InputValidator.is_fixture(source):
            curve, div = cls._fixture(source, fixtures.CURVE).value
            return curve, div, {source: cls._fixture_digest(source)}
        if divisor_source is None:
            raise InputError("a curve file needs a divisor file")

        curve_data, curve_digest = cls.read_json(source)
        curve = cls.parse(CurveSchema, curve_data, source).to_domain()
        divisor_data, divisor_digest = cls.read_json(divisor_source)
        div = cls.parse(DivisorSchema, divisor_data, divisor_source).to_domain()
        return curve, div, {source: curve_digest, divisor_source: divisor_digest}

    @classmethod
    def load_torus(cls, source: str) -> Tuple[TorusQuadraticDivisor, Digests]:
        if InputValidator.is_fixture(source):
            return cls._fixture(source, fixtures.TORUS).value, {source: cls._fixture_digest(source)}
        data, digest = cls.read_json(source)
        return cls.parse(TorusSchema, data, source).to_domain(), {source: digest}

    @classmethod
    def load_lattice(cls, source: str) -> Tuple[List[List[int]], Digests]:
        if InputValidator.is_fixture(source):
            return cls._fixture(source, fixtures.LATTICE).value, {source: cls._fixture_digest(source)}
        data, digest = cls.read_json(source)
        return cls.parse(LatticeSchema, data, source).lattice, {source: digest}

    @classmethod
    def load_polytope(cls, source: str) -> Tuple[LatticePolytope, Digests]:
        if InputValidator.is_fixture(source):
            return cls._fixture(source, fixtures.POLYTOPE).value, {source: cls._fixture_digest(source)}
        data, digest = cls.read_json(source)
        return cls.parse(PolytopeSchema, data, source).to_domain(), {source: digest}

    @classmethod
    def load_source(cls, source: str) -> Tuple[str, Any, Digests]:
        """Any composable input: a curve fixture, a torus, a polytope or a prior report.

        Returns the kind (fixtures.CURVE, TORUS, POLYTOPE or POINTS), the
        domain value and the digests.
        """
        if InputValidator.is_fixture(source):
            fixture = cls._fixture(source, fixtures.CURVE, fixtures.TORUS, fixtures.POLYTOPE)
            return fixture.kind, fixture.value, {source: cls._fixture_digest(source)}

        data, digest = cls.read_json(source)
        digests = {source: digest}
        if isinstance(data, dict) and "results" in data and "points" not in data:
            # a RunReport envelope: take its first result
            data = (data.get("results") or [{}])[0]
        if isinstance(data, dict) and "points" in data:
            schema = cls.parse(PointSetSchema, data, source)
            return POINTS, IndexedPointSet(tuple((p.label, p.module()) for p in schema.points)), digests
        if isinstance(data, dict) and "matrix" in data:
            return fixtures.TORUS, cls.parse(TorusSchema, data, source).to_domain(), digests
        if isinstance(data, dict) and "facets" in data:
            return fixtures.POLYTOPE, cls.parse(PolytopeSchema, data, source).to_domain(), digests
        raise InputError(f"{source} holds no point set, torus or polytope")

    @classmethod
    def load_point_set(cls, source: str, sign: int = 1) -> Tuple[IndexedPointSet, Digests]:
        """Indexed points of any composable input; polytopes use +-s_P by ``sign``"""
        kind, value, digests = cls.load_source(source)
        return to_point_set(kind, value, sign), digests


def to_point_set(kind: str, value: Any, sign: int = 1) -> IndexedPointSet:
    if kind == fixtures.CURVE:
        return compose.from_curve(*value)
    if kind == fixtures.TORUS:
        return compose.from_torus(value)
    if kind == fixtures.POLYTOPE:
        return compose.from_toric(value, sign)
    return value
