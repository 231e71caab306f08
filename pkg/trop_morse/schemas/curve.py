"""
Pydantic schemas for curve and divisor files
"""
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from trop_morse.core.exceptions import StructuralError
from trop_morse.geometry.curve import CurveDivisor, Edge, Profile, TropicalCurve, Vertex
from trop_morse.schemas.common import RationalStr, to_fraction


class VertexSchema(BaseModel):
    """Schema for a curve vertex"""
    id: str = Field(..., min_length=1)
    at_infinity: bool = False


class EdgeSchema(BaseModel):
    """Schema for a curve edge; lengths are exact rationals"""
    id: str = Field(..., min_length=1)
    tail: str = Field(..., min_length=1)
    head: str = Field(..., min_length=1)
    length: RationalStr = "1"


class CurveSchema(BaseModel):
    """Curve file: {"vertices": [...], "edges": [...]}"""
    name: Optional[str] = None
    vertices: List[VertexSchema]
    edges: List[EdgeSchema]

    class Config:
        extra = "forbid"

    def to_domain(self) -> TropicalCurve:
        """Build the curve; raises StructuralError on broken references"""
        curve = TropicalCurve(
            tuple(Vertex(v.id, v.at_infinity) for v in self.vertices),
            tuple(Edge(e.id, e.tail, e.head, to_fraction(e.length)) for e in self.edges),
        )
        errors = curve.structural_errors()
        if errors:
            raise StructuralError("; ".join(errors), context={"curve": self.name})
        return curve

    @classmethod
    def from_domain(cls, curve: TropicalCurve, name: Optional[str] = None) -> "CurveSchema":
        return cls(
            name=name,
            vertices=[VertexSchema(id=v.id, at_infinity=v.at_infinity) for v in curve.vertices],
            edges=[
                EdgeSchema(id=e.id, tail=e.tail, head=e.head, length=e.length)
                for e in curve.edges
            ],
        )


class DivisorSchema(BaseModel):
    """Divisor file: {"curve": name, "profiles": {edge: [["pos", "val"], ...]}}"""
    curve: str = ""
    profiles: Dict[str, List[Tuple[RationalStr, RationalStr]]]

    class Config:
        extra = "forbid"

    def to_domain(self) -> CurveDivisor:
        return CurveDivisor(
            {
                edge: Profile(tuple((to_fraction(t), to_fraction(v)) for t, v in points))
                for edge, points in self.profiles.items()
            },
            self.curve or None,
        )

    @classmethod
    def from_domain(cls, div: CurveDivisor) -> "DivisorSchema":
        return cls(
            curve=div.curve_name or "",
            profiles={edge: list(p.breakpoints) for edge, p in sorted(div.profiles.items())},
        )
