"""
Pydantic schema for lattice polytope files
"""
from typing import List

from pydantic import BaseModel, Field, model_validator

from trop_morse.core.exceptions import PermissibilityError
from trop_morse.geometry.toric import Facet, LatticePolytope, cross_validate


class FacetSchema(BaseModel):
    """The inequality a . x <= b"""
    a: List[int]
    b: int


class PolytopeSchema(BaseModel):
    """Polytope file: {"n": int, "vertices": [[int]], "facets": [{"a", "b"}]}"""
    n: int = Field(..., ge=1, le=6)
    vertices: List[List[int]] = Field(..., min_length=1)
    facets: List[FacetSchema]

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def validate_dimensions(self):
        if any(len(v) != self.n for v in self.vertices):
            raise ValueError(f"every vertex needs {self.n} coordinates")
        if any(len(f.a) != self.n for f in self.facets):
            raise ValueError(f"every facet normal needs {self.n} coordinates")
        return self

    def to_domain(self) -> LatticePolytope:
        """Build the polytope and check that both representations agree"""
        polytope = LatticePolytope(
            self.n,
            tuple(tuple(v) for v in self.vertices),
            tuple(Facet(tuple(f.a), f.b) for f in self.facets),
        )
        problems = cross_validate(polytope)
        if problems:
            raise PermissibilityError("; ".join(problems), report=problems)
        return polytope

    @classmethod
    def from_domain(cls, polytope: LatticePolytope) -> "PolytopeSchema":
        return cls(
            n=polytope.n,
            vertices=[list(v) for v in polytope.vertices],
            facets=[FacetSchema(a=list(f.normal), b=f.offset) for f in polytope.facets],
        )
