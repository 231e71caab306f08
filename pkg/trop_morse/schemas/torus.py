"""
Pydantic schemas for quadratic torus divisors and Bohr-Sommerfeld lattices
"""
from typing import List

from pydantic import BaseModel, Field, model_validator

from trop_morse.geometry.torus import TorusQuadraticDivisor
from trop_morse.schemas.common import RationalStr, to_fraction


def _check_square(n: int, rows: List[List[int]], what: str) -> None:
    if len(rows) != n or any(len(row) != n for row in rows):
        raise ValueError(f"{what} must be {n}x{n}")


class TorusSchema(BaseModel):
    """Torus file: {"n": int, "matrix": [[int]], "shift": ["p/q"]}"""
    n: int = Field(..., ge=0, le=8)
    matrix: List[List[int]]
    shift: List[RationalStr] = Field(default_factory=list)

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def validate_shape(self):
        _check_square(self.n, self.matrix, "matrix")
        if self.shift and len(self.shift) != self.n:
            raise ValueError(f"shift must have {self.n} entries")
        if any(self.matrix[i][j] != self.matrix[j][i] for i in range(self.n) for j in range(self.n)):
            raise ValueError("matrix must be symmetric")
        return self

    def to_domain(self) -> TorusQuadraticDivisor:
        return TorusQuadraticDivisor(
            tuple(tuple(row) for row in self.matrix),
            tuple(to_fraction(c) for c in self.shift),
        )

    @classmethod
    def from_domain(cls, d: TorusQuadraticDivisor) -> "TorusSchema":
        return cls(n=d.n, matrix=[list(row) for row in d.matrix], shift=list(d.shift))


class LatticeSchema(BaseModel):
    """Bohr-Sommerfeld file: {"n": int, "lattice": [[int]]}; columns span L"""
    n: int = Field(..., ge=1, le=8)
    lattice: List[List[int]]

    class Config:
        extra = "forbid"

    @model_validator(mode="after")
    def validate_shape(self):
        _check_square(self.n, self.lattice, "lattice")
        return self
