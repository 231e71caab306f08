"""
Finitely generated free graded modules over the integers (Betti tables)
"""
from dataclasses import dataclass, field
from math import factorial
from types import MappingProxyType
from typing import Dict, Iterable, List, Mapping, Tuple


@dataclass(frozen=True)
class GradedModule:
    """Degree -> rank table of a free graded Z-module.

    Zero ranks are never stored, so two modules are equal iff their tables are.
    """

    betti: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        table: Dict[int, int] = {}
        for degree, rank in self.betti.items():
            if rank < 0:
                raise ValueError(f"Negative rank {rank} in degree {degree}")
            if rank:
                table[int(degree)] = int(rank)
        object.__setattr__(self, "betti", MappingProxyType(dict(sorted(table.items()))))

    def __hash__(self) -> int:
        return hash(tuple(self.betti.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedModule):
            return NotImplemented
        return dict(self.betti) == dict(other.betti)

    def __add__(self, other: "GradedModule") -> "GradedModule":
        return direct_sum(self, other)

    def __mul__(self, other: "GradedModule") -> "GradedModule":
        return tensor(self, other)

    def rank(self, degree: int) -> int:
        return self.betti.get(degree, 0)

    @property
    def is_zero(self) -> bool:
        return not self.betti

    @property
    def total_rank(self) -> int:
        return sum(self.betti.values())

    @property
    def degrees(self) -> List[int]:
        return list(self.betti)

    def concentrated_in(self, degree: int) -> bool:
        """True if every generator sits in ``degree`` (the zero module counts)"""
        return all(d == degree for d in self.betti)

    def poincare_coefficients(self) -> List[int]:
        """Ranks in degrees min..max, zeros included; empty for the zero module"""
        if self.is_zero:
            return []
        low, high = self.degrees[0], self.degrees[-1]
        return [self.rank(d) for d in range(low, high + 1)]

    def to_pairs(self) -> List[List[int]]:
        """[[degree, rank], ...] sorted by degree, the report encoding"""
        return [[d, r] for d, r in self.betti.items()]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[int, int]]) -> "GradedModule":
        table: Dict[int, int] = {}
        for degree, rank in pairs:
            table[degree] = table.get(degree, 0) + rank
        return cls(table)

    def __repr__(self) -> str:
        if self.is_zero:
            return "GradedModule(0)"
        terms = " + ".join(f"Z^{r}[{-d}]" for d, r in self.betti.items())
        return f"GradedModule({terms})"


ZERO = GradedModule()


def free(degree: int, rank: int = 1) -> GradedModule:
    """Rank-``rank`` free module concentrated in ``degree``"""
    if rank < 0:
        raise ValueError(f"Rank must be nonnegative, got {rank}")
    return GradedModule({degree: rank})


def euler(m: GradedModule) -> int:
    """Alternating sum of ranks"""
    return sum(rank if degree % 2 == 0 else -rank for degree, rank in m.betti.items())


def direct_sum(*modules: GradedModule) -> GradedModule:
    table: Dict[int, int] = {}
    for m in modules:
        for degree, rank in m.betti.items():
            table[degree] = table.get(degree, 0) + rank
    return GradedModule(table)


def tensor(a: GradedModule, b: GradedModule) -> GradedModule:
    """Convolution of Betti tables (Kunneth for free modules)"""
    table: Dict[int, int] = {}
    for i, ra in a.betti.items():
        for j, rb in b.betti.items():
            table[i + j] = table.get(i + j, 0) + ra * rb
    return GradedModule(table)


def shift(m: GradedModule, k: int) -> GradedModule:
    """Move every generator up by ``k`` degrees"""
    return GradedModule({d + k: r for d, r in m.betti.items()})


def sym_euler(chi: int, n: int) -> int:
    """Coefficient of t^n in (1 - t)^(-chi).

    Computed as the rising factorial chi (chi+1) ... (chi+n-1) / n!, which is
    the generalized binomial C(n + chi - 1, n) for every integer chi.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    rising = 1
    for i in range(n):
        rising *= chi + i
    return rising // factorial(n)


def sym_series(chi: int, n: int) -> List[int]:
    """Coefficients of (1 - t)^(-chi) up to t^n.

    Built by repeated prefix sums (multiplying by 1/(1-t)) or repeated
    differences (multiplying by 1-t); no binomials involved.
    """
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    series = [1] + [0] * n
    for _ in range(abs(chi)):
        if chi > 0:
            running = 0
            for i in range(n + 1):
                running += series[i]
                series[i] = running
        else:
            for i in range(n, 0, -1):
                series[i] -= series[i - 1]
    return series


def series_product(a: List[int], b: List[int]) -> List[int]:
    """Truncated product of two power series of equal length"""
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]
