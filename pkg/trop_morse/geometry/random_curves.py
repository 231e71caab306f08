"""
Deterministic pseudo-random curves and permissible divisors for property runs
"""
import random
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import structlog

from trop_morse.geometry.curve import (
    HEAD,
    TAIL,
    CurveDivisor,
    Edge,
    HalfEdge,
    Profile,
    TropicalCurve,
    Vertex,
)

logger = structlog.get_logger()


def random_curve(genus: int, leaves: int, seed: int, max_edges: int = 12) -> TropicalCurve:
    """Connected curve with first Betti number ``genus`` and ``leaves`` ends at infinity.

    A random tree on the finite vertices, ``genus`` extra edges (loops and
    parallel edges allowed), then each leaf hung on a random finite vertex.
    """
    if genus < 0 or leaves < 0:
        raise ValueError(f"genus and leaves must be nonnegative (got {genus}, {leaves})")
    tree_budget = max_edges - genus - leaves
    if tree_budget < 0:
        raise ValueError(f"genus {genus} with {leaves} leaves needs more than {max_edges} edges")

    rng = random.Random(seed)
    stable_size = max(1, 2 * genus - 2 + leaves)
    finite = rng.randint(1, max(1, min(stable_size, tree_budget + 1)))

    vertices = [Vertex(f"v{i}") for i in range(finite)]
    ends: List[Tuple[str, str]] = []
    for i in range(1, finite):
        ends.append((f"v{rng.randrange(i)}", f"v{i}"))
    for _ in range(genus):
        ends.append((f"v{rng.randrange(finite)}", f"v{rng.randrange(finite)}"))
    for j in range(leaves):
        vertices.append(Vertex(f"inf{j}", at_infinity=True))
        anchor = f"v{rng.randrange(finite)}"
        # leaves point either way so both orientations get exercised
        ends.append((anchor, f"inf{j}") if rng.random() < 0.5 else (f"inf{j}", anchor))

    edges = tuple(
        Edge(f"e{i}", tail, head, Fraction(rng.randint(1, 9), rng.randint(1, 4)))
        for i, (tail, head) in enumerate(ends)
    )
    return TropicalCurve(tuple(vertices), edges)


def _random_fraction(rng: random.Random, bound: int, integer_odds: float) -> Fraction:
    if rng.random() < integer_odds:
        return Fraction(rng.randint(-bound, bound))
    denominator = rng.randint(2, 6)
    numerator = rng.randint(-bound * denominator, bound * denominator)
    if numerator % denominator == 0:
        numerator += 1
    return Fraction(numerator, denominator)


def _zero_sum_integers(rng: random.Random, count: int, bound: int) -> List[int]:
    """``count`` integers in [-bound, bound] summing to zero (pivot completion)"""
    for _ in range(100):
        head = [rng.randint(-bound, bound) for _ in range(count - 1)]
        pivot = -sum(head)
        if abs(pivot) <= bound:
            return head + [pivot]
    return [0] * count


def _profile(
    rng: random.Random, length: Fraction, start: Fraction, end: Fraction, breakpoints: int, bound: int
) -> Profile:
    slots = 4 * (breakpoints + 1) + 1
    picks = sorted(rng.sample(range(1, slots), breakpoints))
    positions = [Fraction(0)] + [length * Fraction(j, slots) for j in picks] + [length]
    values = [start] + [_random_fraction(rng, bound, 0.25) for _ in picks] + [end]

    if len(values) == 2 and start == end and start.denominator == 1:
        positions.insert(1, length / 2)
        values.insert(1, start + Fraction(1, 2))

    # break every constant integer segment
    for i in range(1, len(values)):
        if values[i] == values[i - 1] and values[i].denominator == 1:
            if i < len(values) - 1:
                values[i] += Fraction(1, 2)
            else:
                values[i - 1] += Fraction(1, 2)
    return Profile(tuple(zip(positions, values)))


def random_divisor(
    curve: TropicalCurve,
    seed: int,
    max_level: int = 5,
    breakpoints_per_edge: int = 2,
    principal: bool = False,
    name: Optional[str] = None,
) -> CurveDivisor:
    """Pseudo-random permissible divisor; the same seed gives the same divisor.

    Slopes at vertices of valence != 2 are integers (zero-sum when
    ``principal``), leaves end at 0, 2-valent vertices get a random slope
    (integral a third of the time) plus an integral chart jump unless
    ``principal``.
    """
    if max_level < 0:
        raise ValueError(f"no integer slope assignment with max_level {max_level}")
    rng = random.Random(seed)

    outgoing: Dict[HalfEdge, Fraction] = {}
    for v in curve.vertices:
        halves = curve.half_edges(v.id)
        if not halves:
            continue
        if v.at_infinity:
            outgoing[halves[0]] = Fraction(0)
        elif len(halves) == 2:
            slope = _random_fraction(rng, max_level, 1 / 3)
            jump = 0 if principal else rng.randint(-2, 2)
            outgoing[halves[0]] = slope
            outgoing[halves[1]] = -slope + jump
        else:
            if principal:
                slopes = _zero_sum_integers(rng, len(halves), max_level)
            else:
                slopes = [rng.randint(-max_level, max_level) for _ in halves]
            for half, slope in zip(halves, slopes):
                outgoing[half] = Fraction(slope)

    profiles = {}
    for e in curve.edges:
        start = outgoing[HalfEdge(e.id, TAIL)]
        end = -outgoing[HalfEdge(e.id, HEAD)]
        profiles[e.id] = _profile(rng, e.length, start, end, breakpoints_per_edge, max_level)

    logger.debug("Random divisor generated", seed=seed, edges=len(profiles), principal=principal)
    return CurveDivisor(profiles, name)
