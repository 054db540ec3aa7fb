"""
Module: convex
Description: Exact convex geometry over the rationals: a two-phase simplex with
             Bland's rule, position of the origin relative to a convex hull, and
             the minimum-norm point of a polytope under an inner product (Wolfe)

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- fractions: 3.9+ - Exact arithmetic for every decision
- structlog: 23.2.0+ - Iteration counts at debug level

Usage:
    from gitstrata.convex import HullPosition, min_norm_point, origin_position

    origin_position([QVector.of(1), QVector.of(-1)])    # HullPosition.INTERIOR
    min_norm_point([QVector.of(1, 0), QVector.of(0, 1)], InnerProduct.standard(2))
    # (QVector((1/2, 1/2)), Fraction(1, 2))

Notes:
    - "Interior" is relative to the ambient space unless relative=True
    - Input points are deduplicated and sorted before Wolfe runs, so the result
      and its trace do not depend on input order
    - min_norm_by_enumeration is the exhaustive oracle used by the tests
"""

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from .errors import InconsistencyError, InputError
from .rational import InnerProduct, QVector, affine_rank, solve_linear

logger = structlog.get_logger(__name__)


class HullPosition(str, Enum):
    OUTSIDE = "Outside"
    BOUNDARY = "Boundary"
    INTERIOR = "Interior"


class LPStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: Tuple[Fraction, ...] = ()
    value: Optional[Fraction] = None
    pivots: int = 0


class SimplexTableau:
    """Dense tableau for max c·x subject to Ax = b, x >= 0, b >= 0.

    Entering and leaving variables are chosen by Bland's rule (smallest
    index), so the method cannot cycle.
    """

    def __init__(self, rows: List[List[Fraction]], rhs: List[Fraction], basis: List[int]):
        self.rows = rows
        self.rhs = rhs
        self.basis = basis
        self.pivots = 0

    @property
    def width(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.rows[i][j]
        self.rows[i] = [v / piv for v in self.rows[i]]
        self.rhs[i] /= piv
        for k in range(len(self.rows)):
            if k != i and self.rows[k][j] != 0:
                f = self.rows[k][j]
                self.rows[k] = [a - f * b for a, b in zip(self.rows[k], self.rows[i])]
                self.rhs[k] -= f * self.rhs[i]
        self.basis[i] = j
        self.pivots += 1

    def reduced_costs(self, cost: Sequence[Fraction]) -> List[Fraction]:
        reduced = list(cost)
        for i, b in enumerate(self.basis):
            cb = cost[b]
            if cb == 0:
                continue
            reduced = [r - cb * a for r, a in zip(reduced, self.rows[i])]
        return reduced

    def maximize(self, cost: Sequence[Fraction], allowed: int) -> LPStatus:
        """Run Bland's primal simplex over the first `allowed` columns."""
        while True:
            reduced = self.reduced_costs(cost)
            entering = next(
                (j for j in range(allowed) if reduced[j] > 0 and j not in self.basis),
                None,
            )
            if entering is None:
                return LPStatus.OPTIMAL
            best: Optional[Tuple[Fraction, int, int]] = None
            for i, row in enumerate(self.rows):
                if row[entering] > 0:
                    candidate = (self.rhs[i] / row[entering], self.basis[i], i)
                    if best is None or candidate < best:
                        best = candidate
            if best is None:
                return LPStatus.UNBOUNDED
            self.pivot(best[2], entering)

    def solution(self, n: int) -> Tuple[Fraction, ...]:
        x = [Fraction(0)] * n
        for i, b in enumerate(self.basis):
            if b < n:
                x[b] = self.rhs[i]
        return tuple(x)


def maximize_lp(
    cost: Sequence[Fraction],
    a_eq: Sequence[Sequence[Fraction]],
    b_eq: Sequence[Fraction],
) -> LPResult:
    """Maximise cost·x subject to a_eq x = b_eq and x >= 0, exactly.

    Two-phase simplex: phase one drives artificial variables to zero,
    phase two optimises the real objective.
    """
    n = len(cost)
    m = len(a_eq)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for i in range(m):
        row = [Fraction(v) for v in a_eq[i]]
        if len(row) != n:
            raise InputError(f"constraint row {i} has {len(row)} entries, expected {n}")
        b = Fraction(b_eq[i])
        if b < 0:
            row = [-v for v in row]
            b = -b
        artificial = [Fraction(1 if k == i else 0) for k in range(m)]
        rows.append(row + artificial)
        rhs.append(b)

    tableau = SimplexTableau(rows, rhs, [n + i for i in range(m)])
    phase_one = [Fraction(0)] * n + [Fraction(-1)] * m
    tableau.maximize(phase_one, allowed=n + m)
    if any(tableau.rhs[i] != 0 for i, b in enumerate(tableau.basis) if b >= n):
        logger.debug("lp.infeasible", pivots=tableau.pivots)
        return LPResult(LPStatus.INFEASIBLE, pivots=tableau.pivots)

    # Drive zero-valued artificials out of the basis; drop redundant rows.
    i = 0
    while i < len(tableau.rows):
        if tableau.basis[i] >= n:
            column = next((j for j in range(n) if tableau.rows[i][j] != 0), None)
            if column is None:
                del tableau.rows[i]
                del tableau.rhs[i]
                del tableau.basis[i]
                continue
            tableau.pivot(i, column)
        i += 1

    phase_two = [Fraction(c) for c in cost] + [Fraction(0)] * m
    status = tableau.maximize(phase_two, allowed=n)
    if status is LPStatus.UNBOUNDED:
        return LPResult(status, pivots=tableau.pivots)
    x = tableau.solution(n)
    value = sum((Fraction(c) * v for c, v in zip(cost, x)), Fraction(0))
    logger.debug("lp.optimal", pivots=tableau.pivots, value=str(value))
    return LPResult(LPStatus.OPTIMAL, x=x, value=value, pivots=tableau.pivots)


def _validate_points(points: Sequence[QVector]) -> int:
    if not points:
        raise InputError("point list must be nonempty")
    k = points[0].dim
    for i, p in enumerate(points):
        if p.dim != k:
            raise InputError(f"dimension mismatch: point {i} has {p.dim}, expected {k}")
    return k


def origin_position(points: Sequence[QVector], relative: bool = False) -> HullPosition:
    """Locate the origin relative to conv(points).

    Outside when no convex combination vanishes. Interior when some convex
    combination with all weights positive vanishes and, unless `relative`
    is set, the points affinely span the ambient space. Boundary otherwise.
    """
    k = _validate_points(points)
    n = len(points)

    # Variables: s_1..s_n >= 0 and t >= 0 with weights s_i + t; maximise t.
    a_eq: List[List[Fraction]] = [[Fraction(1)] * n + [Fraction(n)]]
    b_eq: List[Fraction] = [Fraction(1)]
    for axis in range(k):
        row = [p[axis] for p in points]
        a_eq.append(row + [sum(row, Fraction(0))])
        b_eq.append(Fraction(0))
    cost = [Fraction(0)] * n + [Fraction(1)]

    result = maximize_lp(cost, a_eq, b_eq)
    if result.status is LPStatus.INFEASIBLE:
        return HullPosition.OUTSIDE
    if result.status is not LPStatus.OPTIMAL or result.value is None:
        raise InconsistencyError("hull membership LP is unbounded")
    if result.value <= 0:
        return HullPosition.BOUNDARY
    if not relative and affine_rank(points) < k:
        return HullPosition.BOUNDARY
    return HullPosition.INTERIOR


@dataclass(frozen=True)
class MinNormResult:
    point: QVector
    norm_sq: Fraction
    witness: Tuple[Tuple[QVector, Fraction], ...]
    major_cycles: int = 0
    minor_cycles: int = 0


def _canonical(points: Sequence[QVector]) -> List[QVector]:
    return sorted(set(points))


def _combine(corral: Sequence[QVector], weights: Sequence[Fraction]) -> QVector:
    dimension = corral[0].dim
    coords = [Fraction(0)] * dimension
    for p, w in zip(corral, weights):
        if w == 0:
            continue
        for axis in range(dimension):
            coords[axis] += w * p[axis]
    return QVector(tuple(coords))


def _affine_minimizer(
    corral: Sequence[QVector], ip: InnerProduct
) -> Optional[List[Fraction]]:
    """Barycentric coordinates of the point of aff(corral) nearest the origin."""
    size = len(corral)
    gram = [[ip.pair(p, q) for q in corral] for p in corral]
    # [G 1; 1ᵀ 0] [alpha; mu] = [0; 1]
    system = [gram[i] + [Fraction(1)] for i in range(size)]
    system.append([Fraction(1)] * size + [Fraction(0)])
    solution = solve_linear(system, [Fraction(0)] * size + [Fraction(1)])
    if solution is None:
        return None
    return solution[:size]


def solve_min_norm(points: Sequence[QVector], ip: InnerProduct) -> MinNormResult:
    """Wolfe's active-set method for the closest point of conv(points) to 0.

    Entering points are the minimisers of ⟨x, p⟩, ties broken by the
    lexicographic order of coordinates.
    """
    dimension = _validate_points(points)
    if ip.dim != dimension:
        raise InputError(f"inner product has dimension {ip.dim}, points {dimension}")
    candidates = _canonical(points)

    start = min(candidates, key=lambda p: (ip.norm_sq(p), p))
    corral: List[QVector] = [start]
    weights: List[Fraction] = [Fraction(1)]
    x = start
    major = minor = 0

    while True:
        x_sq = ip.norm_sq(x)
        if x_sq == 0:
            break
        entering = min(candidates, key=lambda p: (ip.pair(x, p), p))
        if ip.pair(x, entering) >= x_sq:
            break
        if entering in corral:
            raise InconsistencyError("Wolfe selected a point already in the corral")
        major += 1
        corral.append(entering)
        weights.append(Fraction(0))

        while True:
            alpha = _affine_minimizer(corral, ip)
            if alpha is None:
                raise InconsistencyError("Wolfe corral lost affine independence")
            if all(a >= 0 for a in alpha):
                weights = alpha
                x = _combine(corral, weights)
                break
            minor += 1
            theta = min(
                weights[i] / (weights[i] - alpha[i])
                for i in range(len(corral))
                if alpha[i] < 0
            )
            weights = [theta * a + (1 - theta) * w for a, w in zip(alpha, weights)]
            x = _combine(corral, weights)
            kept = [(p, w) for p, w in zip(corral, weights) if w > 0]
            corral = [p for p, _ in kept]
            weights = [w for _, w in kept]

        kept = [(p, w) for p, w in zip(corral, weights) if w > 0]
        corral = [p for p, _ in kept]
        weights = [w for _, w in kept]

    norm_sq = ip.norm_sq(x)
    for p in candidates:
        if ip.pair(x, p - x) < 0:
            raise InconsistencyError(f"optimality certificate fails at {p.to_text()}")
    logger.debug(
        "wolfe.done",
        points=len(candidates),
        major_cycles=major,
        minor_cycles=minor,
        norm_sq=str(norm_sq),
    )
    return MinNormResult(
        point=x,
        norm_sq=norm_sq,
        witness=tuple(zip(corral, weights)),
        major_cycles=major,
        minor_cycles=minor,
    )


def min_norm_point(
    points: Sequence[QVector], ip: InnerProduct
) -> Tuple[QVector, Fraction]:
    """Closest point of conv(points) to the origin and its squared norm."""
    result = solve_min_norm(points, ip)
    return result.point, result.norm_sq


def min_norm_by_enumeration(
    points: Sequence[QVector], ip: InnerProduct
) -> Tuple[QVector, Fraction]:
    """Exhaustive oracle: best affine minimiser over all simplices of the points.

    Every affinely independent subset contributes the nearest point of its
    affine span when that point lies in the subset's convex hull.
    """
    dimension = _validate_points(points)
    candidates = _canonical(points)
    best: Optional[Tuple[Fraction, QVector]] = None
    for size in range(1, min(len(candidates), dimension + 1) + 1):
        for subset in combinations(candidates, size):
            if affine_rank(subset) != size - 1:
                continue
            alpha = _affine_minimizer(subset, ip)
            if alpha is None or any(a < 0 for a in alpha):
                continue
            y = _combine(subset, alpha)
            key = (ip.norm_sq(y), y)
            if best is None or key < best:
                best = key
    if best is None:
        raise InconsistencyError("no simplex produced a candidate")
    return best[1], best[0]


def witness_weights(result: MinNormResult) -> Dict[QVector, Fraction]:
    return {p: w for p, w in result.witness}
