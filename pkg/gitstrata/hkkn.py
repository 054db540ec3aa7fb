"""
Module: hkkn
Description: Instability stratification of a torus-diagonal representation:
             the weight of a one-parameter subgroup, semistability, the index
             set of strata, stratum assignment, Z/Y membership, limits,
             parabolic block data, twisting and the quotient hypotheses

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- fractions: 3.9+ - Exact pairings
- concurrent.futures: 3.9+ - Optional process pool for index_set
- structlog: 23.2.0+ - Index-set summaries

Usage:
    from gitstrata.hkkn import PointSupport, index_set, stratum_of, sym_n_weight_system

    ws = sym_n_weight_system(4)
    sorted(b[0] for b in index_set(ws))     # [0, 2, 4]
    stratum_of(PointSupport.of(0, 1), ws)   # QVector((Fraction(2, 1),))

Notes:
    - A point is represented only by its support: the indices i with a_i != 0
    - mu(x, lambda) = -min over the support of <w_i, lambda>
    - epsilon is symbolic (EpsWeight), never a small rational
    - Weyl elements must permute the weights; twisted systems carry no Weyl data
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import combinations
from typing import (
    Callable,
    Dict,
    FrozenSet,
    Iterable,
    Iterator,
    List,
    Optional,
    Sequence,
    Tuple,
)

import structlog

from .convex import HullPosition, min_norm_point, origin_position
from .errors import InconsistencyError, InputError
from .rational import (
    InnerProduct,
    Matrix,
    QVector,
    RationalLike,
    affine_rank,
    format_rational,
    identity_matrix,
    mat_mul,
    parse_rational,
)

logger = structlog.get_logger(__name__)


class Status(str, Enum):
    UNSTABLE = "Unstable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    STABLE = "Stable"

    @property
    def rank(self) -> int:
        return _STATUS_RANK[self]

    def __lt__(self, other: object) -> bool:
        if not isinstance(other, Status):
            return NotImplemented
        return self.rank < other.rank

    @property
    def is_semistable(self) -> bool:
        return self is not Status.UNSTABLE


_STATUS_RANK = {
    Status.UNSTABLE: 0,
    Status.STRICTLY_SEMISTABLE: 1,
    Status.STABLE: 2,
}

_POSITION_STATUS = {
    HullPosition.OUTSIDE: Status.UNSTABLE,
    HullPosition.BOUNDARY: Status.STRICTLY_SEMISTABLE,
    HullPosition.INTERIOR: Status.STABLE,
}


@dataclass(frozen=True, order=True)
class EpsWeight:
    """main + eps·ε for a formal infinitesimal ε > 0, ordered lexicographically."""

    main: Fraction
    eps: Fraction = Fraction(0)

    @classmethod
    def of(cls, main: RationalLike, eps: RationalLike = 0) -> "EpsWeight":
        return cls(parse_rational(main), parse_rational(eps))

    @property
    def sign(self) -> int:
        value = self.main if self.main != 0 else self.eps
        return (value > 0) - (value < 0)

    def __add__(self, other: "EpsWeight") -> "EpsWeight":
        return EpsWeight(self.main + other.main, self.eps + other.eps)

    def __neg__(self) -> "EpsWeight":
        return EpsWeight(-self.main, -self.eps)

    def __sub__(self, other: "EpsWeight") -> "EpsWeight":
        return self + (-other)

    def scale(self, factor: RationalLike) -> "EpsWeight":
        c = parse_rational(factor)
        return EpsWeight(c * self.main, c * self.eps)

    def to_text(self) -> str:
        if self.eps == 0:
            return format_rational(self.main)
        magnitude = abs(self.eps)
        eps_part = "ε" if magnitude == 1 else f"{format_rational(magnitude)}ε"
        if self.main == 0:
            return ("-" if self.eps < 0 else "") + eps_part
        return format_rational(self.main) + ("-" if self.eps < 0 else "+") + eps_part

    def to_json(self) -> List[str]:
        return [format_rational(self.main), format_rational(self.eps)]


@dataclass(frozen=True)
class PointSupport:
    """The indices of the nonzero coordinates of a point."""

    indices: FrozenSet[int]

    def __post_init__(self) -> None:
        if not self.indices:
            raise InputError("support must be nonempty", field="support")
        if any(i < 0 for i in self.indices):
            raise InputError("support indices must be non-negative", field="support")

    @classmethod
    def of(cls, *indices: int) -> "PointSupport":
        return cls(frozenset(indices))

    @classmethod
    def parse(cls, text: str) -> "PointSupport":
        try:
            values = [int(piece) for piece in text.split(",") if piece.strip()]
        except ValueError:
            raise InputError(f"cannot parse support '{text}'", field="support")
        return cls(frozenset(values))

    def sorted(self) -> List[int]:
        return sorted(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sorted())

    def __len__(self) -> int:
        return len(self.indices)

    def to_json(self) -> List[int]:
        return self.sorted()


@dataclass(frozen=True)
class Cocharacter:
    vector: QVector

    @classmethod
    def of(cls, *values: RationalLike) -> "Cocharacter":
        return cls(QVector.of(*values))

    def require_nonzero(self) -> None:
        if self.vector.is_zero():
            raise InputError("cocharacter must be nonzero", field="lambda")


@dataclass(frozen=True)
class WeightSystem:
    """Torus weights of a representation, with optional Weyl and grading data."""

    weights: Tuple[QVector, ...]
    ip: InnerProduct
    weyl: Optional[Tuple[Matrix, ...]] = None
    chamber: Optional[Tuple[QVector, ...]] = None
    adjoint_weights: Optional[Tuple[Fraction, ...]] = None
    _permutations: Tuple[Tuple[int, ...], ...] = field(
        default=(), init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if not self.weights:
            raise InputError("at least one weight is required", field="weights")
        k = self.ip.dim
        for i, w in enumerate(self.weights):
            if w.dim != k:
                raise InputError(
                    f"weight has dimension {w.dim}, expected {k}", field=f"weights.{i}"
                )
        if self.weyl is None:
            if self.chamber is not None:
                raise InputError("a chamber needs a weyl group", field="chamber")
            return
        if not self.weyl:
            raise InputError("weyl group must contain the identity", field="weyl")
        if not self.chamber:
            raise InputError("a chamber is required with a weyl group", field="chamber")
        for i, c in enumerate(self.chamber):
            if c.dim != k:
                raise InputError(f"chamber vector has dimension {c.dim}", field=f"chamber.{i}")
        for i, g in enumerate(self.weyl):
            if len(g) != k or any(len(row) != k for row in g):
                raise InputError(f"weyl element is not {k}x{k}", field=f"weyl.{i}")
            if not self.ip.preserved_by(g):
                raise InputError("weyl element does not preserve the form", field=f"weyl.{i}")
        if identity_matrix(k) not in self.weyl:
            raise InputError("weyl group must contain the identity", field="weyl")
        for g in self.weyl:
            for h in self.weyl:
                if mat_mul(g, h) not in self.weyl:
                    raise InputError("weyl group is not closed under products", field="weyl")
        object.__setattr__(
            self,
            "_permutations",
            tuple(self._permutation_for(i, g) for i, g in enumerate(self.weyl)),
        )

    def _permutation_for(self, index: int, g: Matrix) -> Tuple[int, ...]:
        positions: Dict[QVector, List[int]] = {}
        for i, w in enumerate(self.weights):
            positions.setdefault(w, []).append(i)
        used: Dict[QVector, int] = {}
        image: List[int] = []
        for w in self.weights:
            target = w.apply(g)
            slots = positions.get(target, [])
            taken = used.get(target, 0)
            if taken >= len(slots):
                raise InputError(
                    "weights are not permuted by this weyl element", field=f"weyl.{index}"
                )
            image.append(slots[taken])
            used[target] = taken + 1
        return tuple(image)

    @property
    def dimension(self) -> int:
        return self.ip.dim

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def weyl_elements(self) -> Tuple[Matrix, ...]:
        return self.weyl if self.weyl is not None else (identity_matrix(self.dimension),)

    def check_support(self, x: PointSupport) -> None:
        bad = [i for i in x.indices if i >= self.size]
        if bad:
            raise InputError(
                f"index {min(bad)} out of range for {self.size} weights", field="support"
            )

    def weights_of(self, x: PointSupport) -> List[QVector]:
        self.check_support(x)
        return [self.weights[i] for i in x.sorted()]

    def pairing(self, i: int, lam: Cocharacter) -> Fraction:
        return self.ip.pair(self.weights[i], lam.vector)

    def in_chamber(self, v: QVector) -> bool:
        if self.chamber is None:
            return True
        return all(self.ip.pair(v, c) >= 0 for c in self.chamber)

    def permutation(self, weyl_index: int) -> Tuple[int, ...]:
        if self.weyl is None:
            if weyl_index != 0:
                raise InputError("no weyl group on this weight system", field="weyl")
            return tuple(range(self.size))
        return self._permutations[weyl_index]


def sym_n_weight_system(n: int) -> WeightSystem:
    """SL2 acting on binary forms of degree n: weight n - 2j at index j."""
    if n < 1:
        raise InputError(f"n must be positive, got {n}", field="n")
    one = Fraction(1)
    return WeightSystem(
        weights=tuple(QVector.of(n - 2 * j) for j in range(n + 1)),
        ip=InnerProduct.standard(1),
        weyl=(((one,),), ((-one,),)),
        chamber=(QVector.of(1),),
        adjoint_weights=(Fraction(2),),
    )


def mu(x: PointSupport, lam: Cocharacter, ws: WeightSystem) -> Fraction:
    lam.require_nonzero()
    ws.check_support(x)
    return -min(ws.pairing(i, lam) for i in x.indices)


def normalized_mu(
    x: PointSupport, lam: Cocharacter, ws: WeightSystem
) -> Tuple[Fraction, Fraction]:
    """(mu, sign(mu)·mu²/‖λ‖²): the squared form of mu/‖λ‖."""
    value = mu(x, lam, ws)
    sign = (value > 0) - (value < 0)
    return value, sign * value * value / ws.ip.norm_sq(lam.vector)


def semistability(x: PointSupport, ws: WeightSystem) -> Status:
    """Status of the support from the position of 0 in conv of its weights.

    The position is unchanged by the linear Weyl action, so the worst
    status over translates equals the status of x itself.
    """
    return _POSITION_STATUS[origin_position(ws.weights_of(x))]


def chamber_representative(beta: QVector, ws: WeightSystem) -> Tuple[QVector, int]:
    """The lexicographically largest Weyl translate of beta in the closed chamber."""
    best: Optional[Tuple[QVector, int]] = None
    for index, g in enumerate(ws.weyl_elements):
        image = beta.apply(g)
        if not ws.in_chamber(image):
            continue
        if best is None or image > best[0]:
            best = (image, index)
    if best is None:
        raise InconsistencyError(f"no weyl translate of {beta.to_text()} in the chamber")
    return best


def _closest_point(task: Tuple[Tuple[QVector, ...], InnerProduct]) -> QVector:
    points, ip = task
    return min_norm_point(points, ip)[0]


def _weight_subsets(ws: WeightSystem) -> List[Tuple[QVector, ...]]:
    distinct = sorted(set(ws.weights))
    return [
        subset
        for size in range(1, len(distinct) + 1)
        for subset in combinations(distinct, size)
    ]


def index_set(ws: WeightSystem, workers: int = 1) -> FrozenSet[QVector]:
    """All closest points to 0 of hulls of weight subsets, up to Weyl translation.

    Subsets are enumerated over distinct weight values; with workers > 1
    they are spread over a process pool and merged as a set.
    """
    subsets = _weight_subsets(ws)
    tasks = [(subset, ws.ip) for subset in subsets]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            points = list(pool.map(_closest_point, tasks, chunksize=64))
    else:
        points = [_closest_point(task) for task in tasks]
    result = frozenset(chamber_representative(p, ws)[0] for p in points)
    logger.info(
        "index_set.done",
        subsets=len(subsets),
        workers=workers,
        size=len(result),
    )
    return result


def sorted_index_set(betas: Iterable[QVector], ip: InnerProduct) -> List[QVector]:
    return sorted(betas, key=lambda b: (ip.norm_sq(b), b))


def translate_support(
    x: PointSupport, weyl_index: int, ws: WeightSystem
) -> PointSupport:
    ws.check_support(x)
    image = ws.permutation(weyl_index)
    return PointSupport(frozenset(image[i] for i in x.indices))


def membership_Z(x: PointSupport, beta: QVector, ws: WeightSystem) -> bool:
    norm_sq = _require_nonzero_beta(beta, ws)
    return all(ws.ip.pair(w, beta) == norm_sq for w in ws.weights_of(x))


def membership_Y(x: PointSupport, beta: QVector, ws: WeightSystem) -> bool:
    norm_sq = _require_nonzero_beta(beta, ws)
    pairings = [ws.ip.pair(w, beta) for w in ws.weights_of(x)]
    return all(p >= norm_sq for p in pairings) and any(p == norm_sq for p in pairings)


def ybar_indices(beta: QVector, ws: WeightSystem) -> List[int]:
    """Indices of the weights in the closed half-space <w, beta> >= ‖beta‖²."""
    norm_sq = _require_nonzero_beta(beta, ws)
    return [i for i, w in enumerate(ws.weights) if ws.ip.pair(w, beta) >= norm_sq]


def _require_nonzero_beta(beta: QVector, ws: WeightSystem) -> Fraction:
    if beta.dim != ws.dimension:
        raise InputError(f"beta has dimension {beta.dim}, expected {ws.dimension}", field="beta")
    if beta.is_zero():
        raise InputError("beta must be nonzero", field="beta")
    return ws.ip.norm_sq(beta)


@dataclass(frozen=True)
class StratumAssignment:
    beta: QVector
    norm_sq: Fraction
    status: Status
    weyl_index: Optional[int] = None
    translated: Optional[PointSupport] = None
    in_y: Optional[bool] = None
    in_z: Optional[bool] = None

    def to_json(self) -> Dict[str, object]:
        return {
            "beta": self.beta.to_text(),
            "beta_coords": self.beta.to_json(),
            "norm_sq": format_rational(self.norm_sq),
            "status": self.status.value,
            "weyl_index": self.weyl_index,
            "translated": self.translated.to_json() if self.translated else None,
            "in_Y": self.in_y,
            "in_Z": self.in_z,
        }


def stratum_assignment(x: PointSupport, ws: WeightSystem) -> StratumAssignment:
    """The stratum of x with the Weyl translate realising it.

    Raises:
        InconsistencyError: When the translate violates the half-space
            description of its stratum.
    """
    point, _ = min_norm_point(ws.weights_of(x), ws.ip)
    status = semistability(x, ws)
    if point.is_zero():
        if not status.is_semistable:
            raise InconsistencyError("closest point is 0 for an unstable support")
        return StratumAssignment(beta=point, norm_sq=Fraction(0), status=status)
    if status.is_semistable:
        raise InconsistencyError("closest point is nonzero for a semistable support")

    beta, weyl_index = chamber_representative(point, ws)
    translated = translate_support(x, weyl_index, ws) if ws.weyl is not None else x
    in_y = membership_Y(translated, beta, ws)
    if not in_y:
        raise InconsistencyError(
            f"support {translated.to_json()} is not in Y for beta {beta.to_text()}"
        )
    return StratumAssignment(
        beta=beta,
        norm_sq=ws.ip.norm_sq(beta),
        status=status,
        weyl_index=weyl_index if ws.weyl is not None else None,
        translated=translated,
        in_y=in_y,
        in_z=membership_Z(translated, beta, ws),
    )


def stratum_of(x: PointSupport, ws: WeightSystem) -> QVector:
    return stratum_assignment(x, ws).beta


def limit_support(x: PointSupport, lam: Cocharacter, ws: WeightSystem) -> PointSupport:
    """The part of x where <w_i, lambda> is minimal: where lambda(t)·x lands."""
    lam.require_nonzero()
    ws.check_support(x)
    pairings = {i: ws.pairing(i, lam) for i in x.indices}
    lowest = min(pairings.values())
    return PointSupport(frozenset(i for i, p in pairings.items() if p == lowest))


@dataclass(frozen=True)
class ParabolicBlocks:
    blocks: Tuple[int, ...]
    dim_u: int
    dim_levi: int

    @property
    def dim_p(self) -> int:
        return self.dim_u + self.dim_levi

    @property
    def dim_levi_sl(self) -> int:
        return self.dim_levi - 1

    @property
    def dim_p_sl(self) -> int:
        return self.dim_p - 1

    def to_json(self) -> Dict[str, object]:
        return {
            "blocks": list(self.blocks),
            "dim_U": self.dim_u,
            "dim_Levi_gl": self.dim_levi,
            "dim_P_gl": self.dim_p,
            "dim_Levi_sl": self.dim_levi_sl,
            "dim_P_sl": self.dim_p_sl,
        }


def parabolic_blocks(weights: Sequence[RationalLike]) -> ParabolicBlocks:
    if not weights:
        raise InputError("weights must be nonempty", field="weights")
    values = sorted((parse_rational(w) for w in weights), reverse=True)
    blocks: List[int] = []
    previous: Optional[Fraction] = None
    for value in values:
        if value == previous:
            blocks[-1] += 1
        else:
            blocks.append(1)
            previous = value
    dim_u = sum(blocks[i] * blocks[j] for i in range(len(blocks)) for j in range(i + 1, len(blocks)))
    return ParabolicBlocks(tuple(blocks), dim_u, sum(b * b for b in blocks))


def twist(ws: WeightSystem, chi: QVector) -> WeightSystem:
    """Shift every weight by -chi; the result no longer carries Weyl data."""
    if chi.dim != ws.dimension:
        raise InputError(f"character has dimension {chi.dim}", field="chi")
    if chi.is_zero():
        return ws
    return WeightSystem(
        weights=tuple(w - chi for w in ws.weights),
        ip=ws.ip,
        adjoint_weights=ws.adjoint_weights,
    )


def twist_eps(
    ws: WeightSystem,
    chi: QVector,
    lam: Cocharacter,
    indices: Optional[Iterable[int]] = None,
) -> List[EpsWeight]:
    """lambda-pairings of the weights twisted by -(1 + ε)·chi."""
    if chi.dim != ws.dimension:
        raise InputError(f"character has dimension {chi.dim}", field="chi")
    lam.require_nonzero()
    chi_pairing = ws.ip.pair(chi, lam.vector)
    selected = list(indices) if indices is not None else list(range(ws.size))
    if selected:
        ws.check_support(PointSupport(frozenset(selected)))
    return [
        EpsWeight(ws.pairing(i, lam) - chi_pairing, -chi_pairing) for i in selected
    ]


def is_adapted(pairings: Sequence[EpsWeight]) -> bool:
    """Lowest pairing strictly negative, every other distinct value strictly positive."""
    if not pairings:
        raise InputError("pairings must be nonempty", field="pairings")
    distinct = sorted(set(pairings))
    return distinct[0].sign < 0 and all(p.sign > 0 for p in distinct[1:])


def grades_unipotent(adjoint_weights: Optional[Sequence[RationalLike]]) -> bool:
    if adjoint_weights is None:
        raise InputError("adjoint weights are required", field="adjoint_weights")
    return all(parse_rational(a) > 0 for a in adjoint_weights)


def totally_stable(
    x: PointSupport,
    lam: Cocharacter,
    ws: WeightSystem,
    in_uzmin: Callable[[PointSupport], bool],
    zmin_stable: Callable[[PointSupport], bool],
) -> bool:
    """Totally stable: outside U·Z_min with a stable limit in Z_min.

    Raises:
        InputError: When x does not flow to Z_min under lambda.
    """
    lam.require_nonzero()
    ws.check_support(x)
    global_min = min(ws.pairing(i, lam) for i in range(ws.size))
    if min(ws.pairing(i, lam) for i in x.indices) != global_min:
        raise InputError("support does not flow to Z_min", field="support")
    if in_uzmin(x):
        return False
    return zmin_stable(limit_support(x, lam, ws))


@dataclass(frozen=True)
class QuotientHypotheses:
    """Named checks for quotienting the open stratum piece of Y_beta."""

    grading: bool
    adapted: bool
    ss_equals_s: bool
    constant_stabilisers: Optional[bool]
    diagnostics: Tuple[str, ...] = ()

    @property
    def holds(self) -> bool:
        return (
            self.grading
            and self.adapted
            and self.ss_equals_s
            and self.constant_stabilisers is True
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "grading": self.grading,
            "adapted": self.adapted,
            "ss_equals_s": self.ss_equals_s,
            "constant_stabilisers": self.constant_stabilisers,
            "holds": self.holds,
            "diagnostics": list(self.diagnostics),
        }


def _reductive_ss_equals_s(ws: WeightSystem, beta: QVector) -> bool:
    # Z_beta weights twisted by -beta lie in beta-perp; the quotient torus acts there.
    norm_sq = ws.ip.norm_sq(beta)
    shifted = sorted(
        {w - beta for w in ws.weights if ws.ip.pair(w, beta) == norm_sq}
    )
    perp_dim = ws.dimension - 1
    if perp_dim == 0:
        return True
    for size in range(1, len(shifted) + 1):
        for subset in combinations(shifted, size):
            position = origin_position(subset, relative=True)
            if position is HullPosition.BOUNDARY:
                return False
            if position is HullPosition.INTERIOR and affine_rank(subset) < perp_dim:
                return False
    return True


def check_quotient_hypotheses(
    ws: WeightSystem,
    beta: QVector,
    zmin_ustab_dims: Optional[Sequence[int]] = None,
) -> QuotientHypotheses:
    """Evaluate each hypothesis separately; unknown stabiliser data gives None."""
    _require_nonzero_beta(beta, ws)
    diagnostics: List[str] = []

    grading = ws.adjoint_weights is not None and grades_unipotent(ws.adjoint_weights)
    if not grading:
        diagnostics.append("unipotent radical is not positively graded")

    ybar = ybar_indices(beta, ws)
    adapted = is_adapted(twist_eps(ws, beta, Cocharacter(beta), ybar))
    if not adapted:
        diagnostics.append("twisted linearisation on the closure of Y is not adapted")

    ss_equals_s = _reductive_ss_equals_s(ws, beta)
    if not ss_equals_s:
        diagnostics.append("strictly semistable points on Z_beta for the reductive part")

    constant: Optional[bool] = None
    if zmin_ustab_dims is not None:
        constant = all(d == 0 for d in zmin_ustab_dims)
        if not constant:
            diagnostics.append("unipotent stabilisers on Z_min are not all trivial")

    return QuotientHypotheses(grading, adapted, ss_equals_s, constant, tuple(diagnostics))
