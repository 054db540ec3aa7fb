"""
Module: p1_config
Description: Configurations of n unordered points on the projective line as a
             geometric oracle for the binary-form weight system: stratum
             classification, Y/Z and totally stable membership, Mobius frames
             and the affine orbit-equivalence test on the finite points

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- fractions: 3.9+ - Exact point coordinates

Usage:
    from gitstrata.p1_config import Configuration, classify, to_support

    c = Configuration.parse("0,0,0,1")
    classify(c)                 # Fraction(2, 1)
    to_support(c).to_json()     # [0, 1]

Notes:
    - A configuration is the zero set of prod(b_i x - a_i y); the x^(n-j) y^j
      coefficient carries weight n - 2j
    - infinity = [1:0] contributes a factor y, so it kills the LOW j coefficients
    - Points are sorted canonically: affine ascending, infinity last
"""

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InputError
from .hkkn import (
    Cocharacter,
    PointSupport,
    QuotientHypotheses,
    WeightSystem,
    check_quotient_hypotheses,
    sym_n_weight_system,
    totally_stable,
    translate_support,
    ybar_indices,
)
from .rational import QVector, RationalLike, format_rational, parse_rational

INFINITY_TOKENS = ("inf", "∞", "infinity")


@dataclass(frozen=True)
class P1Point:
    """A point of P1: an affine rational value, or infinity when value is None."""

    value: Optional[Fraction] = None

    @classmethod
    def affine(cls, value: RationalLike) -> "P1Point":
        return cls(parse_rational(value))

    @classmethod
    def infinity(cls) -> "P1Point":
        return cls(None)

    @classmethod
    def parse(cls, text: str) -> "P1Point":
        token = text.strip()
        if token.lower() in INFINITY_TOKENS:
            return cls.infinity()
        return cls.affine(token)

    @property
    def is_infinity(self) -> bool:
        return self.value is None

    def sort_key(self) -> Tuple[int, Fraction]:
        return (1, Fraction(0)) if self.value is None else (0, self.value)

    def to_text(self) -> str:
        return "inf" if self.value is None else format_rational(self.value)


@dataclass(frozen=True)
class Configuration:
    points: Tuple[P1Point, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise InputError("a configuration needs at least one point", field="config")
        object.__setattr__(
            self, "points", tuple(sorted(self.points, key=P1Point.sort_key))
        )

    @classmethod
    def parse(cls, text: str) -> "Configuration":
        pieces = [piece for piece in text.split(",") if piece.strip()]
        try:
            return cls(tuple(P1Point.parse(piece) for piece in pieces))
        except InputError as exc:
            raise InputError(f"cannot parse configuration '{text}': {exc}", field="config")

    @classmethod
    def of(cls, *values: object) -> "Configuration":
        points = []
        for v in values:
            if isinstance(v, P1Point):
                points.append(v)
            elif isinstance(v, str) and v.strip().lower() in INFINITY_TOKENS:
                points.append(P1Point.infinity())
            else:
                points.append(P1Point.affine(v))  # type: ignore[arg-type]
        return cls(tuple(points))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def infinity_count(self) -> int:
        return sum(1 for p in self.points if p.is_infinity)

    @property
    def affine_values(self) -> List[Fraction]:
        return [p.value for p in self.points if p.value is not None]

    def multiplicities(self) -> Dict[P1Point, int]:
        return dict(Counter(self.points))

    def apply(self, m: "Mobius") -> "Configuration":
        return Configuration(tuple(m.apply(p) for p in self.points))

    def to_text(self) -> str:
        return ",".join(p.to_text() for p in self.points)


@dataclass(frozen=True)
class Mobius:
    """z -> (az + b) / (cz + d) with ad - bc != 0."""

    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c == 0:
            raise InputError("Mobius map is singular", field="mobius")

    @classmethod
    def of(cls, a: RationalLike, b: RationalLike, c: RationalLike, d: RationalLike) -> "Mobius":
        return cls(*(parse_rational(v) for v in (a, b, c, d)))

    @classmethod
    def identity(cls) -> "Mobius":
        return cls.of(1, 0, 0, 1)

    @classmethod
    def affine(cls, scale: RationalLike, shift: RationalLike) -> "Mobius":
        return cls.of(scale, shift, 0, 1)

    @classmethod
    def inversion(cls) -> "Mobius":
        """z -> 1/z, the Weyl flip exchanging 0 and infinity."""
        return cls.of(0, 1, 1, 0)

    def apply(self, p: P1Point) -> P1Point:
        if p.value is None:
            return P1Point.infinity() if self.c == 0 else P1Point(self.a / self.c)
        denominator = self.c * p.value + self.d
        if denominator == 0:
            return P1Point.infinity()
        return P1Point((self.a * p.value + self.b) / denominator)

    def compose(self, other: "Mobius") -> "Mobius":
        """self after other."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def fixes_infinity(self) -> bool:
        return self.c == 0


class YZMembership(str, Enum):
    IN_Z = "InZ"
    IN_Y_ONLY = "InY_only"
    NEITHER = "Neither"


def binary_form(c: Configuration) -> List[Fraction]:
    """Coefficients of prod(x - a y) · y^(#inf), indexed by the power of y."""
    coeffs = [Fraction(1)]
    for p in c.points:
        shifted = [Fraction(0)] + coeffs
        if p.value is None:
            coeffs = shifted
        else:
            coeffs = [
                (coeffs[j] if j < len(coeffs) else 0) - p.value * shifted[j]
                for j in range(len(shifted))
            ]
    return coeffs


def to_support(c: Configuration) -> PointSupport:
    coeffs = binary_form(c)
    return PointSupport(frozenset(j for j, a in enumerate(coeffs) if a != 0))


def weight_system_for(c: Configuration) -> WeightSystem:
    return sym_n_weight_system(c.n)


def classify(c: Configuration) -> Fraction:
    """0 if no point has more than half the multiplicity, else 2M - n."""
    heaviest = max(c.multiplicities().values())
    if 2 * heaviest <= c.n:
        return Fraction(0)
    return Fraction(2 * heaviest - c.n)


def _check_range(c: Configuration, i: int) -> None:
    if not (c.n < 2 * i and i <= c.n):
        raise InputError(f"need n/2 < i <= n, got n={c.n}, i={i}", field="i")


def membership_YZ(c: Configuration, i: int) -> YZMembership:
    _check_range(c, i)
    if c.infinity_count != i:
        return YZMembership.NEITHER
    if all(v == 0 for v in c.affine_values):
        return YZMembership.IN_Z
    return YZMembership.IN_Y_ONLY


def membership_ts(c: Configuration, i: int) -> bool:
    """Exactly i points at infinity and the finite points not all equal."""
    _check_range(c, i)
    if c.infinity_count != i:
        return False
    return len(set(c.affine_values)) > 1


def totally_stable_via_engine(c: Configuration, i: int) -> bool:
    """membership_ts decided by the engine's totally_stable with geometric oracles."""
    _check_range(c, i)
    if c.infinity_count != i:
        return False
    ws = weight_system_for(c)
    beta = QVector.of(2 * i - c.n)
    ybar = ybar_indices(beta, ws)
    position = {j: k for k, j in enumerate(ybar)}
    flipped = translate_support(to_support(c), 1, ws)
    support = PointSupport(frozenset(position[j] for j in flipped.indices))
    closure = WeightSystem(
        weights=tuple(ws.weights[j] for j in ybar),
        ip=ws.ip,
        adjoint_weights=ws.adjoint_weights,
    )
    values = c.affine_values
    return totally_stable(
        support,
        Cocharacter(beta),
        closure,
        in_uzmin=lambda _: len(set(values)) <= 1,
        zmin_stable=lambda _: True,
    )


def _centred(values: Sequence[Fraction]) -> List[Fraction]:
    mean = sum(values, Fraction(0)) / len(values)
    return [v - mean for v in values]


def _elementary_symmetric(values: Sequence[Fraction]) -> List[Fraction]:
    """[e_0, e_1, ..., e_s]."""
    e = [Fraction(1)] + [Fraction(0)] * len(values)
    for v in values:
        for k in range(len(values), 0, -1):
            e[k] += v * e[k - 1]
    return e


def _bezout(exponents: Sequence[int]) -> Tuple[int, List[int]]:
    """g = gcd(exponents) with integer coefficients n_k such that sum n_k k = g."""
    g, coefficients = exponents[0], [1]
    for k in exponents[1:]:
        old_r, r, old_s, s, old_t, t = g, k, 1, 0, 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s = s, old_s - q * s
            old_t, t = t, old_t - q * t
        g = old_r
        coefficients = [old_s * c for c in coefficients] + [old_t]
    return g, coefficients


def _require_affine(c: Configuration, label: str) -> List[Fraction]:
    if c.infinity_count:
        raise InputError("configuration must be fully affine", field=label)
    values = c.affine_values
    if len(set(values)) <= 1:
        raise InputError("all points coincide; not in the totally stable locus", field=label)
    return values


def affine_equivalent(c1: Configuration, c2: Configuration) -> bool:
    """Is there z -> az + b over the algebraic closure carrying c1 to c2?

    After centring, e_k(c2) = a^k e_k(c1) for all k. The cross-power
    identities are a necessary filter; the exponent gcd decides.
    """
    v1 = _require_affine(c1, "c1")
    v2 = _require_affine(c2, "c2")
    if len(v1) != len(v2):
        raise InputError(f"sizes differ: {len(v1)} vs {len(v2)}", field="c2")
    e1 = _elementary_symmetric(_centred(v1))
    e2 = _elementary_symmetric(_centred(v2))
    support = [k for k in range(1, len(e1)) if e1[k] != 0]
    k0 = support[0]
    if e2[k0] == 0:
        return False
    for k in range(1, len(e1)):
        if e2[k] ** k0 * e1[k0] ** k != e1[k] ** k0 * e2[k0] ** k:
            return False

    if any(e2[k] != 0 for k in range(1, len(e1)) if k not in support):
        return False
    ratios = {k: e2[k] / e1[k] for k in support}
    if any(r == 0 for r in ratios.values()):
        return False
    g, coefficients = _bezout(support)
    rho = Fraction(1)
    for k, n_k in zip(support, coefficients):
        rho *= ratios[k] ** n_k
    return all(ratios[k] == rho ** (k // g) for k in support)


def frame_map(c: Configuration) -> Mobius:
    """Send the heaviest point to infinity, then a remaining finite point to 0."""
    multiplicities = c.multiplicities()
    heaviest = min(c.points, key=lambda p: (-multiplicities[p], p.sort_key()))
    if heaviest.is_infinity:
        to_infinity = Mobius.identity()
    else:
        assert heaviest.value is not None
        to_infinity = Mobius.of(0, 1, 1, -heaviest.value)
    moved = c.apply(to_infinity)
    finite = moved.affine_values
    if not finite:
        return to_infinity
    return Mobius.affine(1, -finite[0]).compose(to_infinity)


def optimal_frame(c: Configuration) -> Configuration:
    return c.apply(frame_map(c))


def unipotent_stabiliser_dim(c: Configuration) -> int:
    """Dimension of the stabiliser in the translations z -> z + b."""
    return 1 if c.infinity_count == c.n else 0


def quotient_hypotheses(n: int, i: int) -> QuotientHypotheses:
    """The quotient hypotheses for the stratum where i of n points coincide."""
    if not (n < 2 * i and i <= n):
        raise InputError(f"need n/2 < i <= n, got n={n}, i={i}", field="i")
    ws = sym_n_weight_system(n)
    zmin_point = Configuration.of(*(["inf"] * i + [0] * (n - i)))
    return check_quotient_hypotheses(
        ws,
        QVector.of(2 * i - n),
        zmin_ustab_dims=[unipotent_stabiliser_dim(zmin_point)],
    )
