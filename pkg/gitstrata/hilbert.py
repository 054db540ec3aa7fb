"""
Module: hilbert
Description: Hilbert polynomials in Q[t], the Rudakov order, Harder-Narasimhan
             types and the rational vector beta(n, m, tau) they induce

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- fractions: 3.9+ - Exact coefficients
- structlog: 23.2.0+ - Diagnostics on rejected types

Usage:
    from gitstrata.hilbert import HNType, HilbertPolynomial, beta_of_type

    tau = HNType.parse("t+2;t+1")
    beta_of_type(tau, 5, 10).entries
    # ((Fraction(5, 91), 7), (Fraction(-5, 78), 6))

Notes:
    - Coefficients are stored lowest degree first in the monomial basis
    - Text format: "2t+3", "t^2-1/2t+3"; rational coefficients as p/q
    - The caller chooses (n, m); integrality and ordering are checked, never assumed
"""

import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

import structlog

from .errors import HNAxiomError, InputError
from .rational import RationalLike, format_rational, parse_rational

logger = structlog.get_logger(__name__)

_TERM_PATTERN = re.compile(
    r"^(?P<coef>\d+(?:/\d+)?)?\*?(?P<var>t(?:\^(?P<power>\d+))?)?$"
)


@dataclass(frozen=True)
class HilbertPolynomial:
    """A polynomial in t with rational coefficients, lowest degree first."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(Fraction(c) for c in coeffs))

    @classmethod
    def of(cls, *coefficients: RationalLike) -> "HilbertPolynomial":
        return cls(tuple(parse_rational(c) for c in coefficients))

    @classmethod
    def parse(cls, text: str, field: str = "polynomial") -> "HilbertPolynomial":
        compact = text.replace(" ", "").replace("−", "-")
        if not compact:
            raise InputError("empty polynomial", field=field)
        terms = re.findall(r"[+-]?[^+-]+", compact)
        if "".join(terms) != compact:
            raise InputError(f"cannot parse polynomial '{text}'", field=field)
        coeffs: dict = {}
        for term in terms:
            sign = -1 if term[0] == "-" else 1
            body = term.lstrip("+-")
            match = _TERM_PATTERN.match(body)
            if not body or not match or not (match.group("coef") or match.group("var")):
                raise InputError(f"cannot parse term '{term}' in '{text}'", field=field)
            coef = (
                parse_rational(match.group("coef"), field=field)
                if match.group("coef")
                else Fraction(1)
            )
            if match.group("var"):
                power = int(match.group("power")) if match.group("power") else 1
            else:
                power = 0
            coeffs[power] = coeffs.get(power, Fraction(0)) + sign * coef
        degree = max(coeffs)
        return cls(tuple(coeffs.get(i, Fraction(0)) for i in range(degree + 1)))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, t: RationalLike) -> Fraction:
        return evaluate(self, parse_rational(t))

    def __add__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (Fraction(0),) * (size - len(self.coefficients))
        b = other.coefficients + (Fraction(0),) * (size - len(other.coefficients))
        return HilbertPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "HilbertPolynomial":
        return HilbertPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "HilbertPolynomial") -> "HilbertPolynomial":
        return self + (-other)

    def __mul__(
        self, other: Union["HilbertPolynomial", Fraction, int]
    ) -> "HilbertPolynomial":
        if isinstance(other, HilbertPolynomial):
            if self.is_zero() or other.is_zero():
                return HilbertPolynomial(())
            out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
            for i, a in enumerate(self.coefficients):
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
            return HilbertPolynomial(tuple(out))
        factor = Fraction(other)
        return HilbertPolynomial(tuple(factor * c for c in self.coefficients))

    __rmul__ = __mul__

    def reduced(self) -> "HilbertPolynomial":
        """P divided by its leading coefficient."""
        if self.is_zero():
            raise InputError("the zero polynomial has no reduced form")
        return self * (1 / self.leading)

    def require_positive(self, field: str = "polynomial") -> None:
        if self.is_zero() or self.leading <= 0:
            raise InputError(
                f"leading coefficient of '{self}' must be positive", field=field
            )

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts: List[str] = []
        for power in range(self.degree, -1, -1):
            c = self.coefficients[power]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if power == 0:
                body = format_rational(magnitude)
            else:
                var = "t" if power == 1 else f"t^{power}"
                body = var if magnitude == 1 else f"{format_rational(magnitude)}{var}"
            if not parts:
                parts.append(("-" if sign == "-" else "") + body)
            else:
                parts.append(sign + body)
        return "".join(parts)


def evaluate(p: HilbertPolynomial, t: Fraction) -> Fraction:
    """Horner evaluation."""
    value = Fraction(0)
    for c in reversed(p.coefficients):
        value = value * t + c
    return value


class Ordering(str, Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"


def rudakov_compare(p: HilbertPolynomial, q: HilbertPolynomial) -> Ordering:
    """Compare P and Q in the order P(n)/P(m) vs Q(n)/Q(m) for m >> n >> 0.

    A higher degree is smaller. For equal degrees with leading coefficients
    a (of P) and b (of Q) the answer is the sign of the leading coefficient
    of bP - aQ; Equal exactly when P and Q are proportional.
    """
    p.require_positive(field="P")
    q.require_positive(field="Q")
    if p.degree != q.degree:
        return Ordering.LESS if p.degree > q.degree else Ordering.GREATER
    difference = p * q.leading - q * p.leading
    if difference.is_zero():
        return Ordering.EQUAL
    return Ordering.GREATER if difference.leading > 0 else Ordering.LESS


def limit_sign(p: HilbertPolynomial, q: HilbertPolynomial, n: int, m: int) -> int:
    """sign(P(n)Q(m) - Q(n)P(m)) at a concrete pair, for checking the closed form."""
    value = p(n) * q(m) - q(n) * p(m)
    return (value > 0) - (value < 0)


def slope_on_curve(p: HilbertPolynomial, genus: int = 0) -> Fraction:
    """d/r for a degree-one polynomial r·t + d + r(1 - g)."""
    if p.degree != 1:
        raise InputError(f"'{p}' is not the Hilbert polynomial of a curve sheaf")
    r = p.leading
    d = p.coefficients[0] - r * (1 - genus)
    return d / r


@dataclass(frozen=True)
class HNValidation:
    ok: bool
    diagnostics: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def validate_hn_type(
    tau: Sequence[HilbertPolynomial], total: HilbertPolynomial
) -> HNValidation:
    """Check that tau is strictly Rudakov-decreasing and sums to `total`.

    The first violated condition is named in the diagnostics.
    """
    if not tau:
        return HNValidation(False, ("type is empty",))
    for i, entry in enumerate(tau):
        if entry.is_zero() or entry.leading <= 0:
            return HNValidation(
                False, (f"entry {i + 1} '{entry}' has non-positive leading coefficient",)
            )
    for i in range(len(tau) - 1):
        if rudakov_compare(tau[i], tau[i + 1]) is not Ordering.GREATER:
            return HNValidation(
                False,
                (
                    f"ordering: entry {i + 1} '{tau[i]}' is not strictly greater "
                    f"than entry {i + 2} '{tau[i + 1]}'",
                ),
            )
    summed = HilbertPolynomial(())
    for entry in tau:
        summed = summed + entry
    if summed != total:
        return HNValidation(False, (f"sum: entries add to '{summed}', not '{total}'",))
    return HNValidation(True)


@dataclass(frozen=True)
class HNType:
    """A Harder-Narasimhan type: strictly decreasing positive polynomials."""

    entries: Tuple[HilbertPolynomial, ...]

    def __post_init__(self) -> None:
        if not self.entries:
            raise InputError("an HN type needs at least one entry", field="tau")
        verdict = validate_hn_type(self.entries, self.total)
        if not verdict:
            raise InputError(verdict.diagnostics[0], field="tau")

    @classmethod
    def parse(cls, text: str) -> "HNType":
        pieces = [piece for piece in text.split(";") if piece.strip()]
        return cls(
            tuple(
                HilbertPolynomial.parse(piece, field=f"tau.{i}")
                for i, piece in enumerate(pieces)
            )
        )

    @property
    def total(self) -> HilbertPolynomial:
        summed = HilbertPolynomial(())
        for entry in self.entries:
            summed = summed + entry
        return summed

    @property
    def length(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def to_json(self) -> List[str]:
        return [str(entry) for entry in self.entries]


@dataclass(frozen=True)
class BetaVector:
    """Distinct values of beta with their multiplicities, largest first."""

    entries: Tuple[Tuple[Fraction, int], ...]

    @property
    def trace(self) -> Fraction:
        return sum((value * mult for value, mult in self.entries), Fraction(0))

    @property
    def size(self) -> int:
        return sum(mult for _, mult in self.entries)

    @property
    def multiplicities(self) -> Tuple[int, ...]:
        return tuple(mult for _, mult in self.entries)

    def expanded(self) -> List[Fraction]:
        return [value for value, mult in self.entries for _ in range(mult)]

    def to_json(self) -> List[List[Union[str, int]]]:
        return [[format_rational(value), mult] for value, mult in self.entries]


def _positive_integer(value: Fraction, label: str, tau: HNType) -> int:
    if value.denominator != 1 or value <= 0:
        logger.warning("beta_of_type.rejected", value=str(value), label=label)
        raise HNAxiomError(
            f"n not large enough for this type: {label} = {format_rational(value)} "
            f"is not a positive integer for tau = {tau.to_json()}",
            axiom="positivity",
        )
    return value.numerator


def beta_of_type(tau: HNType, n: int, m: int) -> BetaVector:
    """beta_i = P(m)/P(n) - P_i(m)/P_i(n), repeated P_i(n) times.

    Raises:
        InputError: When m <= n.
        HNAxiomError: When some P_i(n), P_i(m) or P(n) is not a positive
            integer, or the result is not strictly decreasing with trace 0.
    """
    if m <= n:
        raise InputError(f"need m > n, got n={n}, m={m}", field="m")
    total = tau.total
    total_n = _positive_integer(total(n), "P(n)", tau)
    total_m = _positive_integer(total(m), "P(m)", tau)
    entries: List[Tuple[Fraction, int]] = []
    for i, entry in enumerate(tau.entries):
        p_n = _positive_integer(entry(n), f"P_{i + 1}(n)", tau)
        p_m = _positive_integer(entry(m), f"P_{i + 1}(m)", tau)
        entries.append((Fraction(total_m, total_n) - Fraction(p_m, p_n), p_n))

    for i in range(len(entries) - 1):
        if entries[i][0] <= entries[i + 1][0]:
            raise HNAxiomError(
                f"beta values not strictly decreasing at entry {i + 1} for "
                f"(n, m) = ({n}, {m}); choose m >> n",
                axiom="ordering",
            )
    vector = BetaVector(tuple(entries))
    if vector.trace != 0 or vector.size != total_n:
        raise HNAxiomError("beta is not trace-free of size P(n)", axiom="additivity")
    return vector
