"""
Module: rational
Description: Exact rational value types for the engines: parsing and canonical
             formatting of rationals, QVector, InnerProduct and exact linear
             solves over the rationals

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- fractions: 3.9+ - Arbitrary precision rationals kept in lowest terms

Usage:
    from gitstrata.rational import InnerProduct, QVector, parse_rational

    v = QVector.of("1/2", 3)
    ip = InnerProduct.standard(2)
    ip.norm_sq(v)           # Fraction(37, 4)
    format_rational(parse_rational("6/4"))   # "3/2"

Notes:
    - No floating point anywhere; floats are rejected by the parser
    - Inner products are checked symmetric positive-definite on construction
    - QVector ordering is lexicographic on coordinates
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from .errors import InputError

RationalLike = Union[int, str, Fraction]
Matrix = Tuple[Tuple[Fraction, ...], ...]

_RATIONAL_PATTERN = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(value: RationalLike, field: Optional[str] = None) -> Fraction:
    """Parse an int, Fraction or "p/q" string into a Fraction.

    Raises:
        InputError: On floats, malformed text or a zero denominator.
    """
    if isinstance(value, bool):
        raise InputError(f"invalid rational {value!r}", field=field)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip().replace("−", "-")
        if not _RATIONAL_PATTERN.match(text):
            raise InputError(f"invalid rational '{value}'", field=field)
        numerator, _, denominator = text.partition("/")
        if denominator and int(denominator) == 0:
            raise InputError(f"invalid rational '{value}'", field=field)
        return Fraction(int(numerator), int(denominator) if denominator else 1)
    raise InputError(f"invalid rational {value!r}", field=field)


def format_rational(value: Fraction) -> str:
    """Canonical text form: "p" for integers, "p/q" otherwise."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class QVector:
    """An exact rational vector; ordered lexicographically."""

    coords: Tuple[Fraction, ...]

    @classmethod
    def of(cls, *values: RationalLike) -> "QVector":
        return cls(tuple(parse_rational(v) for v in values))

    @classmethod
    def zero(cls, dimension: int) -> "QVector":
        return cls((Fraction(0),) * dimension)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __len__(self) -> int:
        return len(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def _check(self, other: "QVector") -> None:
        if other.dim != self.dim:
            raise InputError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other: "QVector") -> "QVector":
        self._check(other)
        return QVector(tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "QVector":
        return QVector(tuple(-a for a in self.coords))

    def scale(self, factor: RationalLike) -> "QVector":
        c = parse_rational(factor)
        return QVector(tuple(c * a for a in self.coords))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def apply(self, matrix: Matrix) -> "QVector":
        """Return matrix · self."""
        if len(matrix) != self.dim or any(len(row) != self.dim for row in matrix):
            raise InputError("matrix does not match vector dimension")
        return QVector(
            tuple(sum((m * a for m, a in zip(row, self.coords)), Fraction(0))
                  for row in matrix)
        )

    def to_text(self) -> str:
        """Text form: "2" in dimension one, "(1/2,1/2)" otherwise."""
        if self.dim == 1:
            return format_rational(self.coords[0])
        return "(" + ",".join(format_rational(a) for a in self.coords) + ")"

    def to_json(self) -> List[str]:
        return [format_rational(a) for a in self.coords]


def parse_vector(values: Sequence[RationalLike], field: Optional[str] = None) -> QVector:
    return QVector(
        tuple(
            parse_rational(v, field=f"{field}.{i}" if field else str(i))
            for i, v in enumerate(values)
        )
    )


def parse_matrix(
    rows: Sequence[Sequence[RationalLike]], field: Optional[str] = None
) -> Matrix:
    return tuple(parse_vector(row, f"{field}.{i}" if field else str(i)).coords
                 for i, row in enumerate(rows))


def identity_matrix(dimension: int) -> Matrix:
    return tuple(
        tuple(Fraction(1 if i == j else 0) for j in range(dimension))
        for i in range(dimension)
    )


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    columns = list(zip(*b))
    return tuple(
        tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in columns)
        for row in a
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


@dataclass(frozen=True)
class InnerProduct:
    """A symmetric positive-definite rational bilinear form."""

    matrix: Matrix

    def __post_init__(self) -> None:
        k = len(self.matrix)
        if k == 0 or any(len(row) != k for row in self.matrix):
            raise InputError("inner product matrix must be square and nonempty")
        for i in range(k):
            for j in range(i + 1, k):
                if self.matrix[i][j] != self.matrix[j][i]:
                    raise InputError(f"inner product not symmetric at ({i},{j})")
        if not _is_positive_definite(self.matrix):
            raise InputError("inner product is not positive-definite")

    @classmethod
    def standard(cls, dimension: int) -> "InnerProduct":
        return cls(identity_matrix(dimension))

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def pair(self, u: QVector, v: QVector) -> Fraction:
        if u.dim != self.dim or v.dim != self.dim:
            raise InputError(
                f"dimension mismatch: form has {self.dim}, got {u.dim} and {v.dim}"
            )
        total = Fraction(0)
        for i, ui in enumerate(u.coords):
            if ui == 0:
                continue
            row = self.matrix[i]
            total += ui * sum((g * vj for g, vj in zip(row, v.coords)), Fraction(0))
        return total

    def norm_sq(self, v: QVector) -> Fraction:
        return self.pair(v, v)

    def preserved_by(self, g: Matrix) -> bool:
        """True iff gᵀ G g = G, i.e. g is orthogonal for this form."""
        return mat_mul(mat_mul(transpose(g), self.matrix), g) == self.matrix


def _is_positive_definite(matrix: Matrix) -> bool:
    # Symmetric elimination without pivoting: positive-definite iff every pivot > 0.
    a = [list(row) for row in matrix]
    k = len(a)
    for p in range(k):
        pivot = a[p][p]
        if pivot <= 0:
            return False
        for i in range(p + 1, k):
            factor = a[i][p] / pivot
            if factor == 0:
                continue
            for j in range(p, k):
                a[i][j] -= factor * a[p][j]
    return True


def solve_linear(
    a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]
) -> Optional[List[Fraction]]:
    """Solve a square system exactly; None when it is singular."""
    n = len(a)
    rows = [list(a[i]) + [b[i]] for i in range(n)]
    for col in range(n):
        pivot_row = next((r for r in range(col, n) if rows[r][col] != 0), None)
        if pivot_row is None:
            return None
        rows[col], rows[pivot_row] = rows[pivot_row], rows[col]
        pivot = rows[col][col]
        rows[col] = [x / pivot for x in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[col])]
    return [rows[i][n] for i in range(n)]


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    """Exact row rank."""
    work = [list(r) for r in rows]
    if not work:
        return 0
    width = len(work[0])
    r = 0
    for col in range(width):
        pivot_row = next((i for i in range(r, len(work)) if work[i][col] != 0), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        for i in range(r + 1, len(work)):
            if work[i][col] != 0:
                factor = work[i][col] / work[r][col]
                work[i] = [x - factor * y for x, y in zip(work[i], work[r])]
        r += 1
        if r == len(work):
            break
    return r


def affine_rank(points: Sequence[QVector]) -> int:
    """Dimension of the affine span of the points."""
    if not points:
        return -1
    base = points[0]
    return rank([(p - base).coords for p in points[1:]])
