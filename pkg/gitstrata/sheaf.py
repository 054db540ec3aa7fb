"""
Module: sheaf
Description: Split bundles on P1 as the computable sheaf oracle, HN filtrations
             and types, Hom/End dimensions, abstract length-2 sheaf records
             and the bridge into the blow-up simulator

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- math: 3.9+ - gcd for coprimality
- structlog: 23.2.0+ - Cell-graph construction summary

Usage:
    from gitstrata.sheaf import SplitBundle, hn_filtration, hom_dim

    b = SplitBundle.parse("2,0,0")
    hn_filtration(b).tau.to_json()                          # ["t+3", "2t+2"]
    hom_dim(SplitBundle.parse("0"), SplitBundle.parse("2"))  # 3

Notes:
    - P(O(a), t) = t + a + 1 and hom(O(b), O(a)) = max(0, a - b + 1)
    - HN extensions split on P1, so concrete records are always split; the
      non-split story lives in abstract records with caller-supplied hom_dim
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

import structlog

from .blowup import BlowupState, StratumCell, init_state
from .errors import InputError
from .hilbert import BetaVector, HilbertPolynomial, HNType, beta_of_type
from .hkkn import EpsWeight

logger = structlog.get_logger(__name__)


@dataclass(frozen=True)
class SplitBundle:
    """E = O(a_1) + ... + O(a_r), degrees kept in descending order."""

    degrees: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.degrees:
            raise InputError("a split bundle needs at least one summand", field="degrees")
        object.__setattr__(self, "degrees", tuple(sorted(self.degrees, reverse=True)))

    @classmethod
    def of(cls, *degrees: int) -> "SplitBundle":
        return cls(tuple(degrees))

    @classmethod
    def parse(cls, text: str) -> "SplitBundle":
        try:
            degrees = [int(piece) for piece in text.split(",") if piece.strip()]
        except ValueError:
            raise InputError(f"cannot parse split bundle '{text}'", field="degrees")
        return cls(tuple(degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def degree(self) -> int:
        return sum(self.degrees)

    def is_semistable(self) -> bool:
        return len(set(self.degrees)) == 1

    def is_stable(self) -> bool:
        return self.rank == 1

    def to_text(self) -> str:
        return ",".join(str(a) for a in self.degrees)


def hilbert_poly(b: SplitBundle) -> HilbertPolynomial:
    return HilbertPolynomial.of(b.degree + b.rank, b.rank)


@dataclass(frozen=True)
class HNFiltration:
    pieces: Tuple[Tuple[int, SplitBundle], ...]
    tau: HNType

    @property
    def length(self) -> int:
        return len(self.pieces)

    def to_json(self) -> Dict[str, object]:
        return {
            "pieces": [[slope, piece.to_text()] for slope, piece in self.pieces],
            "tau": self.tau.to_json(),
        }


def hn_filtration(b: SplitBundle) -> HNFiltration:
    groups: Dict[int, int] = {}
    for a in b.degrees:
        groups[a] = groups.get(a, 0) + 1
    pieces = tuple(
        (a, SplitBundle((a,) * count))
        for a, count in sorted(groups.items(), reverse=True)
    )
    tau = HNType(tuple(hilbert_poly(piece) for _, piece in pieces))
    if tau.total != hilbert_poly(b):
        raise InputError(f"HN pieces of {b.to_text()} do not add up", field="degrees")
    return HNFiltration(pieces, tau)


def hom_dim(source: SplitBundle, target: SplitBundle) -> int:
    """dim Hom(source, target)."""
    return sum(max(0, a - b + 1) for b in source.degrees for a in target.degrees)


def end_dim(b: SplitBundle) -> int:
    return hom_dim(b, b)


def beta_of_bundle(b: SplitBundle, n: int, m: int) -> BetaVector:
    return beta_of_type(hn_filtration(b).tau, n, m)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise InputError(f"{what} {value} is not an integer", field="tau")
    return value.numerator


def is_coprime_on_p1(tau: HNType) -> bool:
    """Every HN entry admits only stable semistable sheaves."""
    for entry in tau.entries:
        if entry.degree == 0:
            if _integral(entry.leading, "length") != 1:
                return False
        elif entry.degree == 1:
            r = _integral(entry.leading, "rank")
            d = _integral(entry.coefficients[0], "constant term") - r
            if gcd(r, d) != 1:
                return False
        else:
            raise InputError(f"'{entry}' is not a sheaf polynomial on a curve", field="tau")
    return True


@dataclass(frozen=True)
class Length2Sheaf:
    """Discrete data of a sheaf with a two-step HN filtration F_1 in F."""

    tau: HNType
    is_split: bool
    summands_stable: bool
    hom_dim: Optional[int] = None
    gr1: Optional[SplitBundle] = None
    gr2: Optional[SplitBundle] = None
    label: str = ""

    def __post_init__(self) -> None:
        if self.hom_dim is not None and self.hom_dim < 0:
            raise InputError("hom_dim must be non-negative", field="hom_dim")
        if (self.gr1 is None) != (self.gr2 is None):
            raise InputError("give both graded pieces or neither", field="gr")
        if self.gr1 is not None and self.gr2 is not None:
            if self.tau.length != 2:
                raise InputError("concrete pieces need a length-2 type", field="tau")
            pieces = (hilbert_poly(self.gr1), hilbert_poly(self.gr2))
            if pieces != self.tau.entries:
                raise InputError("graded pieces do not match the type", field="gr")
            expected = hom_dim(self.gr2, self.gr1)
            if self.hom_dim is not None and self.hom_dim != expected:
                raise InputError(
                    f"hom_dim {self.hom_dim} disagrees with the pieces ({expected})",
                    field="hom_dim",
                )

    @classmethod
    def from_split_bundle(cls, b: SplitBundle, label: str = "") -> "Length2Sheaf":
        filtration = hn_filtration(b)
        if filtration.length != 2:
            raise InputError(
                f"{b.to_text()} has HN length {filtration.length}, not 2", field="degrees"
            )
        (_, gr1), (_, gr2) = filtration.pieces
        return cls(
            tau=filtration.tau,
            is_split=True,
            summands_stable=gr1.is_stable() and gr2.is_stable(),
            hom_dim=hom_dim(gr2, gr1),
            gr1=gr1,
            gr2=gr2,
            label=label or b.to_text(),
        )

    def to_json(self) -> Dict[str, object]:
        return {
            "label": self.label,
            "tau": self.tau.to_json(),
            "is_split": self.is_split,
            "summands_stable": self.summands_stable,
            "hom_dim": self.hom_dim,
            "gr1": self.gr1.to_text() if self.gr1 else None,
            "gr2": self.gr2.to_text() if self.gr2 else None,
        }


def _require_length_2(s: Length2Sheaf) -> None:
    if s.tau.length != 2:
        raise InputError(f"HN length is {s.tau.length}, expected 2", field="tau")


def is_tau_stable(s: Length2Sheaf) -> bool:
    _require_length_2(s)
    return not s.is_split and s.summands_stable


def is_indecomposable(s: Length2Sheaf) -> bool:
    _require_length_2(s)
    return not s.is_split


def stab_dims(s: Length2Sheaf) -> Tuple[int, Optional[int]]:
    """(dim of the unipotent stabiliser, dim End(F) when the sheaf is tau-stable)."""
    if s.hom_dim is None:
        raise InputError("hom_dim is required", field="hom_dim")
    return s.hom_dim, (s.hom_dim + 1 if is_tau_stable(s) else None)


SPLIT_WEIGHTS = (EpsWeight.of(0, -1),)
NONSPLIT_WEIGHTS = (EpsWeight.of(0, -1), EpsWeight.of(1, -1))


def to_blowup_cells(records: Sequence[Length2Sheaf]) -> BlowupState:
    """One cell per (hom_dim, split) class; non-split cells flow to their grading."""
    if not records:
        raise InputError("at least one sheaf record is required", field="sheaves")
    tau = records[0].tau
    dims: Dict[int, bool] = {}
    for i, s in enumerate(records):
        if s.tau != tau:
            raise InputError("records do not share a type", field=f"sheaves.{i}.tau")
        if s.hom_dim is None:
            raise InputError("hom_dim is required", field=f"sheaves.{i}.hom_dim")
        dims[s.hom_dim] = dims.get(s.hom_dim, False) or not s.is_split

    cells: List[StratumCell] = []
    for d in sorted(dims):
        split_id = f"split:d={d}"
        cells.append(
            StratumCell(split_id, SPLIT_WEIGHTS, ustab_dim=d, label=f"gr F, hom={d}")
        )
        if dims[d]:
            cells.append(
                StratumCell(
                    f"nonsplit:d={d}",
                    NONSPLIT_WEIGHTS,
                    ustab_dim=d,
                    flows_to=split_id,
                    label=f"F not split, hom={d}",
                )
            )
    logger.info("sheaf.cells", records=len(records), cells=len(cells), dims=sorted(dims))
    return init_state(cells, p_preserves=True)
