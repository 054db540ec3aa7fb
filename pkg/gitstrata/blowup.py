"""
Module: blowup
Description: Cell-level simulator for the blow-ups that make unipotent
             stabiliser dimensions constant on the basin of the minimal
             weight space, tracking cases 1 and 2 and the surviving locus

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- structlog: 23.2.0+ - One info event per blow-up step

Usage:
    from gitstrata.blowup import StratumCell, init_state, run

    state = init_state([
        StratumCell("Z", lambda_weights=(EpsWeight.of(0),), ustab_dim=0),
        StratumCell("A", lambda_weights=(EpsWeight.of(0), EpsWeight.of(1)), ustab_dim=0, flows_to="Z"),
        StratumCell("B", lambda_weights=(EpsWeight.of(0), EpsWeight.of(2)), ustab_dim=2, flows_to="Z"),
    ])
    final, trace = run(state)
    final.survivor_ids       # ("A", "Z")

Notes:
    - States are immutable; step() returns a new state
    - A cell with no flows_to is fixed by the one-parameter subgroup
    - closed_in lists the cells whose closure contains the cell
    - The linearisation power r is symbolic, folded into EpsWeight order
"""

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

import structlog

from .errors import AlreadyStableError, InconsistencyError, InputError
from .hkkn import EpsWeight
from .rational import RationalLike, parse_rational

logger = structlog.get_logger(__name__)

CASE_PROPER_TRANSFORM = "case-1"
CASE_NEW_MINIMUM = "case-2"


@dataclass(frozen=True)
class StratumCell:
    id: str
    lambda_weights: Tuple[EpsWeight, ...]
    ustab_dim: int
    flows_to: Optional[str] = None
    closed_in: Tuple[str, ...] = ()
    exceptional: bool = False
    label: str = ""
    synthetic: bool = False

    def __post_init__(self) -> None:
        if not self.id:
            raise InputError("cell id must be nonempty", field="cells")
        if not self.lambda_weights:
            raise InputError("a cell needs at least one weight", field=f"cells.{self.id}")
        if self.ustab_dim < 0:
            raise InputError("ustab_dim must be non-negative", field=f"cells.{self.id}")

    @property
    def target(self) -> str:
        return self.flows_to if self.flows_to is not None else self.id

    @property
    def is_fixed(self) -> bool:
        return self.target == self.id

    @property
    def min_weight(self) -> EpsWeight:
        return min(self.lambda_weights)

    @property
    def max_weight(self) -> EpsWeight:
        return max(self.lambda_weights)

    def to_json(self) -> Dict[str, object]:
        return {
            "id": self.id,
            "label": self.label,
            "lambda_weights": [w.to_json() for w in self.lambda_weights],
            "ustab_dim": self.ustab_dim,
            "flows_to": self.target,
            "closed_in": list(self.closed_in),
            "exceptional": self.exceptional,
            "synthetic": self.synthetic,
        }


@dataclass(frozen=True)
class StepRecord:
    step: int
    case: str
    centre: Tuple[str, ...]
    new_exceptional: Tuple[str, ...]
    d_max_before: int
    d_max_after: int
    zmin_after: Tuple[str, ...]
    r_min: Optional[EpsWeight] = None

    def to_json(self) -> Dict[str, object]:
        return {
            "step": self.step,
            "case": self.case,
            "centre": list(self.centre),
            "new_exceptional": list(self.new_exceptional),
            "d_max_before": self.d_max_before,
            "d_max_after": self.d_max_after,
            "zmin_after": list(self.zmin_after),
            "r_min": self.r_min.to_json() if self.r_min is not None else None,
        }


@dataclass(frozen=True)
class BlowupState:
    cells: Tuple[StratumCell, ...]
    zmin_ids: Tuple[str, ...]
    p_preserves: bool = False
    step_count: int = 0
    trace: Tuple[StepRecord, ...] = ()
    _by_id: Dict[str, StratumCell] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        object.__setattr__(self, "_by_id", {c.id: c for c in self.cells})

    def cell(self, cell_id: str) -> StratumCell:
        return self._by_id[cell_id]

    @property
    def basin(self) -> List[StratumCell]:
        """Cells flowing into Z_min; exceptional cells only when they are Z_min."""
        zmin = set(self.zmin_ids)
        return [
            c
            for c in self.cells
            if c.target in zmin and (not c.exceptional or c.id in zmin)
        ]

    @property
    def d_max(self) -> int:
        return max(c.ustab_dim for c in self.basin)

    @property
    def d_min(self) -> int:
        return min(c.ustab_dim for c in self.basin)

    @property
    def is_constant(self) -> bool:
        return self.d_max == self.d_min

    @property
    def survivors(self) -> List[StratumCell]:
        return [c for c in self.basin if not c.exceptional]

    @property
    def survivor_ids(self) -> Tuple[str, ...]:
        return tuple(sorted(c.id for c in self.survivors))

    def to_json(self) -> Dict[str, object]:
        return {
            "cells": [c.to_json() for c in self.cells],
            "zmin": list(self.zmin_ids),
            "p_preserves": self.p_preserves,
            "d_min": self.d_min,
            "d_max": self.d_max,
            "step_count": self.step_count,
            "survivors": list(self.survivor_ids),
            "trace": [r.to_json() for r in self.trace],
        }


def init_state(cells: Sequence[StratumCell], p_preserves: bool = False) -> BlowupState:
    """Validate the flow graph and locate Z_min.

    Raises:
        InputError: Naming the first offending cell.
    """
    if not cells:
        raise InputError("at least one cell is required", field="cells")
    by_id: Dict[str, StratumCell] = {}
    for c in cells:
        if c.id in by_id:
            raise InputError(f"duplicate cell id '{c.id}'", field=f"cells.{c.id}")
        by_id[c.id] = c

    for c in cells:
        if c.target not in by_id:
            raise InputError(f"flows_to '{c.target}' is not a cell", field=f"cells.{c.id}")
        limit = by_id[c.target]
        if not limit.is_fixed:
            raise InputError(
                f"flows_to '{c.target}' is not a fixed cell", field=f"cells.{c.id}"
            )
        if limit.min_weight > c.min_weight:
            raise InputError(
                f"limit cell '{c.target}' has a larger minimal weight",
                field=f"cells.{c.id}",
            )
        missing = [other for other in c.closed_in if other not in by_id]
        if missing:
            raise InputError(f"closed_in names unknown cell '{missing[0]}'", field=f"cells.{c.id}")
        if p_preserves and c.ustab_dim != limit.ustab_dim:
            raise InputError(
                f"ustab_dim {c.ustab_dim} differs from its limit's {limit.ustab_dim} "
                "on a p_preserves graph",
                field=f"cells.{c.id}",
            )

    fixed = [c for c in cells if c.is_fixed]
    lowest = min(c.min_weight for c in fixed)
    zmin = tuple(sorted(c.id for c in fixed if c.min_weight == lowest))
    state = BlowupState(cells=tuple(cells), zmin_ids=zmin, p_preserves=p_preserves)
    logger.info(
        "blowup.init",
        cells=len(cells),
        zmin=list(zmin),
        d_min=state.d_min,
        d_max=state.d_max,
    )
    return state


def _closure(ids: Iterable[str], cells: Sequence[StratumCell]) -> Set[str]:
    seeds = set(ids)
    return {c.id for c in cells if c.id in seeds or seeds.intersection(c.closed_in)}


def step(state: BlowupState) -> BlowupState:
    """Blow up along the closure of the locus where ustab_dim = d_max.

    Raises:
        AlreadyStableError: When ustab_dim is already constant on the basin.
        InconsistencyError: When d_max fails to drop, or case 2 occurs on a
            graph whose limits preserve stabiliser dimension.
    """
    if state.is_constant:
        raise AlreadyStableError(
            f"ustab_dim is already constant ({state.d_max}) on the basin of Z_min"
        )
    d_max_before = state.d_max
    centre = _closure(
        (c.id for c in state.basin if c.ustab_dim == d_max_before), state.cells
    )

    if not set(state.zmin_ids) <= centre:
        cells, zmin, new_exceptional = _proper_transform(state, centre)
        case, r_min = CASE_PROPER_TRANSFORM, None
    else:
        if state.p_preserves:
            raise InconsistencyError(
                "Z_min lies in the centre on a graph whose limits preserve ustab_dim"
            )
        cells, zmin, new_exceptional, r_min = _new_minimum(state, centre)
        case = CASE_NEW_MINIMUM

    successor = BlowupState(
        cells=tuple(cells),
        zmin_ids=zmin,
        p_preserves=state.p_preserves,
        step_count=state.step_count + 1,
        trace=state.trace,
    )
    d_max_after = successor.d_max
    if d_max_after >= d_max_before:
        raise InconsistencyError(
            f"d_max did not decrease: {d_max_before} -> {d_max_after}"
        )
    record = StepRecord(
        step=successor.step_count,
        case=case,
        centre=tuple(sorted(centre)),
        new_exceptional=tuple(sorted(new_exceptional)),
        d_max_before=d_max_before,
        d_max_after=d_max_after,
        zmin_after=zmin,
        r_min=r_min,
    )
    logger.info(
        "blowup.step",
        step=record.step,
        case=case,
        centre=list(record.centre),
        d_max_before=d_max_before,
        d_max_after=d_max_after,
    )
    return replace(successor, trace=state.trace + (record,))


def _proper_transform(
    state: BlowupState, centre: Set[str]
) -> Tuple[List[StratumCell], Tuple[str, ...], Set[str]]:
    new_exceptional: Set[str] = set()
    cells: List[StratumCell] = []
    for c in state.cells:
        hit = c.id in centre or c.target in centre
        if hit and not c.exceptional:
            new_exceptional.add(c.id)
        cells.append(replace(c, exceptional=True) if hit else c)
    zmin = tuple(z for z in state.zmin_ids if z not in centre)
    return cells, zmin, new_exceptional


def _new_minimum(
    state: BlowupState, centre: Set[str]
) -> Tuple[List[StratumCell], Tuple[str, ...], Set[str], EpsWeight]:
    zmin = set(state.zmin_ids)
    old_minimum = min(state.cell(z).min_weight for z in state.zmin_ids)

    # W0_r: basin cells off Z_min keyed by their highest weight r.
    layers: Dict[EpsWeight, List[StratumCell]] = {}
    for c in state.basin:
        if c.id not in zmin:
            layers.setdefault(c.max_weight, []).append(c)
    surviving = {
        r: [c for c in members if c.id not in centre]
        for r, members in layers.items()
        if any(c.id not in centre for c in members)
    }
    if not surviving:
        raise InconsistencyError("every W0_r lies in the centre")
    r_min = min(surviving)

    new_exceptional: Set[str] = set()
    redirect: Dict[str, str] = {}
    synthetic: List[StratumCell] = []
    for r in sorted(surviving):
        sources = surviving[r]
        new_id = f"E{state.step_count + 1}:r={r.to_text()}"
        synthetic.append(
            StratumCell(
                id=new_id,
                lambda_weights=(EpsWeight(old_minimum.main, r.main),),
                ustab_dim=max(c.ustab_dim for c in sources),
                exceptional=True,
                synthetic=True,
                label=f"exceptional piece over W0_r, r={r.to_text()}",
            )
        )
        new_exceptional.add(new_id)
        for c in sources:
            redirect[c.id] = new_id

    cells: List[StratumCell] = []
    for c in state.cells:
        if c.id in centre:
            if not c.exceptional:
                new_exceptional.add(c.id)
            cells.append(replace(c, exceptional=True))
        elif c.id in redirect:
            cells.append(replace(c, flows_to=redirect[c.id]))
        else:
            cells.append(c)
    cells.extend(synthetic)
    new_zmin = (f"E{state.step_count + 1}:r={r_min.to_text()}",)
    return cells, new_zmin, new_exceptional, r_min


def run(state: BlowupState) -> Tuple[BlowupState, Tuple[StepRecord, ...]]:
    """Step until ustab_dim is constant on the basin of Z_min."""
    step_limit = state.d_max - state.d_min
    current = state
    while not current.is_constant:
        if current.step_count - state.step_count >= step_limit:
            raise InconsistencyError(f"no termination within {step_limit} steps")
        current = step(current)
    logger.info(
        "blowup.run.done",
        steps=current.step_count - state.step_count,
        survivors=list(current.survivor_ids),
    )
    return current, current.trace[len(state.trace):]


def cluster_weights(
    weights: Sequence[RationalLike], centre: Iterable[int]
) -> List[EpsWeight]:
    """Weights after blowing up along the span of the centre coordinates.

    Each weight w_i keeps its main part and is perturbed by ε·w_j for every
    coordinate j off the centre.
    """
    values = [parse_rational(w) for w in weights]
    chosen = set(centre)
    if any(i < 0 or i >= len(values) for i in chosen):
        raise InputError("centre index out of range", field="centre")
    off = [j for j in range(len(values)) if j not in chosen]
    if not off:
        raise InputError("centre must be a proper subset", field="centre")
    return [EpsWeight(w, values[j]) for w in values for j in off]
