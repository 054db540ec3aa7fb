"""
Module: data_loader
Description: Load JSON input files into engine objects, turning pydantic and
             JSON failures into InputError with a dotted field path

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pydantic: 2.5.2+ - Structural validation of the input files
- json: 3.9+ - JSON file parsing

Usage:
    from gitstrata.data_loader import load_weight_system

    ws = load_weight_system("data/examples/weight_systems/sym4.json")

    # Catalogue the bundled examples by kind
    files = discover_data_files("data/examples")

Notes:
    - Every loader returns domain objects; raw dicts never leave this module
    - Missing files and malformed JSON are input errors, not crashes
"""

import glob
import json
import os
from typing import Any, Callable, Dict, List, Optional, Type, TypeVar

import structlog
from pydantic import BaseModel, ValidationError

from .blowup import BlowupState, StratumCell, init_state
from .errors import InputError
from .hilbert import HilbertPolynomial, HNType
from .hkkn import EpsWeight, WeightSystem
from .rational import InnerProduct, parse_matrix, parse_rational, parse_vector
from .schemas import (
    CellGraphFile,
    Length2SheafFile,
    Length2SheafModel,
    WeightSystemFile,
)
from .sheaf import Length2Sheaf, SplitBundle

logger = structlog.get_logger(__name__)

# Default data directory
DEFAULT_DATA_DIR = "data/examples"

ModelT = TypeVar("ModelT", bound=BaseModel)
T = TypeVar("T")


def read_json(file_path: str) -> Any:
    if not os.path.exists(file_path):
        raise InputError(f"file not found: {file_path}", field="input")
    try:
        with open(file_path, "r", encoding="utf-8") as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(
            f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}", field="input"
        )


def validate_model(model: Type[ModelT], data: Any) -> ModelT:
    """Validate raw data, reporting the first failure as field: message."""
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        path = ".".join(str(part) for part in first["loc"]) or "input"
        message = str(first.get("ctx", {}).get("error", first["msg"]))
        logger.warning("input.rejected", model=model.__name__, field=path, error=message)
        raise InputError(message, field=path)


def weight_system_from_model(model: WeightSystemFile) -> WeightSystem:
    k = model.dimension
    for i, row in enumerate(model.weights):
        if len(row) != k:
            raise InputError(f"expected {k} coordinates, got {len(row)}", field=f"weights.{i}")
    weights = tuple(parse_vector(row, f"weights.{i}") for i, row in enumerate(model.weights))

    if model.inner_product is None:
        ip = InnerProduct.standard(k)
    else:
        matrix = parse_matrix(model.inner_product, "inner_product")
        if len(matrix) != k:
            raise InputError(f"expected a {k}x{k} matrix", field="inner_product")
        ip = _wrap(lambda: InnerProduct(matrix), "inner_product")

    weyl = (
        tuple(parse_matrix(g, f"weyl.{i}") for i, g in enumerate(model.weyl))
        if model.weyl is not None
        else None
    )
    chamber = (
        tuple(parse_vector(c, f"chamber.{i}") for i, c in enumerate(model.chamber))
        if model.chamber is not None
        else None
    )
    adjoint = (
        tuple(parse_rational(a, f"adjoint_weights.{i}") for i, a in enumerate(model.adjoint_weights))
        if model.adjoint_weights is not None
        else None
    )
    return WeightSystem(
        weights=weights, ip=ip, weyl=weyl, chamber=chamber, adjoint_weights=adjoint
    )


def _wrap(build: Callable[[], T], field: str) -> T:
    try:
        return build()
    except InputError as e:
        if e.field and e.field.startswith(field):
            raise
        raise InputError(e.message, field=field)


def load_weight_system(file_path: str) -> WeightSystem:
    return weight_system_from_model(validate_model(WeightSystemFile, read_json(file_path)))


def cell_graph_from_model(model: CellGraphFile) -> BlowupState:
    cells = [
        StratumCell(
            id=c.id,
            label=c.label,
            lambda_weights=tuple(
                EpsWeight(
                    parse_rational(w.main, f"cells.{i}.lambda_weights.{j}.main"),
                    parse_rational(w.eps, f"cells.{i}.lambda_weights.{j}.eps"),
                )
                for j, w in enumerate(c.lambda_weights)
            ),
            ustab_dim=c.ustab_dim,
            flows_to=c.flows_to,
            closed_in=tuple(c.closed_in),
            exceptional=c.exceptional,
        )
        for i, c in enumerate(model.cells)
    ]
    return init_state(cells, p_preserves=model.p_preserves)


def load_cell_graph(file_path: str) -> BlowupState:
    return cell_graph_from_model(validate_model(CellGraphFile, read_json(file_path)))


def sheaf_from_model(model: Length2SheafModel, index: int = 0) -> Length2Sheaf:
    prefix = f"sheaves.{index}"
    tau = _wrap(
        lambda: HNType(
            tuple(
                HilbertPolynomial.parse(p, field=f"{prefix}.tau.{j}")
                for j, p in enumerate(model.tau)
            )
        ),
        f"{prefix}.tau",
    )
    gr1 = SplitBundle.parse(model.gr1) if model.gr1 is not None else None
    gr2 = SplitBundle.parse(model.gr2) if model.gr2 is not None else None
    return _wrap(
        lambda: Length2Sheaf(
            tau=tau,
            is_split=model.is_split,
            summands_stable=model.summands_stable,
            hom_dim=model.hom_dim,
            gr1=gr1,
            gr2=gr2,
            label=model.label,
        ),
        prefix,
    )


def load_sheaves(file_path: str) -> List[Length2Sheaf]:
    model = validate_model(Length2SheafFile, read_json(file_path))
    return [sheaf_from_model(s, i) for i, s in enumerate(model.sheaves)]


def discover_data_files(data_dir: Optional[str] = None) -> Dict[str, List[str]]:
    """Catalogue example files by kind (the name of their directory).

    Returns an empty dict if the directory doesn't exist.
    """
    if data_dir is None:
        data_dir = DEFAULT_DATA_DIR

    if not os.path.exists(data_dir):
        return {}

    discovered: Dict[str, List[str]] = {}
    for file_path in sorted(glob.glob(os.path.join(data_dir, "*", "*.json"))):
        kind = os.path.basename(os.path.dirname(file_path))
        discovered.setdefault(kind, []).append(file_path)
    return discovered
