"""
Module: schemas
Description: Pydantic models for the JSON input files and the deterministic
             report envelope written by the CLI

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- pydantic: 2.5.2+ - Data validation and serialization
- typing: 3.9+ - Type hints for model fields

Usage:
    from gitstrata.schemas import WeightSystemFile

    model = WeightSystemFile.model_validate({"dimension": 1, "weights": [["1"], ["-1"]]})

Notes:
    - Rationals travel as "p/q" strings or plain integers, never floats
    - Element-level validators keep error locations precise ("weights.0.1")
    - Structural checks live here; mathematical checks live in the engines
"""

from datetime import datetime
from typing import Annotated, Any, Dict, List, Optional, Union

from pydantic import BaseModel, BeforeValidator, ConfigDict, Field

from .errors import InputError
from .rational import parse_rational


def _check_rational(value: Any) -> Union[int, str]:
    if isinstance(value, bool) or not isinstance(value, (int, str)):
        raise ValueError(f"invalid rational {value!r}; use an integer or a \"p/q\" string")
    try:
        parse_rational(value)
    except InputError as exc:
        raise ValueError(str(exc)) from exc
    return value


Rational = Annotated[Union[int, str], BeforeValidator(_check_rational)]


class FileModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class WeightSystemFile(FileModel):
    dimension: int = Field(..., ge=1)
    weights: List[List[Rational]] = Field(..., min_length=1)
    inner_product: Optional[List[List[Rational]]] = None
    weyl: Optional[List[List[List[Rational]]]] = None
    chamber: Optional[List[List[Rational]]] = None
    adjoint_weights: Optional[List[Rational]] = None


class EpsWeightModel(FileModel):
    main: Rational
    eps: Rational = 0


class StratumCellModel(FileModel):
    id: str = Field(..., min_length=1)
    label: str = ""
    lambda_weights: List[EpsWeightModel] = Field(..., min_length=1)
    ustab_dim: int = Field(..., ge=0)
    flows_to: Optional[str] = None
    closed_in: List[str] = Field(default_factory=list)
    exceptional: bool = False


class CellGraphFile(FileModel):
    cells: List[StratumCellModel] = Field(..., min_length=1)
    p_preserves: bool = False


class Length2SheafModel(FileModel):
    label: str = ""
    tau: List[str] = Field(..., min_length=1, description='e.g. ["t+2", "t+1"]')
    is_split: bool
    summands_stable: bool
    hom_dim: Optional[int] = Field(default=None, ge=0)
    gr1: Optional[str] = Field(default=None, description='splitting type, e.g. "2"')
    gr2: Optional[str] = None


class Length2SheafFile(FileModel):
    sheaves: List[Length2SheafModel] = Field(..., min_length=1)


class Report(BaseModel):
    command: str
    inputs: Dict[str, Any]
    inputs_hash: str
    outputs: Dict[str, Any]
    engine_version: str


class CacheEntryInfo(BaseModel):
    key: str
    command: str
    size_bytes: int
    created_at: datetime
