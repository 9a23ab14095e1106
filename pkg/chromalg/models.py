"""Report models. Every CLI response is one of these, dumped as JSON."""

import json
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Counterexample(BaseModel):
    graph: str
    expected: Any = None
    actual: Any = None
    detail: Optional[str] = None


class CheckReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    check: str
    n: Optional[int] = None
    passed: bool = Field(alias="pass")
    graphs_checked: int = 0
    counterexamples: List[Counterexample] = Field(default_factory=list)
    notes: Dict[str, Any] = Field(default_factory=dict)


class SpanReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    check: str
    graph_class: str
    n: int
    passed: bool = Field(alias="pass")
    graphs: int
    rank: int
    expected_rank: int
    coloops: Optional[List[str]] = None
    details: Dict[str, Any] = Field(default_factory=dict)


class RelationReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    relation: str
    parameters: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(alias="pass")
    results: List[Dict[str, Any]] = Field(default_factory=list)


class FamilyBasisReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    family: List[str]
    n: int
    passed: bool = Field(alias="pass")
    all_trees: bool
    integral: bool
    unitriangular: bool
    inverse_integral: bool
    witness: Optional[str] = None
    st_n_expansion: Dict[str, str] = Field(default_factory=dict)


class VerifyEntry(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    statement: str
    passed: bool = Field(alias="pass")
    detail: Optional[str] = None
    seconds: Optional[float] = None


class VerifyAllReport(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    passed: bool = Field(alias="pass")
    fault: Optional[str] = None
    entries: List[VerifyEntry] = Field(default_factory=list)


def dump(model: BaseModel) -> str:
    """Deterministic JSON text for a report."""
    return json.dumps(model.model_dump(by_alias=True, exclude_none=True), sort_keys=True)
