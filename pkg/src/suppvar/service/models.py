"""Request/response schemas for the HTTP service."""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class JobRequest(BaseModel):
    """One job: a tagged input document plus command options."""

    input: Optional[Dict[str, Any]] = None
    options: Dict[str, Any] = Field(default_factory=dict)


class Report(BaseModel):
    command: str
    options: Dict[str, Any]
    input_hash: str
    results: Dict[str, Any]
    timing_ms: float
    warnings: List[str]


class ErrorBody(BaseModel):
    error: str
    code: int  # 1 parse, 2 precondition, 3 internal invariant
