"""
Pydantic models for verification reports.

A ``CheckReport`` is what every named check returns and what the CLI renders as text,
CSV or a machine-readable JSON document. Re-running a check with the same parameters
yields the same report apart from ``stats``.
"""

from typing import Any, Dict, List, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

Verdict = Literal["holds", "fails", "out_of_budget"]
Coverage = Literal["exhaustive", "partial", "sampled"]


class SubVerdict(BaseModel):
    """One labelled line of a check, e.g. one window degree or one (n, k, ℓ1, ℓ2) profile."""

    label: str = Field(..., description="What this line covers")
    verdict: Verdict = Field(..., description="Outcome for this line")
    detail: str = Field("", description="Short free-form detail")


class CheckStats(BaseModel):
    """Work done by a check; excluded when comparing reports."""

    nodes_visited: int = Field(0, ge=0, description="Backtracking nodes expanded")
    candidates_tested: int = Field(0, ge=0, description="Candidate sets or patterns tested")
    wall_time_s: float = Field(0.0, ge=0, description="Elapsed wall-clock seconds")


class CheckReport(BaseModel):
    """Outcome of one named verification check."""

    model_config = ConfigDict(validate_assignment=True)

    check_name: str = Field(..., description="Registry name of the check")
    parameters: Dict[str, Any] = Field(default_factory=dict, description="Check parameters")
    verdict: Verdict = Field(..., description="holds, fails or out_of_budget")
    coverage: Coverage = Field("exhaustive", description="How much of the space was covered")
    witnesses: List[Any] = Field(
        default_factory=list, description="Counterexamples or extremal witnesses"
    )
    sub_verdicts: List[SubVerdict] = Field(default_factory=list, description="Per-part outcomes")
    notes: List[str] = Field(default_factory=list, description="Remarks such as known exceptions")
    stats: CheckStats = Field(default_factory=CheckStats, description="Work counters")

    @field_validator("check_name")
    @classmethod
    def validate_check_name(cls, v: str) -> str:
        if not v or not v.strip():
            raise ValueError("check_name cannot be empty")
        return v.strip()

    @model_validator(mode="after")
    def failures_carry_witnesses(self) -> "CheckReport":
        """A failing verdict must come with at least one witness."""
        if self.verdict == "fails" and not self.witnesses:
            raise ValueError("a failing report needs at least one witness")
        return self

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def comparable(self) -> Dict[str, Any]:
        """The report without its stats block."""
        return self.model_dump(exclude={"stats"})
