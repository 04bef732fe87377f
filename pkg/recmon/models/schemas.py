"""
Pydantic models for reports, transcripts and fragment flags.
"""
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field


class Fragment(BaseModel):
    """Fragment membership of a formula."""
    model_config = ConfigDict(frozen=True)

    HML: bool = Field(..., description="Fixpoint-free formula")
    ltmuS: bool = Field(..., description="tt, ff, [A], <A>, &, |, max, X (also called maxHML)")
    ltmuC: bool = Field(..., description="tt, ff, [A], <A>, &, |, min, X (also called minHML)")
    ftmuS: bool = Field(..., description="ltmuS without diamonds")
    ftmuC: bool = Field(..., description="ltmuC without boxes")
    sHML: bool = Field(..., description="tt, ff, [A], &, max, X")
    cHML: bool = Field(..., description="tt, ff, <A>, |, min, X")
    closed: bool = Field(..., description="No free variables")
    guarded: bool = Field(..., description="Every variable occurs under a modality inside its binder")


class RewriteStepModel(BaseModel):
    """One slim-normalization step."""
    rule: str = Field(..., description="Rule name")
    before: str = Field(..., description="Redex, printed")
    after: str = Field(..., description="Contractum, printed")


class TranscriptEvent(BaseModel):
    """One step of an instrumented run."""
    step: int = Field(..., description="Step number, starting at 1")
    monitor: str = Field(..., description="Monitor before the step")
    state: str = Field(..., description="Process state before the step")
    label: str = Field(..., description="Action or tau")
    rule: str = Field(..., description="Instrumentation rule: iMon, iTer, iAsyP or iAsyM")
    next_monitor: str = Field(..., description="Monitor after the step")
    next_state: str = Field(..., description="Process state after the step")


class InstrumentedOutcome(BaseModel):
    """A trace along which the instrumented monitor reached a verdict."""
    trace: str = Field(..., description="Visible trace, printed")
    verdict: str = Field(..., description="yes, no or end")


class CheckResult(BaseModel):
    """Outcome of one self-test property."""
    name: str = Field(..., description="Property name")
    instances: int = Field(0, description="Instances examined")
    failures: int = Field(0, description="Instances violating the property")
    first_failure: Optional[str] = Field(None, description="Printed counterexample")


class SelftestSummary(BaseModel):
    """Result of the acceptance sweep."""
    alphabet: List[str] = Field(..., description="Alphabet used")
    seed: int = Field(..., description="Seed used for random instances")
    checks: List[CheckResult] = Field(default_factory=list, description="Per-property results")

    @property
    def failures(self) -> int:
        return sum(check.failures for check in self.checks)


class Report(BaseModel):
    """Single JSON document emitted by every CLI command."""
    command: str = Field(..., description="Command name")
    inputs: Dict[str, str] = Field(default_factory=dict, description="Inputs in canonical printed form")
    result: Any = Field(None, description="Command result")
    diagnostics: List[str] = Field(default_factory=list, description="Warnings and notes")
    timing_ms: float = Field(0.0, description="Wall-clock time of the command")
    seed: Optional[int] = Field(None, description="Seed used by randomized commands")
    exit_code: int = Field(0, description="Process exit code")
    error_code: Optional[str] = Field(None, description="Machine-readable error code")
