"""
Run Schemas
Pydantic v2 models for run records, trajectories and timing
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from app.utils.algorithm_constants import RunStatus


class TrajectoryPoint(BaseModel):
    """Best-so-far error after a number of consumed evaluations"""
    model_config = ConfigDict(frozen=True)

    evaluations: int = Field(..., ge=0)
    best_error: float


class TimingRecord(BaseModel):
    """Wall-clock breakdown of a run; excluded from determinism checks"""
    total_time: float = Field(0.0, ge=0, description="Seconds for the whole run")
    evaluation_time: float = Field(0.0, ge=0, description="Seconds spent inside f")
    simulated_time: Optional[float] = Field(
        None, ge=0, description="Serial part plus slowest chunk per iteration"
    )
    iteration_count: int = Field(0, ge=0)
    workers: int = Field(1, ge=1)

    @property
    def fe_fraction(self) -> float:
        if self.total_time <= 0:
            return 0.0
        return min(1.0, self.evaluation_time / self.total_time)


class RunRecord(BaseModel):
    """One seeded repetition of one configuration"""
    run_id: str = Field(..., description="Stable identifier, e.g. NPDC-r003")
    algo: str = Field(..., description="Algorithm label")
    problem: str = Field(..., description="Problem name")
    seed: int
    config: Dict[str, Any] = Field(default_factory=dict, description="Configuration echo")
    trajectory: List[TrajectoryPoint] = Field(default_factory=list)
    final_error: Optional[float] = Field(None, description="Error of the output solution")
    consumed: int = Field(0, ge=0, description="Evaluations consumed")
    budget: int = Field(0, ge=0)
    timing: TimingRecord = Field(default_factory=TimingRecord)
    status: RunStatus = RunStatus.COMPLETED
    error: Optional[str] = Field(None, description="Failure message for failed runs")
    diagnostics: Dict[str, float] = Field(default_factory=dict)

    @property
    def best_error(self) -> Optional[float]:
        if not self.trajectory:
            return None
        return self.trajectory[-1].best_error

    @property
    def succeeded(self) -> bool:
        return self.status == RunStatus.COMPLETED

    def deterministic_view(self) -> Dict[str, Any]:
        """Everything except wall-clock timing"""
        return self.model_dump(mode="json", exclude={"timing"})
