"""
Experiment Schemas
Pydantic v2 models for experiment and algorithm configuration
"""

from typing import Any, Dict, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.core.config import settings
from app.schemas.problem import ProblemDescriptor
from app.utils.algorithm_constants import (
    GROUPING_LABELS,
    PARALLEL_SUFFIX,
    AlgorithmKind,
    GroupingStrategy,
    GroupOrder,
    NPDCVariant,
    Workflow,
)


class AlgorithmSpec(BaseModel):
    """Which optimizer to run and how"""
    model_config = ConfigDict(frozen=True)

    kind: AlgorithmKind = Field(..., description="npdc, npdc-random or cc")
    grouping: Optional[GroupingStrategy] = Field(None, description="CC decomposition")
    workflow: Optional[Workflow] = Field(None, description="CC workflow")
    group_count: Optional[int] = Field(None, ge=1, description="M for random grouping")
    order: GroupOrder = Field(GroupOrder.ASCENDING, description="CC group processing order")
    epsilon: Optional[float] = Field(None, gt=0, description="Differential grouping threshold")
    update_rejected: bool = Field(
        default_factory=lambda: settings.META_UPDATE_REJECTED,
        description="NPDC: adapt meta-model and sigma for offspring rejected at pre-selection",
    )

    @model_validator(mode="after")
    def check_cc_fields(self) -> "AlgorithmSpec":
        if self.kind == AlgorithmKind.CC:
            if self.grouping is None or self.workflow is None:
                raise ValueError("cc requires both grouping and workflow")
        elif self.grouping is not None or self.workflow is not None:
            raise ValueError(f"{self.kind.value} takes no grouping or workflow")
        return self

    @property
    def variant(self) -> NPDCVariant:
        if self.kind == AlgorithmKind.NPDC_RANDOM:
            return NPDCVariant.RANDOM_META
        return NPDCVariant.STANDARD

    @property
    def label(self) -> str:
        """Artifact label: NPDC, NPDC-random, DC-NG, DC-RG-P, ..."""
        if self.kind == AlgorithmKind.NPDC:
            return "NPDC"
        if self.kind == AlgorithmKind.NPDC_RANDOM:
            return "NPDC-random"
        label = f"DC-{GROUPING_LABELS[self.grouping]}"
        if self.workflow == Workflow.PARALLEL:
            label += PARALLEL_SUFFIX
        return label

    @classmethod
    def parse(cls, text: str, **extra: Any) -> "AlgorithmSpec":
        """
        Parse an algorithm name

        Accepts "npdc", "npdc-random", "cc:<grouping>:<workflow>" and the
        artifact labels ("DC-NG", "DC-RG-P", ...).
        """
        value = text.strip()
        lowered = value.lower()
        if lowered in (AlgorithmKind.NPDC.value, AlgorithmKind.NPDC_RANDOM.value):
            return cls(kind=AlgorithmKind(lowered), **extra)
        if lowered.startswith("cc:"):
            parts = lowered.split(":")
            if len(parts) != 3:
                raise ValueError(f"Expected cc:<grouping>:<workflow>, got {text!r}")
            return cls(
                kind=AlgorithmKind.CC,
                grouping=GroupingStrategy(parts[1]),
                workflow=Workflow(parts[2]),
                **extra,
            )
        upper = value.upper()
        if upper.startswith("DC-"):
            workflow = Workflow.SERIAL
            if upper.endswith(PARALLEL_SUFFIX):
                workflow = Workflow.PARALLEL
                upper = upper[: -len(PARALLEL_SUFFIX)]
            short = upper[len("DC-"):]
            for strategy, tag in GROUPING_LABELS.items():
                if tag == short:
                    return cls(kind=AlgorithmKind.CC, grouping=strategy, workflow=workflow, **extra)
        raise ValueError(f"Unknown algorithm {text!r}")


class ExperimentConfig(BaseModel):
    """A seeded run matrix: one problem, one algorithm, several repetitions"""
    model_config = ConfigDict(frozen=True)

    problem: ProblemDescriptor
    algorithm: AlgorithmSpec
    budget: int = Field(default_factory=lambda: settings.DEFAULT_BUDGET, ge=1, description="T")
    lanes: int = Field(default_factory=lambda: settings.DEFAULT_LAMBDA, ge=1, description="lambda")
    repetitions: int = Field(default_factory=lambda: settings.DEFAULT_REPETITIONS, ge=1)
    base_seed: int = Field(0, description="Run k uses base_seed + k")
    workers: int = Field(default_factory=lambda: settings.DEFAULT_WORKERS, ge=1)
    output_dir: str = Field(default_factory=lambda: settings.OUTPUT_DIR)
    evaluation_delay: float = Field(0.0, ge=0, description="Injected seconds per evaluation")

    @model_validator(mode="after")
    def check_budget(self) -> "ExperimentConfig":
        if self.budget < 2 * self.lanes:
            raise ValueError(f"budget {self.budget} must be >= 2 * lambda ({2 * self.lanes})")
        return self

    def seed_for(self, run_index: int) -> int:
        return self.base_seed + run_index

    def echo(self) -> Dict[str, Any]:
        """Plain-JSON view written next to every run"""
        return self.model_dump(mode="json")
