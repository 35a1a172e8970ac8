"""
Problem Schemas
Pydantic v2 models describing replayable benchmark instances
"""

from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.utils.benchmark_constants import BaseFunction, StructureClass, GROUPED_CLASSES


class ProblemDescriptor(BaseModel):
    """Everything needed to regenerate a benchmark instance"""
    model_config = ConfigDict(frozen=True, use_enum_values=False)

    structure: StructureClass = Field(..., description="Separability class")
    base: BaseFunction = Field(..., description="Base function")
    dimension: int = Field(..., ge=2, description="Number of decision variables D")
    group_size: Optional[int] = Field(None, ge=1, description="Nonseparable group size m")
    seed: int = Field(0, ge=-(2**63), lt=2**64, description="Generator seed")

    @model_validator(mode="after")
    def check_group_size(self) -> "ProblemDescriptor":
        if self.structure in GROUPED_CLASSES and self.group_size is None:
            raise ValueError(f"{self.structure.value} requires group_size")
        return self

    @property
    def name(self) -> str:
        """Short stable label used in artifacts"""
        label = f"{self.structure.value}:{self.base.value}:D{self.dimension}"
        if self.group_size is not None and self.structure in GROUPED_CLASSES:
            label += f":m{self.group_size}"
        return f"{label}:s{self.seed}"

    @classmethod
    def parse(cls, text: str) -> "ProblemDescriptor":
        """
        Parse "structure:base:D<n>[:m<k>][:s<seed>]", the format of `name`

        Raises:
            ValueError: On malformed text
        """
        parts = [part.strip() for part in text.strip().split(":")]
        if len(parts) < 3:
            raise ValueError(f"Expected structure:base:D<n>[:m<k>][:s<seed>], got {text!r}")
        fields = {"structure": parts[0], "base": parts[1]}
        for token in parts[2:]:
            key, value = token[:1], token[1:]
            if key == "D":
                fields["dimension"] = int(value)
            elif key == "m":
                fields["group_size"] = int(value)
            elif key == "s":
                fields["seed"] = int(value)
            else:
                raise ValueError(f"Unknown problem field {token!r} in {text!r}")
        if "dimension" not in fields:
            raise ValueError(f"Problem {text!r} has no D<n> field")
        return cls(**fields)
