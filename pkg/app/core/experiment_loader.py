"""
Experiment configuration loading
Flat KEY=value files plus command-line overrides, validated into ExperimentConfig
"""

from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from dotenv import dotenv_values
from pydantic import ValidationError

from app.core.exceptions import ConfigurationException
from app.schemas.experiment import AlgorithmSpec, ExperimentConfig
from app.schemas.problem import ProblemDescriptor

# File keys accepted besides PROBLEM / ALGO
PROBLEM_KEYS = {
    "STRUCTURE": "structure",
    "BASE": "base",
    "DIMENSION": "dimension",
    "GROUP_SIZE": "group_size",
    "PROBLEM_SEED": "seed",
}
ALGORITHM_KEYS = {
    "GROUP_COUNT": "group_count",
    "ORDER": "order",
    "EPSILON": "epsilon",
    "UPDATE_REJECTED": "update_rejected",
}
EXPERIMENT_KEYS = {
    "BUDGET": "budget",
    "LAMBDA": "lanes",
    "REPETITIONS": "repetitions",
    "SEED": "base_seed",
    "WORKERS": "workers",
    "OUT": "output_dir",
    "DELAY": "evaluation_delay",
}


def read_config_file(path: Union[str, Path]) -> Dict[str, str]:
    """Raw KEY=value pairs, keys upper-cased, empty values dropped"""
    source = Path(path)
    if not source.is_file():
        raise ConfigurationException(f"Config file not found: {source}")
    return {
        key.upper(): value
        for key, value in dotenv_values(source).items()
        if value is not None and value != ""
    }


def build_experiment_config(
    values: Mapping[str, Any],
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    """
    Validate merged file values and overrides

    Args:
        values: KEY=value pairs from a config file
        overrides: Same keys from the command line; None values are ignored

    Returns:
        Validated ExperimentConfig

    Raises:
        ConfigurationException: On missing or invalid fields
    """
    merged: Dict[str, Any] = dict(values)
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})

    try:
        if "PROBLEM" in merged:
            problem = ProblemDescriptor.parse(str(merged["PROBLEM"]))
        else:
            fields = {name: merged[key] for key, name in PROBLEM_KEYS.items() if key in merged}
            problem = ProblemDescriptor(**fields)

        if "ALGO" not in merged:
            raise ConfigurationException("No algorithm given (ALGO / --algo)")
        extra = {name: merged[key] for key, name in ALGORITHM_KEYS.items() if key in merged}
        algorithm = AlgorithmSpec.parse(str(merged["ALGO"]), **extra)

        fields = {name: merged[key] for key, name in EXPERIMENT_KEYS.items() if key in merged}
        return ExperimentConfig(problem=problem, algorithm=algorithm, **fields)
    except (ValidationError, ValueError) as e:
        raise ConfigurationException(f"Invalid experiment configuration: {str(e)}")


def load_experiment_config(
    path: Optional[Union[str, Path]] = None,
    overrides: Optional[Mapping[str, Any]] = None,
) -> ExperimentConfig:
    values = read_config_file(path) if path else {}
    return build_experiment_config(values, overrides)
