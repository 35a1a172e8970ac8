"""
Unit tests for algorithm and experiment configuration
"""

import pytest
from pydantic import ValidationError

from app.core.exceptions import ConfigurationException
from app.core.experiment_loader import build_experiment_config, load_experiment_config, read_config_file
from app.schemas.experiment import AlgorithmSpec, ExperimentConfig
from app.schemas.problem import ProblemDescriptor
from app.utils.algorithm_constants import AlgorithmKind, GroupingStrategy, GroupOrder, NPDCVariant, Workflow

PROBLEM = "fully-separable:sphere:D10:s1"


class TestAlgorithmSpec:
    @pytest.mark.parametrize("text, label", [
        ("npdc", "NPDC"),
        ("npdc-random", "NPDC-random"),
        ("cc:natural:serial", "DC-NG"),
        ("cc:random:parallel", "DC-RG-P"),
        ("DC-DG", "DC-DG"),
        ("dc-rg-p", "DC-RG-P"),
    ])
    def test_parse_and_label(self, text, label):
        assert AlgorithmSpec.parse(text).label == label

    def test_parse_artifact_label(self):
        spec = AlgorithmSpec.parse("DC-DG-P", epsilon=1e-3)
        assert spec.grouping == GroupingStrategy.DIFFERENTIAL
        assert spec.workflow == Workflow.PARALLEL
        assert spec.epsilon == 1e-3

    def test_variant(self):
        assert AlgorithmSpec.parse("npdc-random").variant == NPDCVariant.RANDOM_META
        assert AlgorithmSpec.parse("npdc").variant == NPDCVariant.STANDARD

    @pytest.mark.parametrize("text", ["ga", "cc:natural", "DC-XX", "cc:natural:sideways"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            AlgorithmSpec.parse(text)

    def test_cc_needs_grouping_and_workflow(self):
        with pytest.raises(ValidationError):
            AlgorithmSpec(kind=AlgorithmKind.CC, grouping=GroupingStrategy.NATURAL)

    def test_npdc_takes_no_grouping(self):
        with pytest.raises(ValidationError):
            AlgorithmSpec(kind=AlgorithmKind.NPDC, workflow=Workflow.SERIAL)


class TestExperimentConfig:
    def test_seeds_follow_run_index(self):
        config = ExperimentConfig(
            problem=ProblemDescriptor.parse(PROBLEM), algorithm=AlgorithmSpec.parse("npdc"), base_seed=40
        )
        assert [config.seed_for(i) for i in range(3)] == [40, 41, 42]

    def test_budget_covers_lanes(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(
                problem=ProblemDescriptor.parse(PROBLEM), algorithm=AlgorithmSpec.parse("npdc"), budget=5, lanes=3
            )

    def test_repetitions_positive(self):
        with pytest.raises(ValidationError):
            ExperimentConfig(
                problem=ProblemDescriptor.parse(PROBLEM), algorithm=AlgorithmSpec.parse("npdc"), repetitions=0
            )

    def test_echo_is_plain_json(self):
        config = ExperimentConfig(problem=ProblemDescriptor.parse(PROBLEM), algorithm=AlgorithmSpec.parse("DC-NG"))
        echo = config.echo()
        assert echo["algorithm"]["grouping"] == "natural"
        assert echo["problem"]["structure"] == "fully-separable"


class TestExperimentLoader:
    def test_file_with_overrides(self, tmp_path):
        path = tmp_path / "experiment.env"
        path.write_text(
            "# DC-RG on a grouped instance\n"
            "STRUCTURE=k-group-nonseparable\n"
            "BASE=rastrigin\n"
            "DIMENSION=20\n"
            "GROUP_SIZE=5\n"
            "ALGO=cc:random:serial\n"
            "GROUP_COUNT=4\n"
            "ORDER=descending\n"
            "BUDGET=5000\n"
            "REPETITIONS=3\n"
            "SEED=100\n"
        )
        config = load_experiment_config(path, {"BUDGET": 800, "WORKERS": None, "OUT": str(tmp_path)})
        assert config.problem.group_size == 5
        assert config.algorithm.group_count == 4
        assert config.algorithm.order == GroupOrder.DESCENDING
        assert config.budget == 800
        assert config.repetitions == 3
        assert config.base_seed == 100
        assert config.output_dir == str(tmp_path)

    def test_overrides_only(self):
        config = load_experiment_config(overrides={"PROBLEM": PROBLEM, "ALGO": "npdc", "LAMBDA": 2, "BUDGET": 40})
        assert config.lanes == 2
        assert config.problem.dimension == 10

    def test_keys_are_case_insensitive(self, tmp_path):
        path = tmp_path / "experiment.env"
        path.write_text(f"problem={PROBLEM}\nalgo=npdc\n")
        assert read_config_file(path)["ALGO"] == "npdc"

    def test_missing_file(self, tmp_path):
        with pytest.raises(ConfigurationException):
            load_experiment_config(tmp_path / "absent.env")

    def test_missing_algorithm(self):
        with pytest.raises(ConfigurationException):
            build_experiment_config({"PROBLEM": PROBLEM})

    @pytest.mark.parametrize("values", [
        {"PROBLEM": PROBLEM, "ALGO": "simplex"},
        {"PROBLEM": "fully-separable:sphere", "ALGO": "npdc"},
        {"PROBLEM": PROBLEM, "ALGO": "npdc", "BUDGET": "lots"},
        {"PROBLEM": PROBLEM, "ALGO": "npdc", "BUDGET": "3", "LAMBDA": "2"},
    ])
    def test_invalid_values(self, values):
        with pytest.raises(ConfigurationException):
            build_experiment_config(values)
