"""
Unit tests for the cooperative coevolution engine
"""

import numpy as np
import pytest

from app.core.exceptions import ConfigurationException, DimensionMismatchException
from app.services.cc import (
    ContextVector,
    Provenance,
    SubproblemState,
    cc_step_parallel,
    cc_step_serial,
    evaluate_partial,
    run_cc,
)
from app.services.problems import make_problem
from app.services.search_kernel import FAILURE_FACTOR, SUCCESS_FACTOR
from tests.fixtures.problems import centered_sphere


def natural_states(merged, value):
    return [
        SubproblemState(group=np.array([i]), best=merged[[i]], sigma=1.0, value=value)
        for i in range(len(merged))
    ]


class TestEvaluatePartial:
    def test_splices_group(self, make_evaluator):
        evaluator = make_evaluator(centered_sphere(3))
        context = ContextVector(np.array([1.0, 2.0, 3.0]))
        assert evaluate_partial(evaluator, context, [1], [0.0]) == 10.0
        assert context.values.tolist() == [1.0, 2.0, 3.0]
        assert evaluator.budget.consumed == 1

    def test_full_splice(self, make_evaluator):
        problem = centered_sphere(3)
        evaluator = make_evaluator(problem)
        x = np.array([0.5, -1.5, 2.0])
        context = ContextVector(np.zeros(3))
        assert evaluate_partial(evaluator, context, [0, 1, 2], x) == problem.evaluate(x)

    def test_optimum_splice(self, make_evaluator):
        evaluator = make_evaluator(centered_sphere(3))
        assert evaluate_partial(evaluator, ContextVector(np.zeros(3)), [0], [0.0]) == 0.0

    def test_length_mismatch(self, make_evaluator):
        evaluator = make_evaluator(centered_sphere(3))
        with pytest.raises(DimensionMismatchException):
            evaluate_partial(evaluator, ContextVector(np.zeros(3)), [0, 1], [0.0])


class TestSteps:
    """Sphere D=2, merged [3, 4], both Gaussian draws -1: both groups improve"""

    def test_serial_sees_fresh_bests(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere)
        merged = np.array([3.0, 4.0])
        block = make_block([0.9, 0.9], [-1.0, -1.0], [0.0, 0.0])
        result = cc_step_serial(natural_states(merged, 25.0), evaluator, block, merged, 25.0)

        assert result.contexts[1].values.tolist() == [2.0, 4.0]
        assert result.contexts[1].provenance() == [Provenance.CURRENT, Provenance.PREVIOUS]
        assert result.contexts[0].provenance() == [Provenance.PREVIOUS, Provenance.PREVIOUS]
        assert result.merged.tolist() == [2.0, 3.0]
        assert result.merged_value == 13.0
        assert result.states[1].value == 13.0
        assert result.accepted == 2
        assert evaluator.budget.consumed == 2

    def test_parallel_sees_stale_bests(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere)
        merged = np.array([3.0, 4.0])
        block = make_block([0.9, 0.9], [-1.0, -1.0], [0.0, 0.0])
        result = cc_step_parallel(natural_states(merged, 25.0), evaluator, block, merged, 25.0)

        assert result.contexts[1].values.tolist() == [3.0, 4.0]
        assert all(
            tag == Provenance.PREVIOUS for context in result.contexts for tag in context.provenance()
        )
        assert result.states[0].value == 20.0
        assert result.states[1].value == 18.0
        assert result.merged.tolist() == [2.0, 3.0]
        assert result.merged_value == 13.0
        assert result.merge_evaluated
        assert evaluator.budget.consumed == 3
        assert evaluator.uncharged_calls == 0

    def test_parallel_merge_without_budget_keeps_best_group(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere, 2)
        merged = np.array([3.0, 4.0])
        block = make_block([0.9, 0.9], [-1.0, -1.0], [0.0, 0.0])
        result = cc_step_parallel(natural_states(merged, 25.0), evaluator, block, merged, 25.0)

        # Group 1 alone gives 18, group 0 alone 20
        assert result.merged.tolist() == [3.0, 3.0]
        assert result.merged_value == 18.0
        assert result.accepted == 1
        assert result.states[0].best.tolist() == [3.0]
        assert result.states[0].value == 25.0
        assert result.states[0].sigma == pytest.approx(SUCCESS_FACTOR)
        assert not result.merge_evaluated
        assert evaluator.budget.consumed == 2

    def test_parallel_single_accept_needs_no_merge_evaluation(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere)
        merged = np.array([3.0, 4.0])
        block = make_block([0.9, 0.9], [-1.0, 1.0], [0.0, 0.0])
        result = cc_step_parallel(natural_states(merged, 25.0), evaluator, block, merged, 25.0)
        assert result.accepted == 1
        assert result.merged_value == 20.0
        assert not result.merge_evaluated
        assert evaluator.budget.consumed == 2

    def test_rejected_mutant_keeps_best(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere)
        merged = np.array([3.0, 4.0])
        states = natural_states(merged, 25.0)
        block = make_block([0.9, 0.9], [1.0, -1.0], [0.0, 0.0])
        result = cc_step_serial(states, evaluator, block, merged, 25.0)

        assert result.states[0].best.tolist() == [3.0]
        assert result.states[0].value == 25.0
        assert result.states[0].sigma == pytest.approx(FAILURE_FACTOR)
        assert result.states[1].sigma == pytest.approx(SUCCESS_FACTOR)
        assert result.merged.tolist() == [3.0, 3.0]

    def test_descending_order_consumes_columns_in_order(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere)
        merged = np.array([3.0, 4.0])
        block = make_block([0.9, 0.9], [-1.0, 1.0], [0.0, 0.0])
        result = cc_step_serial(natural_states(merged, 25.0), evaluator, block, merged, 25.0, order=[1, 0])
        # Group 1 is processed first and takes column 0
        assert result.merged.tolist() == [3.0, 3.0]

    def test_budget_cut_mid_sweep(self, origin_sphere, make_evaluator, make_block):
        evaluator = make_evaluator(origin_sphere, 1)
        merged = np.array([3.0, 4.0])
        block = make_block([0.9, 0.9], [-1.0, -1.0], [0.0, 0.0])
        result = cc_step_serial(natural_states(merged, 25.0), evaluator, block, merged, 25.0)
        assert result.processed == 1
        assert result.merged.tolist() == [2.0, 4.0]
        assert result.states[1].sigma == 1.0


class TestRunCC:
    def test_single_group_workflows_agree(self, grouped_problem):
        serial = run_cc(grouped_problem, "random", "serial", 400, seed=3, group_count=1)
        parallel = run_cc(grouped_problem, "random", "parallel", 400, seed=3, group_count=1)
        assert serial.trajectory == parallel.trajectory
        assert serial.final_error == parallel.final_error

    def test_worker_count_does_not_change_results(self, sphere_problem):
        one = run_cc(sphere_problem, "natural", "parallel", 600, seed=5, workers=1)
        many = run_cc(sphere_problem, "natural", "parallel", 600, seed=5, workers=10)
        assert one.trajectory == many.trajectory
        assert one.final_error == many.final_error

    def test_budget_of_one_sweep(self, sphere_problem):
        # Initial evaluation plus one evaluation per group
        record = run_cc(sphere_problem, "natural", "serial", 11, seed=1)
        assert record.timing.iteration_count == 1
        assert record.consumed == 11

    def test_budget_cuts_first_sweep(self, sphere_problem):
        record = run_cc(sphere_problem, "natural", "serial", 10, seed=1)
        assert record.timing.iteration_count == 1
        assert record.consumed == 10

    def test_parallel_accounting_exact(self, sphere_problem):
        record = run_cc(sphere_problem, "natural", "parallel", 1234, seed=1)
        assert record.consumed == 1234
        assert record.trajectory[-1].evaluations == 1234
        assert record.diagnostics["merge_evaluations"] > 0
        iterations = record.timing.iteration_count
        merges = int(record.diagnostics["merge_evaluations"])
        assert 1 + 10 * (iterations - 1) + merges <= 1234 <= 1 + 10 * iterations + merges

    def test_budget_accounting_exact(self, sphere_problem):
        record = run_cc(sphere_problem, "natural", "serial", 1234, seed=1)
        assert record.consumed == 1234
        assert record.trajectory[-1].evaluations == 1234

    def test_trajectory_shape(self, grouped_problem):
        record = run_cc(grouped_problem, "natural", "parallel", 2000, seed=2, interval=100)
        counts = [p.evaluations for p in record.trajectory]
        errors = [p.best_error for p in record.trajectory]
        assert counts == sorted(set(counts))
        assert all(later <= earlier for earlier, later in zip(errors, errors[1:]))
        assert record.final_error >= errors[-1]

    def test_sphere_converges(self):
        problem = make_problem("fully-separable", "sphere", 10, seed=4)
        errors = [run_cc(problem, "natural", "serial", 10_000, seed=s).final_error for s in range(10)]
        assert np.mean(errors) < 1e-6

    def test_random_grouping_diagnostics(self, sphere_problem):
        record = run_cc(sphere_problem, "random", "serial", 300, seed=8, group_count=5)
        assert record.algo == "DC-RG"
        assert record.diagnostics["groups"] == 5.0
        assert record.diagnostics["probe_evaluations"] == 0.0

    def test_differential_grouping_charges_probes(self):
        problem = make_problem("single-group-nonseparable", "elliptic", 20, group_size=5, seed=2)
        record = run_cc(problem, "differential", "parallel", 600, seed=1)
        assert record.algo == "DC-DG-P"
        assert record.diagnostics["probe_evaluations"] == 211.0
        assert record.diagnostics["grouping_accuracy"] == 1.0
        assert record.diagnostics["groups"] == 16.0
        assert record.trajectory[0].evaluations == 212
        assert record.consumed == 600

    def test_deterministic(self, grouped_problem):
        first = run_cc(grouped_problem, "random", "serial", 500, seed=9, group_count=2, order="random")
        second = run_cc(grouped_problem, "random", "serial", 500, seed=9, group_count=2, order="random")
        assert first.deterministic_view() == second.deterministic_view()

    def test_budget_smaller_than_dimension(self, sphere_problem):
        with pytest.raises(ConfigurationException):
            run_cc(sphere_problem, "natural", "serial", 9, seed=0)

    def test_budget_cannot_cover_probes(self, sphere_problem):
        with pytest.raises(ConfigurationException):
            run_cc(sphere_problem, "differential", "serial", 50, seed=0)


@pytest.mark.slow
def test_serial_not_worse_than_parallel_on_elliptic():
    from app.services.analysis import verdict

    problem = make_problem("fully-separable", "elliptic", 100, seed=12)
    serial = [run_cc(problem, "natural", "serial", 20_000, seed=s).final_error for s in range(20)]
    parallel = [run_cc(problem, "natural", "parallel", 20_000, seed=s).final_error for s in range(20)]
    outcome, _ = verdict(serial, parallel, 0.05)
    assert outcome != "loss"
