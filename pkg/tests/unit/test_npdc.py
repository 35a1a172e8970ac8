"""
Unit tests for the NPDC meta-model, lanes and executor
"""

import math
from dataclasses import replace

import numpy as np
import pytest

import app.services.npdc.lane as lane_module
from app.core.exceptions import BudgetExhaustedException, ConfigurationException
from app.services.npdc import (
    Lane,
    MetaModelState,
    OffspringSide,
    VariableChunker,
    initial_lane,
    meta_select,
    meta_update,
    npdc_iteration,
    offspring_side,
    probability_floor,
    run_npdc,
)
from app.services.problems import EvaluationBudget, Evaluator
from app.services.search_kernel import FAILURE_FACTOR, SUCCESS_FACTOR, RngStream
from app.utils.algorithm_constants import NPDCVariant, SpeedupMode
from tests.fixtures.problems import centered_sphere


def unit_lane(dimension: int, ps: float = 1.0, pl: float = 1.0) -> Lane:
    return Lane(
        index=0,
        best=np.ones(dimension),
        sigma=np.ones(dimension),
        model=MetaModelState(np.full(dimension, ps), np.full(dimension, pl)),
        fb=float(dimension),
    )


class TestMetaSelect:
    def test_certain_acceptance(self):
        model = MetaModelState(1.0, 1.0)
        assert meta_select(1.0, 0.5, model, 0.999) == 0.5
        assert meta_select(1.0, 1.5, model, 1.0) == 1.5

    def test_equal_returns_parent(self):
        assert meta_select(2.0, 2.0, MetaModelState(1.0, 1.0), 0.0) == 2.0

    def test_smaller_uses_ps(self):
        model = MetaModelState(0.8, 0.1)
        assert meta_select(1.0, 0.5, model, 0.3) == 0.5
        assert meta_select(1.0, 0.5, model, 0.9) == 1.0

    def test_larger_uses_pl(self):
        model = MetaModelState(0.9, 0.2)
        assert meta_select(1.0, 1.5, model, 0.3) == 1.0
        assert meta_select(1.0, 1.5, model, 0.1) == 1.5

    def test_vectorized(self):
        model = MetaModelState(np.array([0.8, 0.8, 0.8]), np.array([0.2, 0.2, 0.2]))
        chosen = meta_select(np.ones(3), np.array([0.5, 1.5, 1.0]), model, np.full(3, 0.5))
        assert chosen.tolist() == [0.5, 1.0, 1.0]

    def test_offspring_side(self):
        assert offspring_side(1.0, 0.5) == OffspringSide.SMALLER
        assert offspring_side(1.0, 1.0) == OffspringSide.EQUAL
        assert offspring_side(np.zeros(2), np.array([1.0, -1.0])).tolist() == [1, -1]


class TestMetaUpdate:
    def test_success_on_smaller(self):
        updated = meta_update(MetaModelState(0.5, 0.5), OffspringSide.SMALLER, True, 1000)
        assert updated.ps == pytest.approx(0.5 * math.exp(0.8 / math.sqrt(2)), rel=1e-12)
        assert updated.pl == 0.5

    def test_clamped_at_one(self):
        updated = meta_update(MetaModelState(1.0, 1.0), OffspringSide.SMALLER, True, 1000)
        assert updated.ps == 1.0

    def test_floor(self):
        updated = meta_update(MetaModelState(0.002, 1.0), OffspringSide.SMALLER, False, 1000)
        assert updated.ps == pytest.approx(0.002)
        assert probability_floor(1000) == pytest.approx(0.002)

    def test_larger_updates_pl(self):
        updated = meta_update(MetaModelState(0.5, 0.5), OffspringSide.LARGER, False, 1000)
        assert updated.ps == 0.5
        assert updated.pl == pytest.approx(0.5 * FAILURE_FACTOR)

    def test_equal_unchanged(self):
        updated = meta_update(MetaModelState(0.5, 0.6), OffspringSide.EQUAL, True, 1000)
        assert (updated.ps, updated.pl) == (0.5, 0.6)

    def test_mask(self):
        model = MetaModelState(np.full(2, 0.5), np.full(2, 0.5))
        side = np.array([OffspringSide.SMALLER, OffspringSide.SMALLER])
        updated = meta_update(model, side, True, 1000, mask=np.array([True, False]))
        assert updated.ps[1] == 0.5
        assert updated.ps[0] == pytest.approx(0.5 * SUCCESS_FACTOR)


class TestLaneIteration:
    def test_scripted_two_iteration_trace(self, make_block):
        evaluator = Evaluator(centered_sphere(5), EvaluationBudget(10))
        lane = unit_lane(5)

        first = npdc_iteration(lane, evaluator, make_block([0.9] * 5, [-0.5] * 5, [0.0] * 5, [0.5] * 5))
        assert first.best.tolist() == [0.5] * 5
        assert first.fb == 1.25
        assert first.sigma == pytest.approx(np.full(5, SUCCESS_FACTOR))
        assert first.model.ps.tolist() == [1.0] * 5
        assert first.model.pl.tolist() == [1.0] * 5

        second = npdc_iteration(first, evaluator, make_block([0.9] * 5, [1.0] * 5, [0.0] * 5, [0.5] * 5))
        assert second.best is first.best
        assert second.fb == 1.25
        assert second.sigma == pytest.approx(np.full(5, SUCCESS_FACTOR * FAILURE_FACTOR))
        assert second.model.ps.tolist() == [1.0] * 5
        assert second.model.pl == pytest.approx(np.full(5, FAILURE_FACTOR))
        assert second.iterations == 2
        assert evaluator.budget.consumed == 2

    def test_first_iteration_evaluates_full_mutant(self, make_block, mocker):
        evaluator = Evaluator(centered_sphere(3), EvaluationBudget())
        spy = mocker.spy(evaluator, "evaluate")
        block = make_block([0.9, 0.1, 0.9], [0.3, 0.0, -0.2], [0.0, 0.4, 0.0], [0.99, 0.99, 0.99])
        lane = npdc_iteration(unit_lane(3), evaluator, block)
        assert spy.call_args.args[0].tolist() == pytest.approx([1.3, 1.4, 0.8])
        # Worse than the parent: reverted
        assert lane.fb == 3.0
        assert lane.best.tolist() == [1.0, 1.0, 1.0]

    def test_rejected_offspring_not_adapted(self, make_block):
        block = make_block([0.9] * 10, [-0.5] * 10, [0.0] * 10, [0.9] * 10)
        kept = npdc_iteration(
            unit_lane(10, ps=0.5), Evaluator(centered_sphere(10), EvaluationBudget()), block, update_rejected=False
        )
        assert kept.fb == 10.0
        assert kept.sigma.tolist() == [1.0] * 10
        assert kept.model.ps.tolist() == [0.5] * 10

        adapted = npdc_iteration(
            unit_lane(10, ps=0.5), Evaluator(centered_sphere(10), EvaluationBudget()), block, update_rejected=True
        )
        assert adapted.sigma == pytest.approx(np.full(10, FAILURE_FACTOR))
        assert adapted.model.ps == pytest.approx(np.full(10, 0.5 * FAILURE_FACTOR))

    def test_default_adapts_only_entered_variables(self, make_block):
        evaluator = Evaluator(centered_sphere(2), EvaluationBudget())
        block = make_block([0.9] * 2, [-0.5] * 2, [0.0] * 2, [0.1, 0.9])
        lane = npdc_iteration(unit_lane(2, ps=0.5), evaluator, block)
        assert lane.best.tolist() == [0.5, 1.0]
        assert lane.fb == 1.25
        assert lane.sigma.tolist() == pytest.approx([SUCCESS_FACTOR, 1.0])
        assert lane.model.ps.tolist() == pytest.approx([0.5 * SUCCESS_FACTOR, 0.5])

    def test_pinned_variable_adapts_after_stepping_inward(self, make_block):
        evaluator = Evaluator(centered_sphere(2), EvaluationBudget())
        lane = replace(unit_lane(2), best=np.array([100.0, 1.0]), fb=10001.0)

        pinned = npdc_iteration(lane, evaluator, make_block([0.9] * 2, [0.5, -0.5], [0.0] * 2))
        assert pinned.best.tolist() == [100.0, 0.5]
        assert pinned.sigma.tolist() == pytest.approx([1.0, SUCCESS_FACTOR])

        inward = npdc_iteration(pinned, evaluator, make_block([0.9] * 2, [-0.5, 0.0], [0.0] * 2))
        assert inward.best[0] == 99.5
        assert inward.sigma[0] == pytest.approx(SUCCESS_FACTOR)

    def test_random_meta_keeps_probabilities(self, make_block):
        evaluator = Evaluator(centered_sphere(3), EvaluationBudget())
        lane = unit_lane(3, ps=0.5, pl=0.5)
        block = make_block([0.9] * 3, [-0.5] * 3, [0.0] * 3, [0.1] * 3)
        updated = npdc_iteration(lane, evaluator, block, variant=NPDCVariant.RANDOM_META)
        assert updated.model.ps.tolist() == [0.5] * 3
        assert updated.meta_updates == 0
        assert updated.fb == 0.75

    def test_budget_exhausted(self, make_block):
        evaluator = Evaluator(centered_sphere(2), EvaluationBudget(0))
        with pytest.raises(BudgetExhaustedException):
            npdc_iteration(unit_lane(2), evaluator, make_block([0.9] * 2, [0.0] * 2, [0.0] * 2))
        assert evaluator.budget.consumed == 0

    def test_invariants_over_many_iterations(self, sphere_problem, stream):
        evaluator = Evaluator(sphere_problem, EvaluationBudget())
        lane = initial_lane(0, evaluator, stream.uniform(10))
        floor = probability_floor(10)
        for _ in range(300):
            previous = lane.fb
            lane = npdc_iteration(lane, evaluator, stream.block(10))
            assert lane.fb <= previous
            assert np.all((lane.model.ps >= floor) & (lane.model.ps <= 1.0))
            assert np.all((lane.model.pl >= floor) & (lane.model.pl <= 1.0))
            assert np.all(lane.sigma > 0)
            assert np.all((lane.best >= sphere_problem.lower) & (lane.best <= sphere_problem.upper))
            assert lane.fb == sphere_problem.evaluate(lane.best)

    def test_chunking_does_not_change_lane(self, sphere_problem):
        results = []
        for workers in (1, 3, 10):
            evaluator = Evaluator(sphere_problem, EvaluationBudget())
            stream = RngStream(21, (0,))
            lane = initial_lane(0, evaluator, stream.uniform(10))
            with VariableChunker(10, workers) as chunker:
                for _ in range(50):
                    lane = npdc_iteration(lane, evaluator, stream.block(10), chunker)
            results.append(lane)
        for other in results[1:]:
            assert np.array_equal(other.best, results[0].best)
            assert np.array_equal(other.model.ps, results[0].model.ps)
            assert other.fb == results[0].fb


class TestVariableChunker:
    def test_slices_cover_dimension(self):
        chunker = VariableChunker(10, 3)
        covered = [i for chunk in chunker.slices for i in range(10)[chunk]]
        assert covered == list(range(10))
        assert len(chunker.slices) == 3

    def test_more_workers_than_variables(self):
        assert len(VariableChunker(2, 8).slices) == 2

    def test_threads_mode(self):
        seen = []
        with VariableChunker(6, 3, SpeedupMode.THREADS) as chunker:
            chunker.run(lambda chunk: seen.append((chunk.start, chunk.stop)))
        assert sorted(seen) == [(0, 2), (2, 4), (4, 6)]

    def test_parallel_time_not_above_wall(self):
        chunker = VariableChunker(4, 2)
        chunker.run(lambda chunk: None)
        assert chunker.parallel_time(1.0) <= 1.0


class TestRunNPDC:
    def test_consumed_matches_iterations(self, sphere_problem):
        record = run_npdc(sphere_problem, 31, lanes=3, seed=2)
        assert record.consumed == 31
        assert record.consumed == 3 + record.timing.iteration_count
        assert record.diagnostics["rounds"] == 10.0

    def test_worker_count_independent(self, sphere_problem):
        records = [run_npdc(sphere_problem, 600, lanes=2, seed=4, workers=w) for w in (1, 2, 8)]
        records.append(run_npdc(sphere_problem, 600, lanes=2, seed=4, workers=8, mode=SpeedupMode.THREADS))
        for other in records[1:]:
            assert other.trajectory == records[0].trajectory
            assert other.final_error == records[0].final_error

    def test_final_error_is_best_lane(self, sphere_problem):
        record = run_npdc(sphere_problem, 400, lanes=4, seed=6, interval=50)
        assert record.final_error == record.trajectory[-1].best_error
        counts = [p.evaluations for p in record.trajectory]
        assert counts == sorted(set(counts))
        assert counts[0] == 4

    def test_lanes_do_not_interact(self, sphere_problem):
        single = run_npdc(sphere_problem, 101, lanes=1, seed=5)
        paired = run_npdc(sphere_problem, 202, lanes=2, seed=5)
        assert paired.final_error <= single.final_error

    def test_random_meta_never_updates(self, sphere_problem, mocker):
        spy = mocker.spy(lane_module, "meta_update")
        record = run_npdc(sphere_problem, 200, seed=1, variant=NPDCVariant.RANDOM_META)
        assert spy.call_count == 0
        assert record.diagnostics["meta_update_calls"] == 0.0
        assert record.algo == "NPDC-random"

    def test_standard_updates(self, sphere_problem, mocker):
        spy = mocker.spy(lane_module, "meta_update")
        record = run_npdc(sphere_problem, 200, seed=1)
        assert spy.call_count == 199
        assert record.diagnostics["meta_update_calls"] == 199.0

    def test_deterministic(self, grouped_problem):
        first = run_npdc(grouped_problem, 500, lanes=2, seed=11)
        second = run_npdc(grouped_problem, 500, lanes=2, seed=11)
        assert first.deterministic_view() == second.deterministic_view()

    @pytest.mark.parametrize("budget, lanes, workers", [(3, 2, 1), (10, 0, 1), (10, 1, 0)])
    def test_invalid_arguments(self, sphere_problem, budget, lanes, workers):
        with pytest.raises(ConfigurationException):
            run_npdc(sphere_problem, budget, lanes=lanes, workers=workers)


@pytest.mark.slow
def test_invariants_over_ten_thousand_iterations(stream):
    from app.services.problems import make_problem

    problem = make_problem("fully-separable", "elliptic", 10, seed=9)
    evaluator = Evaluator(problem, EvaluationBudget(10_001))
    lane = initial_lane(0, evaluator, stream.uniform(10))
    floor = probability_floor(10)
    for _ in range(10_000):
        previous = lane.fb
        lane = npdc_iteration(lane, evaluator, stream.block(10))
        assert lane.fb <= previous
        assert np.all((lane.model.ps >= floor) & (lane.model.ps <= 1.0))
        assert np.all((lane.model.pl >= floor) & (lane.model.pl <= 1.0))
        assert np.all(lane.sigma > 0)
        assert np.all((lane.best >= problem.lower) & (lane.best <= problem.upper))
    assert lane.fb == problem.evaluate(lane.best)
    assert evaluator.budget.consumed == 10_001
    assert evaluator.budget.exhausted


@pytest.mark.slow
@pytest.mark.parametrize("base", ["sphere", "elliptic"])
def test_npdc_solves_separable(base):
    from app.services.problems import make_problem

    problem = make_problem("fully-separable", base, 100, seed=1)
    errors = [run_npdc(problem, 200_000, seed=s).final_error for s in range(10)]
    assert np.mean(errors) < 1e-8


@pytest.mark.slow
@pytest.mark.parametrize("base", ["sphere", "elliptic"])
def test_meta_model_beats_random_meta(base):
    from app.services.analysis import rank_sum_test
    from app.services.problems import make_problem

    problem = make_problem("fully-separable", base, 100, seed=1)
    standard = [run_npdc(problem, 100_000, seed=s).final_error for s in range(20)]
    pinned = [
        run_npdc(problem, 100_000, seed=s, variant=NPDCVariant.RANDOM_META).final_error for s in range(20)
    ]
    assert np.mean(standard) < np.mean(pinned)
    assert rank_sum_test(standard, pinned).p_value < 0.05


@pytest.mark.slow
def test_npdc_not_worse_than_natural_grouping_on_mixed_suite():
    from app.services.analysis import wdl_summary
    from app.services.cc import run_cc
    from app.services.problems import make_problem

    suite = [
        make_problem("fully-separable", "sphere", 100, seed=21),
        make_problem("fully-separable", "rastrigin", 100, seed=22),
        make_problem("single-group-nonseparable", "elliptic", 100, group_size=10, seed=23),
        make_problem("half-group-nonseparable", "ackley", 100, group_size=10, seed=24),
        make_problem("fully-nonseparable", "schwefel-1.2", 100, seed=25),
        make_problem("fully-nonseparable", "rosenbrock", 100, seed=26),
    ]
    results = {
        problem.name: (
            [run_npdc(problem, 100_000, seed=s).final_error for s in range(20)],
            [run_cc(problem, "natural", "serial", 100_000, seed=s).final_error for s in range(20)],
        )
        for problem in suite
    }
    summary = wdl_summary(results, alpha=0.05)
    assert summary.wins + summary.draws >= 4
