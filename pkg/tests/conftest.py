"""
Shared test fixtures
"""

import numpy as np
import pytest

from app.services.problems import EvaluationBudget, Evaluator, make_problem
from app.services.search_kernel import DrawBlock, RngStream
from app.utils.benchmark_constants import BaseFunction, StructureClass
from tests.fixtures.problems import centered_sphere


@pytest.fixture
def sphere_problem():
    """Shifted separable sphere, D=10"""
    return make_problem(StructureClass.FULLY_SEPARABLE, BaseFunction.SPHERE, 10, seed=1)


@pytest.fixture
def elliptic_problem():
    return make_problem(StructureClass.FULLY_SEPARABLE, BaseFunction.ELLIPTIC, 10, seed=2)


@pytest.fixture
def grouped_problem():
    """Rotated rastrigin in two groups of 5, D=10"""
    return make_problem(StructureClass.K_GROUP, BaseFunction.RASTRIGIN, 10, group_size=5, seed=3)


@pytest.fixture
def stream():
    return RngStream.from_seed(12345)


@pytest.fixture
def make_evaluator():
    def factory(problem, limit=None):
        return Evaluator(problem, EvaluationBudget(limit))
    return factory


@pytest.fixture
def make_block():
    """Build a DrawBlock from plain lists"""
    def factory(choice, normal, cauchy, accept=None):
        accept = [0.0] * len(choice) if accept is None else accept
        return DrawBlock(*(np.asarray(row, dtype=float) for row in (choice, normal, cauchy, accept)))
    return factory


@pytest.fixture
def output_dir(tmp_path):
    path = tmp_path / "results"
    path.mkdir()
    return path


@pytest.fixture
def origin_sphere():
    """Sphere with the optimum at the origin and identity permutation, D=2"""
    return centered_sphere(2)
