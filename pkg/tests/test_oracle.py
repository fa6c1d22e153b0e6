import dataclasses
import time

import numpy as np
import pytest

import reference
from floodga import ga, oracle
from floodga.errors import TooLarge
from floodga.genome import encode
from floodga.hazard import HazardGrid, default_grid, load_grid, uniform_grid
from floodga.objective import CostParams
from floodga.problem import Problem
from floodga.weights import builtin_aspect_scheme, builtin_einarsson_scheme

ASPECT = builtin_aspect_scheme()

# Minimum of the 1x1, multiplier-1, aspect-scheme, default-cost problem over all
# 2^14 cells; frozen from the plain-Python brute force in reference.py.
ONE_CELL_OPT = 2.2276066108957355
ONE_CELL_LEVELS = [1, 0, 2, 2, 0, 0, 2]
# Full 6x6 default problem: 16 cells at multiplier 2, 14 at 1, 6 at 1/2.
FULL_OPT_ASPECT = 85.47510712099572
FULL_OPT_EINARSSON = 78.30901856763926


def one_cell(**kw):
    return Problem(HazardGrid([[1.0]]), ASPECT, CostParams(**kw))


def test_reference_brute_force_matches_frozen_fixture():
    f, levels = reference.best_cell(1.0, reference.ASPECT_W)
    assert f == pytest.approx(ONE_CELL_OPT, rel=1e-14)
    assert list(levels) == ONE_CELL_LEVELS


def test_single_cell_lambda_zero():
    best = oracle.exhaustive_best(one_cell(lam=0.0))
    assert best.city.cells.tolist() == [[0] * 7]
    assert best.fitness == 0.0
    assert best.evaluated == 2 ** 14


def test_single_cell_default_fixture():
    best = oracle.exhaustive_best(one_cell())
    assert best.fitness == pytest.approx(ONE_CELL_OPT, rel=1e-14)
    assert best.city.cells.tolist() == [ONE_CELL_LEVELS]


def test_huge_lambda_prefers_no_improvement():
    best = oracle.exhaustive_best(one_cell(lam=1e6))
    assert best.city.cells.tolist() == [[3] * 7]


def test_symmetric_problem_gives_identical_cells():
    p = Problem(uniform_grid(2, 2), ASPECT, active=("URBANIZATION", "LITERACY", "TV_RADIO"))
    cells = oracle.exhaustive_best(p).city.cells
    assert all((c == cells[0]).all() for c in cells)


def test_tie_break_smallest_genome():
    # zero weight on literacy and no cost curve on it: every literacy level ties
    from floodga.weights import normalize
    scheme = normalize([1, 0, 0, 0, 0, 0, 0])
    cost = CostParams(curves=("exponential",) + ("linear",) * 6, linear_slope=0.0,
                      interaction_coeff=0.0, lam=1.0)
    p = Problem(HazardGrid([[1.0]]), scheme, cost, active=("URBANIZATION", "LITERACY"))
    best = oracle.exhaustive_best(p)
    assert best.bits[2:4].tolist() == [0, 0]


def test_exhaustive_matches_reference_on_reduced_2x2():
    grid = load_grid("2 1\n1 1/2")
    p = Problem(grid, ASPECT, active=("URBANIZATION", "MORTALITY", "POVERTY"))
    best = oracle.exhaustive_best(p)
    expected = sum(reference.best_cell(m, reference.ASPECT_W, active=[0, 2, 3])[0]
                   for m in grid.mult.ravel())
    assert best.fitness == pytest.approx(expected, rel=1e-12)


def test_separability_agreement_small():
    for lam in (0.0, 0.7, 3.0, 20.0):
        p = Problem(load_grid("2 1/2"), ASPECT, CostParams(lam=lam),
                    active=("POVERTY", "MORTALITY", "LITERACY"))
        rep = oracle.verify_separability(p)
        assert rep.agree, rep


def test_separability_single_cell_all_components():
    assert oracle.verify_separability(one_cell()).agree


@pytest.mark.parametrize("scheme, expected", [
    (builtin_aspect_scheme(), FULL_OPT_ASPECT),
    (builtin_einarsson_scheme(), FULL_OPT_EINARSSON),
])
def test_full_problem_separable_optimum(scheme, expected):
    best = oracle.separable_best(Problem(default_grid(), scheme))
    assert best.fitness == pytest.approx(expected, rel=1e-12)
    assert best.evaluated == 36 * 2 ** 14


def test_full_problem_reference_cross_check():
    expected = sum(reference.best_cell(m, reference.ASPECT_W)[0] for m in (2.0, 1.0, 0.5)
                   for _ in range({2.0: 16, 1.0: 14, 0.5: 6}[m]))
    assert FULL_OPT_ASPECT == pytest.approx(expected, rel=1e-12)


def test_separable_thread_count_invariance():
    p = Problem(default_grid(), ASPECT)
    a = oracle.separable_best(p, workers=1)
    b = oracle.separable_best(p, workers=4)
    assert a.fitness == b.fitness
    assert np.array_equal(a.bits, b.bits)


def test_too_large():
    with pytest.raises(TooLarge):
        oracle.exhaustive_best(Problem(default_grid(), ASPECT))
    p = Problem(uniform_grid(2, 2), ASPECT, active=("URBANIZATION", "LITERACY", "MORTALITY", "POVERTY"))
    assert p.n_bits == 32
    with pytest.raises(TooLarge):
        oracle.exhaustive_best(p)


def test_oracle_lower_bounds_ga():
    p = Problem(default_grid(), ASPECT)
    best = oracle.separable_best(p)
    for seed in range(3):
        r = ga.run(p, ga.GaConfig(population_size=40, generations=40, rng_seed=seed))
        assert best.fitness <= r.best_fitness


def test_oracle_genome_matches_city():
    p = Problem(default_grid(), ASPECT)
    best = oracle.separable_best(p)
    assert np.array_equal(encode(best.city).bits, best.bits)
