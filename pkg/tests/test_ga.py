import dataclasses

import numpy as np
import pytest

from floodga import ga
from floodga.errors import ConfigError, LengthMismatch
from floodga.ga import GaConfig, crossover, mutate, random_population, tournament_select
from floodga.genome import decode
from floodga.hazard import HazardGrid, default_grid, load_grid
from floodga.objective import CostParams
from floodga.problem import Problem
from floodga.weights import builtin_aspect_scheme


class ScriptedRng:
    """Stands in for a Generator where a test needs particular draws."""

    def __init__(self, draws):
        self.draws = list(draws)

    def integers(self, low, high=None, size=None):
        out = self.draws.pop(0)
        return np.asarray(out)


def gen(seed=0):
    return np.random.default_rng(seed)


def test_random_population_shape_and_determinism():
    cfg = GaConfig(population_size=10)
    a = random_population(cfg, 504, gen(7))
    assert a.shape == (10, 504) and a.dtype == np.uint8
    assert np.array_equal(a, random_population(cfg, 504, gen(7)))


def test_random_population_is_fair():
    pop = random_population(GaConfig(population_size=20), 500, gen(1))
    assert pop.size == 10_000
    assert 0.47 <= pop.mean() <= 0.53


def test_tournament_covering_draw_returns_best():
    pop = np.arange(5, dtype=np.uint8)[:, None]
    fit = np.array([3.0, 1.0, 4.0, 0.5, 2.0])
    rng = ScriptedRng([[0, 1, 2, 3, 4]])
    assert tournament_select(pop, fit, 5, rng)[0] == 3


def test_tournament_large_k_seeded_finds_best():
    pop = np.arange(5, dtype=np.uint8)[:, None]
    fit = np.array([3.0, 1.0, 4.0, 0.5, 2.0])
    assert tournament_select(pop, fit, 200, gen(2))[0] == 3


def test_tournament_tie_goes_to_lowest_index():
    pop = np.array([[0], [1]], dtype=np.uint8)
    fit = np.array([1.0, 1.0])
    assert tournament_select(pop, fit, 2, ScriptedRng([[1, 0]]))[0] == 0


def test_tournament_k1_is_uniform():
    pop = np.arange(4, dtype=np.uint8)[:, None]
    fit = np.array([0.0, 1.0, 2.0, 3.0])
    rng = gen(9)
    counts = np.bincount([tournament_select(pop, fit, 1, rng)[0] for _ in range(8000)], minlength=4)
    # each expected 2000 with sd ~39
    assert np.all(np.abs(counts - 2000) < 200)


def test_crossover_rate_zero_copies():
    a, b = np.zeros(20, np.uint8), np.ones(20, np.uint8)
    c1, c2 = crossover(a, b, GaConfig(crossover_rate=0.0), gen())
    assert np.array_equal(c1, a) and np.array_equal(c2, b)


def test_single_point_structure():
    a, b = np.zeros(30, np.uint8), np.ones(30, np.uint8)
    rng = gen(4)
    for _ in range(100):
        c1, c2 = crossover(a, b, GaConfig(crossover_rate=1.0), rng)
        p = int(np.argmax(c1 == 1))
        assert 1 <= p <= 29
        assert np.array_equal(c1, np.r_[np.zeros(p), np.ones(30 - p)])
        assert np.array_equal(c2, 1 - c1)


@pytest.mark.parametrize("kind", [ga.SINGLE_POINT, ga.UNIFORM])
def test_children_bits_come_from_parents(kind):
    rng = gen(5)
    cfg = GaConfig(crossover_rate=1.0, crossover_kind=kind)
    for _ in range(200):
        a, b = rng.integers(0, 2, (2, 40), dtype=np.uint8)
        c1, c2 = crossover(a, b, cfg, rng)
        assert c1.shape == a.shape and c2.shape == a.shape
        assert np.all((c1 == a) | (c1 == b)) and np.all((c2 == a) | (c2 == b))
        # where parents differ, the two children take opposite parents
        diff = a != b
        assert np.array_equal(c1[diff], 1 - c2[diff])


def test_crossover_length_mismatch():
    with pytest.raises(LengthMismatch):
        crossover(np.zeros(4, np.uint8), np.zeros(5, np.uint8), GaConfig(), gen())


def test_mutate_extremes():
    g = gen(3).integers(0, 2, 50, dtype=np.uint8)
    assert np.array_equal(mutate(g, 0.0, gen()), g)
    assert np.array_equal(mutate(g, 1.0, gen()), 1 - g)


def test_mutate_expected_flips():
    rng = gen(8)
    g = np.zeros(504, np.uint8)
    flips = [mutate(g, 1 / 504, rng).sum() for _ in range(10_000)]
    assert 0.9 <= np.mean(flips) <= 1.1


def _small_problem(**cost):
    return Problem(load_grid("2 1\n1 1/2"), builtin_aspect_scheme(), CostParams(**cost),
                   active=("URBANIZATION", "MORTALITY", "POVERTY"))


def test_run_is_deterministic():
    p = _small_problem()
    cfg = GaConfig(population_size=30, generations=40, rng_seed=11)
    a, b = ga.run(p, cfg), ga.run(p, cfg)
    assert a.best_genome == b.best_genome
    assert a.best_fitness == b.best_fitness
    assert np.array_equal(a.history_best, b.history_best)
    assert np.array_equal(a.history_mean, b.history_mean)


def test_different_seeds_differ():
    p = Problem(default_grid(), builtin_aspect_scheme())
    a = ga.run(p, GaConfig(population_size=20, generations=5, rng_seed=1))
    b = ga.run(p, GaConfig(population_size=20, generations=5, rng_seed=2))
    assert not np.array_equal(a.history_mean, b.history_mean)


def test_lambda_zero_single_cell_goes_to_zero():
    p = Problem(HazardGrid([[1.0]]), builtin_aspect_scheme(), CostParams(lam=0.0))
    r = ga.run(p, GaConfig(population_size=40, generations=60, rng_seed=0))
    assert decode(r.best_genome).cells.tolist() == [[0] * 7]
    assert r.best_fitness == 0.0


def test_history_monotone_with_elitism():
    p = Problem(default_grid(), builtin_aspect_scheme())
    r = ga.run(p, GaConfig(population_size=40, generations=80, elitism_count=1, rng_seed=3))
    assert len(r.history_best) == 81
    assert np.all(np.diff(r.history_best) <= 0)


def test_best_fitness_self_consistent():
    p = Problem(default_grid(), builtin_aspect_scheme())
    r = ga.run(p, GaConfig(population_size=30, generations=30, elitism_count=0, rng_seed=5))
    assert r.best_fitness == p.evaluate(decode(r.best_genome)).total
    # best-ever is kept even without elitism
    assert r.best_fitness == pytest.approx(r.history_best.min(), rel=1e-12)
    assert len(r.best_genome) == 504
    assert r.rng_algorithm == "numpy.random.PCG64"


def test_stall_stops_early():
    p = _small_problem()
    r = ga.run(p, GaConfig(population_size=50, generations=500, stall_generations=10, rng_seed=0))
    assert r.generations_run < 500
    assert r.generations_run - r.best_generation == 10


@pytest.mark.parametrize("bad", [
    dict(elitism_count=10, population_size=10),
    dict(crossover_rate=1.5),
    dict(mutation_rate=-0.1),
    dict(tournament_size=0),
    dict(crossover_kind="two_point"),
    dict(stall_generations=0),
    dict(rng_seed=-1),
])
def test_config_errors(bad):
    with pytest.raises(ConfigError):
        ga.run(_small_problem(), dataclasses.replace(GaConfig(), **bad))


def test_config_from_json():
    cfg = GaConfig.from_json({"population_size": 12}, rng_seed=4)
    assert cfg.population_size == 12 and cfg.rng_seed == 4
    with pytest.raises(ConfigError):
        GaConfig.from_json({"popsize": 12})


def test_reduced_problem_keeps_inactive_fixed():
    p = _small_problem()
    r = ga.run(p, GaConfig(population_size=20, generations=10, rng_seed=1))
    city = decode(r.best_genome)
    for k in (1, 4, 5, 6):
        assert (city.component(k) == 3).all()
    assert len(r.best_bits) == p.n_bits == 24
