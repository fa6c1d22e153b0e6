"""Seeded, deterministic bitstring GA minimizing the city objective.

Generational scheme: evaluate, copy the ``elitism_count`` best unchanged,
fill the rest with tournament-selected parents recombined and mutated.
All randomness comes from one ``numpy.random.Generator`` (PCG64) seeded
from ``GaConfig.rng_seed``, consumed in a fixed order, so a run is a pure
function of the problem and the config.
"""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, LengthMismatch
from .genome import PackedGenome, encode
from .problem import Problem

RNG_ALGORITHM = "numpy.random.PCG64"

SINGLE_POINT = "single_point"
UNIFORM = "uniform"


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 200
    generations: int = 500
    crossover_rate: float = 0.8
    mutation_rate: float | None = None  # None -> 1 / genome length
    tournament_size: int = 2
    elitism_count: int = 2
    crossover_kind: str = SINGLE_POINT
    rng_seed: int = 0
    stall_generations: int | None = None

    def validate(self) -> None:
        if self.population_size < 1:
            raise ConfigError("population_size must be >= 1")
        if self.generations < 0:
            raise ConfigError("generations must be >= 0")
        if not 0 <= self.crossover_rate <= 1:
            raise ConfigError("crossover_rate must lie in [0, 1]")
        if self.mutation_rate is not None and not 0 <= self.mutation_rate <= 1:
            raise ConfigError("mutation_rate must lie in [0, 1]")
        if self.tournament_size < 1:
            raise ConfigError("tournament_size must be >= 1")
        if not 0 <= self.elitism_count < self.population_size:
            raise ConfigError("elitism_count must satisfy 0 <= elitism_count < population_size")
        if self.crossover_kind not in (SINGLE_POINT, UNIFORM):
            raise ConfigError(f"crossover_kind must be {SINGLE_POINT!r} or {UNIFORM!r}")
        if self.stall_generations is not None and self.stall_generations < 1:
            raise ConfigError("stall_generations must be >= 1 when set")
        if not 0 <= self.rng_seed < 2 ** 64:
            raise ConfigError("rng_seed must be an unsigned 64-bit integer")

    def effective_mutation_rate(self, n_bits: int) -> float:
        return 1.0 / n_bits if self.mutation_rate is None else self.mutation_rate

    @classmethod
    def from_json(cls, doc: dict | None, **overrides) -> "GaConfig":
        doc = dict(doc or {})
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(doc) - names
        if unknown:
            raise ConfigError(f"unknown GA parameter(s): {sorted(unknown)}")
        doc.update(overrides)
        cfg = cls(**doc)
        cfg.validate()
        return cfg

    def to_json(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True, eq=False)
class RunResult:
    best_genome: PackedGenome
    best_bits: np.ndarray
    best_fitness: float
    history_best: np.ndarray
    history_mean: np.ndarray
    config: GaConfig
    scheme_name: str
    seed: int
    rng_algorithm: str = RNG_ALGORITHM
    best_generation: int = 0
    problem: Problem | None = field(default=None, repr=False)

    @property
    def generations_run(self) -> int:
        return len(self.history_best) - 1


def random_population(cfg: GaConfig, n_bits: int, rng: np.random.Generator) -> np.ndarray:
    """``population_size`` genomes of ``n_bits`` independent fair bits, as a uint8 matrix."""
    return rng.integers(0, 2, size=(cfg.population_size, n_bits), dtype=np.uint8)


def tournament_select(pop: np.ndarray, fitnesses: np.ndarray, k: int,
                      rng: np.random.Generator) -> np.ndarray:
    """Draw ``k`` members with replacement; the fittest wins, ties to the lowest index."""
    idx = rng.integers(0, len(pop), size=k)
    fit = np.asarray(fitnesses)[idx]
    order = np.lexsort((idx, fit))
    return pop[idx[order[0]]]


def crossover(a: np.ndarray, b: np.ndarray, cfg: GaConfig,
              rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    if a.shape != b.shape:
        raise LengthMismatch(f"parents differ in length: {a.shape} vs {b.shape}")
    n = a.shape[0]
    if rng.random() >= cfg.crossover_rate or n < 2:
        return a.copy(), b.copy()
    if cfg.crossover_kind == UNIFORM:
        mask = rng.random(n) < 0.5
        return np.where(mask, a, b), np.where(mask, b, a)
    cut = int(rng.integers(1, n))
    return (np.concatenate([a[:cut], b[cut:]]),
            np.concatenate([b[:cut], a[cut:]]))


def mutate(g: np.ndarray, rate: float, rng: np.random.Generator) -> np.ndarray:
    flips = rng.random(g.shape[0]) < rate
    return g ^ flips.astype(g.dtype)


def run(problem: Problem, cfg: GaConfig | None = None) -> RunResult:
    cfg = cfg or GaConfig()
    cfg.validate()
    rng = np.random.Generator(np.random.PCG64(cfg.rng_seed))
    n_bits = problem.n_bits
    rate = cfg.effective_mutation_rate(n_bits)
    n_pop = cfg.population_size

    pop = random_population(cfg, n_bits, rng)
    fit = problem.fitness_batch(pop)

    best_i = int(np.argmin(fit))
    best_bits, best_fit, best_gen = pop[best_i].copy(), float(fit[best_i]), 0
    hist_best, hist_mean = [float(fit.min())], [float(fit.mean())]
    stall = 0

    for gen in range(1, cfg.generations + 1):
        order = np.argsort(fit, kind="stable")
        children = [pop[i].copy() for i in order[:cfg.elitism_count]]
        while len(children) < n_pop:
            a = tournament_select(pop, fit, cfg.tournament_size, rng)
            b = tournament_select(pop, fit, cfg.tournament_size, rng)
            c1, c2 = crossover(a, b, cfg, rng)
            children.append(mutate(c1, rate, rng))
            if len(children) < n_pop:
                children.append(mutate(c2, rate, rng))
        pop = np.stack(children)
        fit = problem.fitness_batch(pop)

        gen_best = int(np.argmin(fit))
        hist_best.append(float(fit[gen_best]))
        hist_mean.append(float(fit.mean()))
        if fit[gen_best] < best_fit:
            best_bits, best_fit, best_gen = pop[gen_best].copy(), float(fit[gen_best]), gen
            stall = 0
        else:
            stall += 1
        if cfg.stall_generations is not None and stall >= cfg.stall_generations:
            break

    city = problem.city_from_bits(best_bits)
    return RunResult(
        best_genome=encode(city),
        best_bits=best_bits,
        best_fitness=problem.evaluate(city).total,
        history_best=np.array(hist_best),
        history_mean=np.array(hist_mean),
        config=cfg,
        scheme_name=problem.scheme.name,
        seed=cfg.rng_seed,
        best_generation=best_gen,
        problem=problem,
    )
