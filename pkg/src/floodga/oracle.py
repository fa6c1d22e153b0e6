"""Exact optima for checking the GA and the objective.

Two independent routes:

* :func:`exhaustive_best` enumerates every search genome of a (small) problem
  and evaluates the whole-city objective on each.
* :func:`separable_best` uses the fact that the objective is a sum of
  per-cell terms and minimizes every cell on its own, which makes the full
  6x6, 7-component optimum exact and cheap.

Both break ties towards the smallest genome read as an MSB-first unsigned
integer.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import TooLarge
from .genome import CityGenotype
from .hazard import HazardGrid
from .problem import Problem

MAX_EXHAUSTIVE_BITS = 26
MAX_CELL_BITS = 14
_CHUNK = 1 << 15

# Exhaustive search runs on reduced problems; the type is the general one.
ReducedProblem = Problem


@dataclass(frozen=True, eq=False)
class OracleResult:
    bits: np.ndarray
    city: CityGenotype
    fitness: float
    evaluated: int


def _int_to_bits(values: np.ndarray, n_bits: int) -> np.ndarray:
    shifts = np.arange(n_bits - 1, -1, -1, dtype=np.int64)
    return ((values[:, None] >> shifts) & 1).astype(np.uint8)


def exhaustive_best(problem: Problem, chunk: int = _CHUNK) -> OracleResult:
    """Evaluate all ``2**n_bits`` search genomes and return the best."""
    n = problem.n_bits
    if n > MAX_EXHAUSTIVE_BITS:
        raise TooLarge(
            f"{n} search bits exceed the exhaustive cap of {MAX_EXHAUSTIVE_BITS}; "
            "reduce the grid or the active components, or use separable mode"
        )
    total = 1 << n
    best_val, best_fit = -1, np.inf
    for start in range(0, total, chunk):
        values = np.arange(start, min(start + chunk, total), dtype=np.int64)
        fit = problem.fitness_batch(_int_to_bits(values, n))
        i = int(np.argmin(fit))
        if fit[i] < best_fit:
            best_fit, best_val = float(fit[i]), int(values[i])
    bits = _int_to_bits(np.array([best_val], dtype=np.int64), n)[0]
    city = problem.city_from_bits(bits)
    return OracleResult(bits, city, problem.evaluate(city).total, total)


def _cell_problem(problem: Problem, r: int, c: int) -> Problem:
    return problem.with_grid(HazardGrid(problem.grid.mult[r:r + 1, c:c + 1]))


def _best_cell_bits(problem: Problem, r: int, c: int) -> np.ndarray:
    return exhaustive_best(_cell_problem(problem, r, c)).bits


def separable_best(problem: Problem, workers: int = 1) -> OracleResult:
    """Concatenate per-cell optima; exact because the objective is cell-separable."""
    if problem.bits_per_cell > MAX_CELL_BITS:
        raise TooLarge(f"{problem.bits_per_cell} bits per cell exceed {MAX_CELL_BITS}")
    coords = [(r, c) for r in range(problem.grid.rows) for c in range(problem.grid.cols)]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda rc: _best_cell_bits(problem, *rc), coords))
    else:
        parts = [_best_cell_bits(problem, r, c) for r, c in coords]
    bits = np.concatenate(parts)
    city = problem.city_from_bits(bits)
    evaluated = len(coords) * (1 << problem.bits_per_cell)
    return OracleResult(bits, city, problem.evaluate(city).total, evaluated)


@dataclass(frozen=True)
class SeparabilityReport:
    agree: bool
    same_genome: bool
    exhaustive_fitness: float
    separable_fitness: float
    abs_gap: float


def verify_separability(problem: Problem, tol: float = 1e-9) -> SeparabilityReport:
    """Check full enumeration against per-cell enumeration."""
    full = exhaustive_best(problem)
    per_cell = separable_best(problem)
    gap = abs(full.fitness - per_cell.fitness)
    same = bool(np.array_equal(full.bits, per_cell.bits))
    return SeparabilityReport(
        agree=same and gap <= tol,
        same_genome=same,
        exhaustive_fitness=full.fitness,
        separable_fitness=per_cell.fitness,
        abs_gap=gap,
    )
