"""Search problem definition shared by the GA and the exhaustive oracle."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DimMismatch
from .genome import (
    BITS_PER_LEVEL,
    COMPONENTS,
    MAX_LEVEL,
    N_COMPONENTS,
    CityGenotype,
    ComponentId,
    bits_to_levels,
    component_from_name,
    levels_to_bits,
)
from .hazard import HazardGrid
from .objective import CostParams, ObjectiveBreakdown, batch_fitness, total_fitness
from .weights import WeightScheme


@dataclass(frozen=True)
class Problem:
    """A grid, a weight scheme and cost parameters, optionally with a reduced search space.

    Only the ``active`` components are searched; the others are pinned to
    ``fixed_level`` (3 by default, which costs nothing). The search genome is
    cell-major and, within a cell, lists the active components in ComponentId
    order, two bits each, MSB first. With all seven components active it is
    exactly the packed genome of the city.
    """

    grid: HazardGrid
    scheme: WeightScheme
    cost: CostParams = field(default_factory=CostParams)
    active: tuple[ComponentId, ...] = COMPONENTS
    fixed_level: int = MAX_LEVEL

    def __post_init__(self):
        active = tuple(sorted({component_from_name(k) for k in self.active}))
        if not active:
            raise ConfigError("at least one component must be active")
        if not 0 <= self.fixed_level <= MAX_LEVEL:
            raise ConfigError("fixed_level must lie in 0..3")
        object.__setattr__(self, "active", active)

    @property
    def dims(self) -> tuple[int, int]:
        return self.grid.dims

    @property
    def n_cells(self) -> int:
        return self.grid.rows * self.grid.cols

    @property
    def bits_per_cell(self) -> int:
        return len(self.active) * BITS_PER_LEVEL

    @property
    def n_bits(self) -> int:
        return self.n_cells * self.bits_per_cell

    def levels_from_bits(self, bits: np.ndarray) -> np.ndarray:
        """Map search bits ``(..., n_bits)`` to full levels ``(..., rows, cols, 7)``."""
        bits = np.asarray(bits)
        if bits.shape[-1] != self.n_bits:
            raise DimMismatch(f"expected {self.n_bits} search bits, got {bits.shape[-1]}")
        lead = bits.shape[:-1]
        active_levels = bits_to_levels(bits.reshape(*lead, self.n_cells, self.bits_per_cell))
        full = np.full((*lead, self.n_cells, N_COMPONENTS), self.fixed_level, dtype=np.int8)
        full[..., list(self.active)] = active_levels
        return full.reshape(*lead, self.grid.rows, self.grid.cols, N_COMPONENTS)

    def city_from_bits(self, bits) -> CityGenotype:
        return CityGenotype(self.levels_from_bits(np.asarray(bits)))

    def bits_from_city(self, city: CityGenotype) -> np.ndarray:
        self.grid.check_dims(city.dims)
        return levels_to_bits(city.cells[:, list(self.active)]).ravel()

    def fitness_batch(self, bits: np.ndarray) -> np.ndarray:
        return batch_fitness(self.levels_from_bits(bits), self.grid.mult, self.scheme, self.cost)

    def evaluate(self, city: CityGenotype) -> ObjectiveBreakdown:
        return total_fitness(city, self.grid, self.scheme, self.cost)

    def with_grid(self, grid: HazardGrid) -> "Problem":
        return Problem(grid, self.scheme, self.cost, self.active, self.fixed_level)

    def describe(self) -> dict:
        return {
            "dims": list(self.dims),
            "hazard_grid": self.grid.mult.tolist(),
            "scheme": self.scheme.to_json(),
            "cost": self.cost.to_json(),
            "active_components": [k.name for k in self.active],
            "fixed_level": self.fixed_level,
        }
