"""Minimization target: hazard-scaled vulnerability plus an improvement cost.

Vulnerability of a cell is the weighted sum of its seven levels, scaled by
the cell's hazard multiplier. Cost is charged on the three's complement
``3 - level`` of each component (how much the cell has been improved), with a
per-component curve and two pairwise interaction terms. The city total is

    vulnerability + lambda * (sum of cell costs) / C_max

where ``C_max`` is the cost of a fully improved (all-zero) cell.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .genome import MAX_LEVEL, N_COMPONENTS, CityGenotype, ComponentId, component_from_name
from .hazard import HazardGrid
from .weights import WeightScheme

EXPONENTIAL = "exponential"
LINEAR = "linear"
QUADRATIC = "quadratic"
CURVE_KINDS = (EXPONENTIAL, LINEAR, QUADRATIC)

DEFAULT_CURVES = (
    EXPONENTIAL,  # urbanization
    LINEAR,       # literacy
    QUADRATIC,    # mortality
    EXPONENTIAL,  # poverty
    LINEAR,       # tv/radio
    LINEAR,       # non-structural
    EXPONENTIAL,  # structural
)

INTERACTION_PAIRS = (
    (ComponentId.POVERTY, ComponentId.MORTALITY),
    (ComponentId.LITERACY, ComponentId.TV_RADIO),
)


@dataclass(frozen=True)
class CostParams:
    curves: tuple[str, ...] = DEFAULT_CURVES
    exp_base: float = 2.0
    linear_slope: float = 1.0
    quad_coeff: float = 1.0
    interaction_coeff: float = 0.25
    lam: float = 3.0

    def __post_init__(self):
        curves = tuple(str(c).lower() for c in self.curves)
        if len(curves) != N_COMPONENTS:
            raise DomainError(f"need {N_COMPONENTS} curve kinds, got {len(curves)}")
        bad = [c for c in curves if c not in CURVE_KINDS]
        if bad:
            raise DomainError(f"unknown curve kind(s) {bad}; choose from {CURVE_KINDS}")
        object.__setattr__(self, "curves", curves)
        if not self.exp_base > 1:
            raise DomainError("exp_base must be > 1")
        for name in ("linear_slope", "quad_coeff", "interaction_coeff", "lam"):
            if not getattr(self, name) >= 0:
                raise DomainError(f"{name} must be >= 0")

    @classmethod
    def from_json(cls, doc: dict | None) -> "CostParams":
        doc = dict(doc or {})
        kwargs = {}
        if "curves" in doc:
            curves = doc.pop("curves")
            if isinstance(curves, dict):
                merged = list(DEFAULT_CURVES)
                for name, kind in curves.items():
                    merged[component_from_name(name)] = kind
                curves = merged
            kwargs["curves"] = tuple(curves)
        if "lambda" in doc:
            kwargs["lam"] = float(doc.pop("lambda"))
        for key in ("exp_base", "linear_slope", "quad_coeff", "interaction_coeff", "lam"):
            if key in doc:
                kwargs[key] = float(doc.pop(key))
        if doc:
            raise DomainError(f"unknown cost parameter(s): {sorted(doc)}")
        return cls(**kwargs)

    def to_json(self) -> dict:
        return {
            "curves": list(self.curves),
            "exp_base": self.exp_base,
            "linear_slope": self.linear_slope,
            "quad_coeff": self.quad_coeff,
            "interaction_coeff": self.interaction_coeff,
            "lambda": self.lam,
        }


@dataclass(frozen=True, eq=False)
class ObjectiveBreakdown:
    vulnerability_term: float
    cost_term: float
    total: float
    lam: float
    cell_vulnerability: np.ndarray = field(repr=False)
    cell_cost: np.ndarray = field(repr=False)


def complement(level):
    return MAX_LEVEL - level


def cell_vulnerability(levels, scheme: WeightScheme):
    """Weighted sum of levels along the last axis; in ``[0, 3]`` for a normalized scheme."""
    return np.asarray(levels, dtype=np.float64) @ scheme.as_array()


def curve_table(p: CostParams) -> np.ndarray:
    """Penalty of each component at complement 0..3, shape ``(7, 4)``."""
    c = np.arange(MAX_LEVEL + 1, dtype=np.float64)
    rows = []
    for kind in p.curves:
        if kind == EXPONENTIAL:
            rows.append(p.exp_base ** c - 1.0)
        elif kind == QUADRATIC:
            rows.append(p.quad_coeff * c * c)
        else:
            rows.append(p.linear_slope * c)
    return np.array(rows)


def cell_cost(levels, p: CostParams):
    """Improvement cost of one or more cells (levels on the last axis)."""
    levels = np.asarray(levels)
    c = complement(levels.astype(np.int64))
    total = curve_table(p)[np.arange(N_COMPONENTS), c].sum(axis=-1)
    inter = np.zeros(c.shape[:-1], dtype=np.int64)
    for a, b in INTERACTION_PAIRS:
        inter = inter + c[..., a] * c[..., b]
    total = total + p.interaction_coeff * inter
    if total.ndim == 0:
        return float(total)
    return total


def max_cell_cost(p: CostParams) -> float:
    """Cost of a fully improved cell; the maximum because cost is monotone."""
    return float(cell_cost(np.zeros(N_COMPONENTS), p))


def _cost_scale(p: CostParams) -> float:
    cmax = max_cell_cost(p)
    if cmax == 0:
        if p.lam != 0:
            raise DomainError("maximum cell cost is zero; cannot normalize the cost term")
        return 0.0
    return 1.0 / cmax


def batch_terms(levels, mult, scheme: WeightScheme, p: CostParams):
    """Vulnerability and normalized cost terms for a batch of cities.

    ``levels`` has shape ``(..., rows, cols, 7)`` and ``mult`` ``(rows, cols)``.
    Returns ``(vulnerability_term, cost_term)`` each of shape ``(...)``.
    """
    levels = np.asarray(levels)
    mult = np.asarray(mult, dtype=np.float64)
    scale = _cost_scale(p)
    v = cell_vulnerability(levels, scheme) * mult
    cost = cell_cost(levels, p)
    lead = levels.shape[:-3]
    v_term = v.reshape(*lead, -1).sum(axis=-1)
    c_term = cost.reshape(*lead, -1).sum(axis=-1) * scale
    return v_term, c_term


def batch_fitness(levels, mult, scheme: WeightScheme, p: CostParams):
    v_term, c_term = batch_terms(levels, mult, scheme, p)
    return v_term + p.lam * c_term


def city_vulnerability(city: CityGenotype, grid: HazardGrid, scheme: WeightScheme) -> float:
    grid.check_dims(city.dims)
    return float((cell_vulnerability(city.levels, scheme) * grid.mult).sum())


def total_fitness(city: CityGenotype, grid: HazardGrid, scheme: WeightScheme,
                  p: CostParams) -> ObjectiveBreakdown:
    grid.check_dims(city.dims)
    v_term, c_term = batch_terms(city.levels[None], grid.mult, scheme, p)
    v_term, c_term = float(v_term[0]), float(c_term[0])
    return ObjectiveBreakdown(
        vulnerability_term=v_term,
        cost_term=c_term,
        total=v_term + p.lam * c_term,
        lam=p.lam,
        cell_vulnerability=cell_vulnerability(city.levels, scheme) * grid.mult,
        cell_cost=cell_cost(city.levels, p),
    )
