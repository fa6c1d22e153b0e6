"""Genetic-algorithm minimization of flood risk on a gridded city."""
from .errors import (
    ConfigError,
    DimMismatch,
    DomainError,
    FloodGAError,
    LengthMismatch,
    ParseError,
    TooLarge,
)
from .genome import (
    COMPONENTS,
    CityGenotype,
    ComponentId,
    PackedGenome,
    decode,
    encode,
    parse_component_grid,
    render_city,
    render_component_grid,
)
from .hazard import HazardGrid, danger_zone, default_grid, load_grid
from .objective import CostParams, ObjectiveBreakdown, city_vulnerability, total_fitness
from .problem import Problem
from .weights import (
    WeightScheme,
    builtin_aspect_scheme,
    builtin_einarsson_scheme,
    derive_totals,
    normalize,
)
from .ga import GaConfig, RunResult, run
from .oracle import exhaustive_best, separable_best, verify_separability
from .analysis import compare_schemes, zone_stats

__version__ = "0.1.0"
