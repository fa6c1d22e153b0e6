"""Component weight schemes.

A scheme is seven non-negative weights (ComponentId order) summing to one.
Schemes can be derived from a rating table: each component is rated 1-10
against six hazard aspects, the aspect columns are weighted, and the row
totals are normalized.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, ParseError
from .genome import N_COMPONENTS

ASPECTS = (
    "Capacity to cause physical damages",
    "Percentage of the population affected",
    "Potential for casualties",
    "Environmental impact",
    "Negative economic impacts",
    "Public awareness of hazard",
)
N_ASPECTS = len(ASPECTS)

# "Always very important" aspects get 20% each, "usually important" 10%.
DEFAULT_ASPECT_WEIGHTS = (0.20, 0.20, 0.20, 0.20, 0.10, 0.10)

ASPECT_TOTALS = (6.3, 4.9, 6.1, 5.0, 4.7, 3.8, 3.0)
EINARSSON_TOTALS = (3, 3, 3, 5, 5, 5, 2)

# Ratings per component (rows) and aspect (columns). Rows other than
# urbanization follow the arithmetic printed next to each total; the
# urbanization row uses the per-aspect ratings, whose weighted total (5.9)
# does not reproduce the stated 6.3.
ASPECT_RATINGS = (
    (9, 7, 5, 4, 4, 5),
    (5, 4, 3, 6, 4, 9),
    (4, 9, 7, 5, 6, 5),
    (5, 6, 6, 4, 3, 5),
    (5, 4, 3, 5, 3, 10),
    (5, 4, 3, 3, 2, 6),
    (2, 3, 2, 4, 3, 5),
)

SUM_TOL = 1e-12


@dataclass(frozen=True)
class WeightScheme:
    name: str
    w: tuple[float, ...]

    def __post_init__(self):
        w = tuple(float(x) for x in self.w)
        if len(w) != N_COMPONENTS:
            raise DomainError(f"a weight scheme needs {N_COMPONENTS} weights, got {len(w)}")
        if any(x < 0 or not np.isfinite(x) for x in w):
            raise DomainError("weights must be finite and non-negative")
        if abs(sum(w) - 1.0) > SUM_TOL:
            raise DomainError(f"weights must sum to 1 (got {sum(w)!r}); use normalize()")
        object.__setattr__(self, "w", w)

    def as_array(self) -> np.ndarray:
        return np.array(self.w, dtype=np.float64)

    def to_json(self) -> dict:
        return {"name": self.name, "weights": list(self.w)}


@dataclass(frozen=True)
class RatingTable:
    ratings: np.ndarray
    aspect_weights: tuple[float, ...] = DEFAULT_ASPECT_WEIGHTS
    stated_totals: tuple[float, ...] | None = field(default=None)

    def __post_init__(self):
        r = np.array(self.ratings, dtype=np.float64, copy=True)
        if r.shape != (N_COMPONENTS, N_ASPECTS):
            raise DomainError(f"rating table must be 7x6, got shape {r.shape}")
        if np.any(r < 1) or np.any(r > 10):
            raise DomainError("ratings must lie in [1, 10]")
        r.setflags(write=False)
        aw = tuple(float(x) for x in self.aspect_weights)
        if len(aw) != N_ASPECTS or any(x < 0 for x in aw):
            raise DomainError("aspect weights must be six non-negative fractions")
        object.__setattr__(self, "ratings", r)
        object.__setattr__(self, "aspect_weights", aw)
        if self.stated_totals is not None:
            st = tuple(float(x) for x in self.stated_totals)
            if len(st) != N_COMPONENTS:
                raise DomainError("stated_totals must have 7 entries")
            object.__setattr__(self, "stated_totals", st)


def derive_totals(ratings, aspect_weights=DEFAULT_ASPECT_WEIGHTS) -> np.ndarray:
    """Weighted row totals ``sum_j ratings[i, j] * aspect_weights[j]``."""
    if isinstance(ratings, RatingTable):
        ratings, aspect_weights = ratings.ratings, ratings.aspect_weights
    ratings = np.asarray(ratings, dtype=np.float64)
    return ratings @ np.asarray(aspect_weights, dtype=np.float64)


def normalize(totals, name: str = "custom") -> WeightScheme:
    t = np.asarray(totals, dtype=np.float64)
    if t.shape != (N_COMPONENTS,):
        raise DomainError(f"expected {N_COMPONENTS} totals, got shape {t.shape}")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise DomainError("totals must be finite and non-negative")
    s = t.sum()
    if s == 0:
        raise DomainError("at least one total must be positive")
    return WeightScheme(name, tuple(t / s))


def builtin_aspect_scheme() -> WeightScheme:
    return normalize(ASPECT_TOTALS, name="aspect")


def builtin_einarsson_scheme() -> WeightScheme:
    return normalize(EINARSSON_TOTALS, name="einarsson")


BUILTIN_SCHEMES = {
    "aspect": builtin_aspect_scheme,
    "einarsson": builtin_einarsson_scheme,
}


def builtin_scheme(name: str) -> WeightScheme:
    try:
        return BUILTIN_SCHEMES[name]()
    except KeyError:
        raise DomainError(f"unknown builtin scheme {name!r}; choose from {sorted(BUILTIN_SCHEMES)}") from None


def aspect_rating_table() -> RatingTable:
    return RatingTable(np.array(ASPECT_RATINGS), DEFAULT_ASPECT_WEIGHTS, ASPECT_TOTALS)


def total_discrepancies(table: RatingTable, tol: float = 1e-3) -> list[tuple[int, float, float]]:
    """Rows whose derived total differs from the stated one: ``(row, derived, stated)``."""
    if table.stated_totals is None:
        return []
    derived = derive_totals(table.ratings, table.aspect_weights)
    return [
        (i, float(d), s)
        for i, (d, s) in enumerate(zip(derived, table.stated_totals))
        if abs(d - s) > tol
    ]


def scheme_from_json(doc: dict, default_name: str = "custom") -> WeightScheme:
    if "weights" not in doc:
        raise ParseError("scheme JSON needs a 'weights' list")
    return normalize(doc["weights"], name=str(doc.get("name", default_name)))


def rating_table_from_json(doc: dict) -> RatingTable:
    if "ratings" not in doc:
        raise ParseError("rating table JSON needs a 'ratings' matrix")
    return RatingTable(
        np.asarray(doc["ratings"], dtype=np.float64),
        tuple(doc.get("aspect_weights", DEFAULT_ASPECT_WEIGHTS)),
        doc.get("stated_totals"),
    )


def rating_table_to_json(table: RatingTable) -> dict:
    doc = {
        "aspect_weights": list(table.aspect_weights),
        "ratings": table.ratings.tolist(),
    }
    if table.stated_totals is not None:
        doc["stated_totals"] = list(table.stated_totals)
    return doc


def load_scheme_file(path) -> WeightScheme:
    """Load either a scheme JSON or a rating-table JSON (derived and normalized)."""
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: invalid JSON: {exc}") from None
    if "ratings" in doc:
        table = rating_table_from_json(doc)
        return normalize(derive_totals(table.ratings, table.aspect_weights),
                         name=str(doc.get("name", "derived")))
    return scheme_from_json(doc)
