"""Danger-zone statistics and two-scheme comparison of optimized cities.

Two readings of "the diagonal" are reported side by side: the danger zone
(all cells with the maximum hazard multiplier, 16 on the default grid) and
the main anti-diagonal (6 cells). Tags use the danger-zone reading.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from .genome import COMPONENTS, MAX_LEVEL, CityGenotype
from .hazard import HazardGrid, anti_diagonal, danger_zone, default_grid
from .published_grids import published_city

MIDPOINT = MAX_LEVEL / 2
DEFAULT_MARGIN = 0.25

SIMILAR = "Similar"
INVERTED = "Inverted"
MIXED = "Mixed"


def _hist(values: np.ndarray) -> list[int]:
    return np.bincount(values.astype(np.int64), minlength=MAX_LEVEL + 1).tolist()


def _mean(values: np.ndarray) -> float:
    return float(values.mean()) if values.size else float("nan")


@dataclass(frozen=True)
class ComponentZoneStats:
    component: str
    zone_hist: list
    zone_mean: float
    off_hist: list
    off_mean: float
    diagonal_hist: list
    diagonal_mean: float
    overall_mean: float


@dataclass(frozen=True)
class ZoneStats:
    zone_size: int
    off_size: int
    diagonal_size: int
    components: tuple[ComponentZoneStats, ...]

    def __getitem__(self, k) -> ComponentZoneStats:
        return self.components[int(k)]

    def to_json(self) -> dict:
        return {
            "zone_size": self.zone_size,
            "off_zone_size": self.off_size,
            "diagonal_size": self.diagonal_size,
            "components": [
                {
                    "component": c.component,
                    "zone_hist": c.zone_hist,
                    "zone_mean": c.zone_mean,
                    "off_zone_hist": c.off_hist,
                    "off_zone_mean": c.off_mean,
                    "diagonal_hist": c.diagonal_hist,
                    "diagonal_mean": c.diagonal_mean,
                    "overall_mean": c.overall_mean,
                }
                for c in self.components
            ],
        }


def zone_stats(city: CityGenotype, grid: HazardGrid) -> ZoneStats:
    grid.check_dims(city.dims)
    zone = danger_zone(grid)
    diag = anti_diagonal(grid)
    comps = []
    for k in COMPONENTS:
        lv = city.component(k)
        comps.append(ComponentZoneStats(
            component=k.name,
            zone_hist=_hist(lv[zone]),
            zone_mean=_mean(lv[zone]),
            off_hist=_hist(lv[~zone]),
            off_mean=_mean(lv[~zone]),
            diagonal_hist=_hist(lv[diag]),
            diagonal_mean=_mean(lv[diag]),
            overall_mean=_mean(lv),
        ))
    return ZoneStats(int(zone.sum()), int((~zone).sum()), int(diag.sum()), tuple(comps))


def classify(mean_a: float, mean_b: float, margin: float = DEFAULT_MARGIN) -> str:
    """Tag a pair of zone means.

    Inverted: the means lie strictly on opposite sides of the midpoint 1.5
    and are at least ``margin`` apart. Similar: same side, or closer than
    ``margin``. Mixed: anything else (one mean sits on the midpoint while the
    other is far from it).
    """
    side_a = np.sign(mean_a - MIDPOINT)
    side_b = np.sign(mean_b - MIDPOINT)
    gap = abs(mean_a - mean_b)
    if side_a * side_b < 0 and gap >= margin:
        return INVERTED
    if gap < margin or (side_a == side_b and side_a != 0):
        return SIMILAR
    return MIXED


@dataclass(frozen=True)
class ComparisonRow:
    component: str
    zone_mean_a: float
    zone_mean_b: float
    tag: str
    diagonal_mean_a: float
    diagonal_mean_b: float
    diagonal_tag: str


@dataclass(frozen=True)
class ComparisonReport:
    label_a: str
    label_b: str
    margin: float
    rows: tuple[ComparisonRow, ...]

    def tags(self) -> dict[str, str]:
        return {r.component: r.tag for r in self.rows}

    def to_json(self) -> dict:
        return {
            "label_a": self.label_a,
            "label_b": self.label_b,
            "margin": self.margin,
            "rows": [
                {
                    "component": r.component,
                    "zone_mean_a": r.zone_mean_a,
                    "zone_mean_b": r.zone_mean_b,
                    "tag": r.tag,
                    "diagonal_mean_a": r.diagonal_mean_a,
                    "diagonal_mean_b": r.diagonal_mean_b,
                    "diagonal_tag": r.diagonal_tag,
                }
                for r in self.rows
            ],
        }

    def render_text(self) -> str:
        head = (f"{'component':<16} {'zone ' + self.label_a:>16} {'zone ' + self.label_b:>16} "
                f"{'tag':<9} {'diag ' + self.label_a:>16} {'diag ' + self.label_b:>16} diag tag")
        lines = [head, "-" * len(head)]
        for r in self.rows:
            lines.append(
                f"{r.component:<16} {r.zone_mean_a:>16.4f} {r.zone_mean_b:>16.4f} {r.tag:<9} "
                f"{r.diagonal_mean_a:>16.4f} {r.diagonal_mean_b:>16.4f} {r.diagonal_tag}"
            )
        return "\n".join(lines) + "\n"


def compare_schemes(city_a: CityGenotype, city_b: CityGenotype, grid: HazardGrid,
                    margin: float = DEFAULT_MARGIN, labels=("A", "B")) -> ComparisonReport:
    sa, sb = zone_stats(city_a, grid), zone_stats(city_b, grid)
    rows = []
    for ca, cb in zip(sa.components, sb.components):
        rows.append(ComparisonRow(
            component=ca.component,
            zone_mean_a=ca.zone_mean,
            zone_mean_b=cb.zone_mean,
            tag=classify(ca.zone_mean, cb.zone_mean, margin),
            diagonal_mean_a=ca.diagonal_mean,
            diagonal_mean_b=cb.diagonal_mean,
            diagonal_tag=classify(ca.diagonal_mean, cb.diagonal_mean, margin),
        ))
    return ComparisonReport(str(labels[0]), str(labels[1]), margin, tuple(rows))


def tag_counts(reports) -> dict[str, dict[str, int]]:
    """Per-component tally of tags across several comparison reports."""
    out = {}
    for k in COMPONENTS:
        counter = Counter(r.tags()[k.name] for r in reports)
        out[k.name] = {t: counter.get(t, 0) for t in (SIMILAR, INVERTED, MIXED)}
    return out


def published_reference_report(margin: float = DEFAULT_MARGIN) -> ComparisonReport:
    """Comparison of the two published result grid sets on the default hazard grid."""
    return compare_schemes(published_city("aspect"), published_city("einarsson"), default_grid(),
                           margin, labels=("aspect", "einarsson"))
