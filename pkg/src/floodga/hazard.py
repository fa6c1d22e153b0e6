"""Hazard multipliers per cell and the derived danger zone."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DimMismatch, DomainError, ParseError

# River running diagonally from upper right to lower left; flood-plain cells
# get 2, the banks 1, the high ground 1/2.
_DEFAULT = (
    (0.5, 0.5, 1, 1, 2, 2),
    (0.5, 1, 1, 2, 2, 2),
    (1, 1, 2, 2, 2, 1),
    (1, 2, 2, 2, 1, 1),
    (2, 2, 2, 1, 1, 0.5),
    (2, 2, 1, 1, 0.5, 0.5),
)


@dataclass(frozen=True, eq=False)
class HazardGrid:
    mult: np.ndarray

    def __post_init__(self):
        m = np.array(self.mult, dtype=np.float64, copy=True)
        if m.ndim != 2 or m.shape[0] < 1 or m.shape[1] < 1:
            raise DomainError(f"hazard grid must be a non-empty 2-D matrix, got shape {m.shape}")
        if not np.all(np.isfinite(m)) or np.any(m <= 0):
            raise DomainError("hazard multipliers must be finite and positive")
        m.setflags(write=False)
        object.__setattr__(self, "mult", m)

    @property
    def rows(self) -> int:
        return self.mult.shape[0]

    @property
    def cols(self) -> int:
        return self.mult.shape[1]

    @property
    def dims(self) -> tuple[int, int]:
        return self.rows, self.cols

    def check_dims(self, dims) -> None:
        if tuple(dims) != self.dims:
            raise DimMismatch(f"city dims {tuple(dims)} do not match hazard grid dims {self.dims}")

    def __eq__(self, other):
        if not isinstance(other, HazardGrid):
            return NotImplemented
        return bool(np.array_equal(self.mult, other.mult))

    def __hash__(self):
        return hash((self.mult.shape, self.mult.tobytes()))

    def to_text(self) -> str:
        def fmt(v):
            return "1/2" if v == 0.5 else format(v, "g")
        return "".join(" ".join(fmt(v) for v in row) + "\n" for row in self.mult)


def default_grid() -> HazardGrid:
    return HazardGrid(np.array(_DEFAULT, dtype=np.float64))


def uniform_grid(rows: int, cols: int, value: float = 1.0) -> HazardGrid:
    return HazardGrid(np.full((rows, cols), value))


def danger_zone(grid: HazardGrid) -> np.ndarray:
    """Boolean mask of the cells attaining the maximum multiplier."""
    return grid.mult == grid.mult.max()


def anti_diagonal(grid: HazardGrid) -> np.ndarray:
    """Boolean mask of the main anti-diagonal, cells ``(r, cols - 1 - r)``."""
    mask = np.zeros(grid.dims, dtype=bool)
    for r in range(min(grid.rows, grid.cols)):
        mask[r, grid.cols - 1 - r] = True
    return mask


def _parse_number(tok: str) -> float:
    tok = tok.replace("½", "1/2")
    try:
        return float(Fraction(tok))
    except (ValueError, ZeroDivisionError):
        raise ValueError(tok) from None


def load_grid(text: str) -> HazardGrid:
    """Parse a whitespace-separated matrix. ``0.5``, ``1/2`` and ``½`` are all accepted."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens:
            continue
        row = []
        for col, tok in enumerate(tokens, start=1):
            try:
                row.append(_parse_number(tok))
            except ValueError:
                raise ParseError(f"non-numeric multiplier {tok!r}", line=lineno, column=col) from None
        if rows and len(row) != len(rows[0]):
            raise ParseError(f"ragged row: {len(row)} entries, expected {len(rows[0])}", line=lineno)
        rows.append(row)
    if not rows:
        raise ParseError("empty hazard grid")
    return HazardGrid(np.array(rows))
