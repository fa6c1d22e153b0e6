"""Chromosome encoding for a gridded city.

Every cell carries seven vulnerability components, each stored as a 2-bit
level in ``0..3`` where a higher level always means "more vulnerable".
The packed form used by the GA is cell-major, component-minor and
most-significant-bit first: component ``k`` of cell ``(r, c)`` lives at bits
``[(r * cols + c) * 14 + 2k, +2)``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch, ParseError

N_COMPONENTS = 7
BITS_PER_LEVEL = 2
BITS_PER_CELL = N_COMPONENTS * BITS_PER_LEVEL
MAX_LEVEL = 3


class ComponentId(enum.IntEnum):
    URBANIZATION = 0
    LITERACY = 1
    MORTALITY = 2
    POVERTY = 3
    TV_RADIO = 4
    NON_STRUCTURAL = 5
    STRUCTURAL = 6

    @property
    def label(self) -> str:
        return COMPONENT_LABELS[self]


COMPONENTS = tuple(ComponentId)

COMPONENT_LABELS = {
    ComponentId.URBANIZATION: "Urbanization",
    ComponentId.LITERACY: "Literacy",
    ComponentId.MORTALITY: "Mortality",
    ComponentId.POVERTY: "Poverty",
    ComponentId.TV_RADIO: "Radio/TV Penetration",
    ComponentId.NON_STRUCTURAL: "Non-Structural Measures",
    ComponentId.STRUCTURAL: "Structural Measures",
}

# Caption printed above each rendered grid, naming what level 3 means.
COMPONENT_CAPTIONS = {
    ComponentId.URBANIZATION: "11, most urban",
    ComponentId.LITERACY: "11, most illiterate",
    ComponentId.MORTALITY: "11, highest mortality",
    ComponentId.POVERTY: "11, more people under poverty",
    ComponentId.TV_RADIO: "11, least penetration",
    ComponentId.NON_STRUCTURAL: "11, no laws/ poor compliance",
    ComponentId.STRUCTURAL: "11, no structural measure",
}


def component_from_name(name) -> ComponentId:
    """Resolve an int, enum member or case-insensitive name to a ComponentId."""
    if isinstance(name, ComponentId):
        return name
    if isinstance(name, (int, np.integer)):
        return ComponentId(int(name))
    key = str(name).strip().upper().replace("-", "_").replace(" ", "_").replace("/", "_")
    aliases = {"TVRADIO": "TV_RADIO", "RADIO_TV": "TV_RADIO", "TV": "TV_RADIO",
               "NONSTRUCTURAL": "NON_STRUCTURAL"}
    key = aliases.get(key, key)
    try:
        return ComponentId[key]
    except KeyError:
        raise ValueError(f"unknown component {name!r}") from None


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class CityGenotype:
    """Component levels for a ``rows x cols`` city, shape ``(rows, cols, 7)``."""

    levels: np.ndarray

    def __post_init__(self):
        lv = np.array(self.levels, dtype=np.int8, copy=True)
        if lv.ndim != 3 or lv.shape[2] != N_COMPONENTS:
            raise LengthMismatch(f"levels must have shape (rows, cols, 7), got {lv.shape}")
        if lv.shape[0] < 1 or lv.shape[1] < 1:
            raise LengthMismatch("city needs at least one row and one column")
        if lv.min() < 0 or lv.max() > MAX_LEVEL:
            raise ValueError("levels must lie in 0..3")
        object.__setattr__(self, "levels", _frozen(lv))

    @classmethod
    def filled(cls, rows: int, cols: int, level: int = 0) -> "CityGenotype":
        return cls(np.full((rows, cols, N_COMPONENTS), level, dtype=np.int8))

    @classmethod
    def from_cells(cls, rows: int, cols: int, cells) -> "CityGenotype":
        """Build from a row-major sequence of 7-level cells."""
        arr = np.asarray(cells, dtype=np.int8)
        if arr.shape != (rows * cols, N_COMPONENTS):
            raise LengthMismatch(f"expected {rows * cols} cells of 7 levels, got shape {arr.shape}")
        return cls(arr.reshape(rows, cols, N_COMPONENTS))

    @classmethod
    def from_component_grids(cls, grids) -> "CityGenotype":
        """Stack seven ``rows x cols`` level grids given in ComponentId order."""
        stacked = np.stack([np.asarray(g, dtype=np.int8) for g in grids], axis=-1)
        return cls(stacked)

    @property
    def rows(self) -> int:
        return self.levels.shape[0]

    @property
    def cols(self) -> int:
        return self.levels.shape[1]

    @property
    def dims(self) -> tuple[int, int]:
        return self.rows, self.cols

    @property
    def cells(self) -> np.ndarray:
        return self.levels.reshape(-1, N_COMPONENTS)

    def component(self, k) -> np.ndarray:
        return self.levels[:, :, int(k)]

    def complement(self) -> "CityGenotype":
        return CityGenotype(MAX_LEVEL - self.levels)

    def __eq__(self, other):
        if not isinstance(other, CityGenotype):
            return NotImplemented
        return self.levels.shape == other.levels.shape and bool(np.array_equal(self.levels, other.levels))

    def __hash__(self):
        return hash((self.levels.shape, self.levels.tobytes()))

    def __repr__(self):
        return f"CityGenotype(rows={self.rows}, cols={self.cols})"


@dataclass(frozen=True, eq=False)
class PackedGenome:
    bits: np.ndarray
    dims: tuple[int, int]

    def __post_init__(self):
        b = np.array(self.bits, dtype=np.uint8, copy=True).ravel()
        if b.size and b.max() > 1:
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", _frozen(b))
        object.__setattr__(self, "dims", (int(self.dims[0]), int(self.dims[1])))

    def __len__(self):
        return self.bits.size

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)

    @classmethod
    def from_string(cls, text: str, dims) -> "PackedGenome":
        clean = "".join(text.split())
        if set(clean) - {"0", "1"}:
            raise ParseError("bit string may only contain 0 and 1")
        return cls(np.frombuffer(clean.encode(), dtype=np.uint8) - ord("0"), dims)

    def __eq__(self, other):
        if not isinstance(other, PackedGenome):
            return NotImplemented
        return self.dims == other.dims and bool(np.array_equal(self.bits, other.bits))

    def __hash__(self):
        return hash((self.dims, self.bits.tobytes()))


def levels_to_bits(levels: np.ndarray) -> np.ndarray:
    """Expand integer levels (any shape) into MSB-first bit pairs along a new last axis, flattened."""
    levels = np.asarray(levels)
    hi = (levels >> 1) & 1
    lo = levels & 1
    return np.stack([hi, lo], axis=-1).reshape(*levels.shape[:-1], -1).astype(np.uint8)


def bits_to_levels(bits: np.ndarray) -> np.ndarray:
    """Inverse of :func:`levels_to_bits` on the last axis."""
    bits = np.asarray(bits)
    pairs = bits.reshape(*bits.shape[:-1], -1, 2).astype(np.int8)
    return (pairs[..., 0] << 1) | pairs[..., 1]


def encode(city: CityGenotype) -> PackedGenome:
    return PackedGenome(levels_to_bits(city.cells).ravel(), city.dims)


def decode(genome: PackedGenome) -> CityGenotype:
    rows, cols = genome.dims
    if rows < 1 or cols < 1 or len(genome) != rows * cols * BITS_PER_CELL:
        raise LengthMismatch(
            f"{len(genome)} bits do not match dims {genome.dims} "
            f"(expected {rows * cols * BITS_PER_CELL})"
        )
    levels = bits_to_levels(genome.bits.reshape(rows * cols, BITS_PER_CELL))
    return CityGenotype(levels.reshape(rows, cols, N_COMPONENTS))


_TOKEN_LEVELS = {"00": 0, "01": 1, "10": 2, "11": 3}


def parse_component_grid(text: str, rows: int, cols: int) -> np.ndarray:
    """Parse a grid of 2-bit tokens such as ``"00 10 01"`` into an int array.

    Blank lines and lines made only of dashes or pipes (table rules) are skipped.
    """
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or set(stripped) <= set("-| \t"):
            continue
        lines.append((lineno, raw))
    if len(lines) != rows:
        raise ParseError(f"expected {rows} grid rows, found {len(lines)}")
    out = np.zeros((rows, cols), dtype=np.int8)
    for r, (lineno, raw) in enumerate(lines):
        tokens = raw.replace("|", " ").split()
        if len(tokens) != cols:
            raise ParseError(f"expected {cols} tokens, found {len(tokens)}", line=lineno)
        for c, tok in enumerate(tokens):
            if tok not in _TOKEN_LEVELS:
                raise ParseError(f"malformed token {tok!r}", line=lineno, column=c + 1)
            out[r, c] = _TOKEN_LEVELS[tok]
    return out


def render_level_grid(grid: np.ndarray) -> str:
    grid = np.asarray(grid)
    return "".join(" ".join(format(int(v), "02b") for v in row) + "\n" for row in grid)


def render_component_grid(city: CityGenotype, k) -> str:
    return render_level_grid(city.component(component_from_name(k)))


def render_city(city: CityGenotype) -> str:
    """All seven component grids, each preceded by its name and caption."""
    blocks = []
    for k in COMPONENTS:
        blocks.append(f"{k.label}\n\n{COMPONENT_CAPTIONS[k]}\n\n{render_component_grid(city, k)}")
    return "\n".join(blocks)
