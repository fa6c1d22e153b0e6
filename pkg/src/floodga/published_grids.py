"""Published 6x6 result grids for both weight schemes, transcribed verbatim.

Keys are ComponentId names; ``ASPECT`` holds the rating-table scheme's
result and ``EINARSSON`` the alternative scheme's.
"""
from __future__ import annotations

from .genome import COMPONENTS, CityGenotype, parse_component_grid

ASPECT = {
    "URBANIZATION": """
00 10 01 10 00 00
00 11 11 10 10 01
01 01 10 11 10 11
01 10 00 10 10 00
00 01 00 00 10 00
10 00 01 10 11 10
""",
    "POVERTY": """
01 00 01 11 11 10
10 00 01 01 11 11
10 00 00 10 11 01
10 01 00 01 00 11
00 10 00 10 10 01
10 10 10 10 11 00
""",
    "LITERACY": """
00 00 00 11 11 00
00 01 10 10 11 01
11 00 10 10 10 10
01 00 00 00 10 01
10 00 10 01 11 01
00 00 11 10 10 00
""",
    "MORTALITY": """
01 11 00 01 00 00
10 01 00 11 10 00
11 11 01 11 00 10
00 01 01 10 11 10
00 01 00 11 00 11
00 01 01 00 01 11
""",
    "TV_RADIO": """
01 11 00 11 10 00
11 10 01 01 01 01
01 10 11 11 10 01
01 11 00 10 01 11
00 00 01 10 01 00
10 10 01 01 01 10
""",
    "NON_STRUCTURAL": """
00 01 01 01 00 10
01 11 10 00 01 01
10 01 00 11 01 01
11 00 01 00 11 01
01 11 10 00 10 00
00 00 10 10 10 11
""",
    "STRUCTURAL": """
10 01 01 01 01 11
11 10 10 10 11 11
01 10 10 11 00 10
11 01 10 01 00 01
10 10 00 00 10 10

01 11 01 11 10 11
---- ---- ---- ---- ---- ----
""",
}

EINARSSON = {
    "URBANIZATION": """
11 11 00 10 01 11
00 10 01 10 01 01
10 00 00 01 01 11
11 11 00 01 00 11
01 10 00 11 10 01
11 01 11 01 01 11
""",
    "POVERTY": """
10 11 10 10 01 10
11 01 11 00 01 10
00 01 11 00 01 10
11 10 00 10 00 00
01 00 00 11 10 01
00 11 10 00 00 10
""",
    "LITERACY": """
01 11 01 01 10 10
11 11 00 11 11 11
01 00 10 10 01 10
11 11 01 10 10 01
11 11 01 11 11 00
01 10 10 01 11 10
""",
    "MORTALITY": """
00 11 01 00 10 11
10 11 10 10 00 00
11 00 11 10 11 11
01 10 00 00 10 01
01 11 10 11 01 11
01 10 10 11 01 10
""",
    "TV_RADIO": """
00 10 11 11 00 11
11 11 00 01 00 00
11 10 01 11 10 01
01 01 01 10 00 01
00 11 00 00 10 10
11 10 01 00 01 00
""",
    "NON_STRUCTURAL": """
10 10 00 11 01 00
00 10 10 10 00 01
11 00 00 10 10 11
10 11 01 10 00 11
10 01 11 01 10 01
00 01 00 11 01 11
""",
    "STRUCTURAL": """
11 10 01 01 00 10
11 01 00 00 10 10
01 10 01 10 00 10
10 00 10 01 00 01
10 00 10 10 10 01
11 00 00 00 00 11
""",
}


def published_city(which: str) -> CityGenotype:
    """Parse one published result set (``"aspect"`` or ``"einarsson"``) into a city."""
    table = {"aspect": ASPECT, "einarsson": EINARSSON}[which]
    return CityGenotype.from_component_grids(
        [parse_component_grid(table[k.name], 6, 6) for k in COMPONENTS]
    )
