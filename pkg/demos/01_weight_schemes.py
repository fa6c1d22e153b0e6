"""
Weight schemes
==============

Two ways of prioritizing the seven vulnerability components. The first is
derived from a rating table (each component rated 1-10 against six hazard
aspects, aspects weighted 20/20/20/20/10/10); the second is a fixed list.
"""

import numpy as np

from floodga.genome import COMPONENTS
from floodga.weights import (
    builtin_aspect_scheme,
    builtin_einarsson_scheme,
    derive_totals,
    aspect_rating_table,
    total_discrepancies,
)

# Row totals of the rating table
table = aspect_rating_table()
totals = derive_totals(table)
for k, t, s in zip(COMPONENTS, totals, table.stated_totals):
    print(f"{k.label:<24} derived {t:.2f}   stated {s:.1f}")

# Only the urbanization row fails to reproduce its stated total
print(total_discrepancies(table))

# The builtin schemes use the stated totals, normalized to sum to one
aspect, einarsson = builtin_aspect_scheme(), builtin_einarsson_scheme()
print(np.round(aspect.w, 4), sum(aspect.w))
print(np.round(einarsson.w, 4), sum(einarsson.w))

# Poverty, TV/radio and non-structural measures gain most under the second scheme
print(np.round(np.array(einarsson.w) - np.array(aspect.w), 4))
