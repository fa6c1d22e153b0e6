"""
Comparing the two weight schemes
================================

Optimize the same city under both schemes for several seeds and tag each
component Similar / Inverted / Mixed from its danger-zone mean level. The
published result grids are compared the same way for reference.
"""

from floodga import GaConfig, Problem, default_grid, run
from floodga.analysis import compare_schemes, published_reference_report, tag_counts
from floodga.genome import decode
from floodga.weights import builtin_aspect_scheme, builtin_einarsson_scheme

grid = default_grid()
reports = []
for seed in range(5):
    cfg = GaConfig(population_size=100, generations=200, rng_seed=seed)
    a = decode(run(Problem(grid, builtin_aspect_scheme()), cfg).best_genome)
    b = decode(run(Problem(grid, builtin_einarsson_scheme()), cfg).best_genome)
    reports.append(compare_schemes(a, b, grid, labels=("aspect", "einarsson")))

print(reports[0].render_text())
for component, counts in tag_counts(reports).items():
    print(component, counts)

# The published grids: poverty flips between schemes
print(published_reference_report().render_text())
