"""
Where would new work help most?
===============================

The gain from serving language l perfectly is its demand times its
remaining gap, d_l * (1 - u_l).  Ranking by that gain gives a priority
list; forcing the most populous languages to utility 1 one at a time gives
a curve that climbs to 1.
"""

from langequity.dataset import DataDir, mini_data_dir
from langequity.priority import greedy_population_curve, priority_ranking

data = DataDir(mini_data_dir())
table, universe = data.task("mt-to-eng")

# priorities depend on the demand focus
for tau in (0.0, 0.5, 1.0):
    ranking = priority_ranking(table, universe, tau, k=5)
    print(f"tau={tau}: " + ", ".join(f"{code} ({gain:.3f})" for code, gain in ranking.ranked))

# the gains add up to what is still missing
full = priority_ranking(table, universe, 1.0)
print("sum of gains:", round(sum(g for _, g in full.ranked), 6), " 1 - M:", round(1 - full.basis_metric, 6))

# serve the largest communities first
order = sorted(universe, key=lambda r: (-r.population, r.iso3))
curve = greedy_population_curve(table, universe)
print(f"start     {curve[0]:.3f}")
for rec, value in zip(order, curve[1:]):
    print(f"+ {rec.iso3}     {value:.3f}")
