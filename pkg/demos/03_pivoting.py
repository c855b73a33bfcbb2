"""
Estimating unevaluated translation directions
=============================================

Every reported direction becomes an edge weighted by BLEU / 70.  An
unreported direction is estimated by the best chain of reported systems,
with quality multiplying along the chain.
"""

from langequity.dataset import DataDir, mini_data_dir
from langequity.pivot import PivotGraph, all_pairs_estimates, best_pivot_path

# the textbook case: two systems at 0.8 compound to 0.64, not 0.8
toy = PivotGraph({"s", "p", "t"}, {("s", "p"): 0.8, ("p", "t"): 0.8})
est = best_pivot_path(toy, "s", "t")
print(est.path_string(), f"{est.estimate:.2f}")

# a weak direct system can lose to a strong pivot
toy = PivotGraph({"s", "p", "t"}, {("s", "t"): 0.5, ("s", "p"): 0.8, ("p", "t"): 0.7})
est = best_pivot_path(toy, "s", "t")
print(est.path_string(), round(est.estimate, 3))

# on the bundled data Slovenian to Serbian is better via Croatian
graph = DataDir(mini_data_dir()).mt_graph
est = best_pivot_path(graph, "slv", "srp")
print(f"direct {graph.weight('slv', 'srp') * 70:.2f} BLEU, via {est.path_string()}: {est.estimate * 70:.2f} BLEU")

# how many directions become reachable at all
estimates = all_pairs_estimates(graph)
reached = sum(e.estimate > 0 for e in estimates.values())
print(f"{len(graph.edges)} reported directions, {reached} of {len(estimates)} reachable with pivots")

# the most common pivot
pivots = {}
for e in estimates.values():
    for p in e.pivots:
        pivots[p] = pivots.get(p, 0) + 1
print(sorted(pivots.items(), key=lambda kv: -kv[1])[:3])
