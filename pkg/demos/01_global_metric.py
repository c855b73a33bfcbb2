"""
Demand-weighted utility on the bundled data
===========================================

Walk through one task end to end: raw scores, utilities, demand at two
values of tau, and the per-language contributions behind the final number.
"""

from langequity.dataset import DataDir, mini_data_dir
from langequity.demand import demand_vector
from langequity.metric import global_metric, metric_curve

data = DataDir(mini_data_dir())
registry = data.registry
print(registry)

# raw question answering scores, best result per language
results = data.result_set("qa")
for code, score in sorted(results.scores().items()):
    print(f"{code}  {score:5.1f}")

# utilities: F-score over its theoretical maximum of 100
table, universe = data.task("qa")
print({code: round(u, 3) for code, u in table.entries.items()})

# tau = 0 weighs every language equally, tau = 1 weighs by speakers
for tau in (0.0, 1.0):
    demand = demand_vector(universe, tau)
    report = global_metric(table, demand)
    print(f"tau={tau:.1f}  M={report.value:.3f}  languages with results: {report.coverage}/{len(universe)}")

# who contributes most at tau = 1
report = global_metric(table, demand_vector(universe, 1.0))
for row in report.as_dict()["contributions"][:5]:
    print(row)

# the whole curve between the two extremes
for tau, value in metric_curve(table, universe):
    print(f"{tau:.1f}  {'#' * int(round(value * 50))}")

# a macro-language seen through its vernaculars
print("Arabic vernaculars:", round(data.metric("qa", 1.0, subset="ara-vernaculars").value, 3))
