"""The global utility metric: demand-weighted sum of per-language utilities."""

import math
from dataclasses import dataclass, field

from .demand import demand_vector, restrict
from .errors import EmptySubset, UniverseMismatch
from .utility import utility_or_default

DEFAULT_TAUS = tuple(i / 10 for i in range(11))


@dataclass(frozen=True)
class Contribution:
    iso3: str
    demand: float
    utility: float

    @property
    def product(self):
        return self.demand * self.utility


@dataclass(frozen=True)
class MetricReport:
    task_id: str
    tau: float
    value: float
    contributions: dict = field(default_factory=dict)
    coverage: int = 0

    def as_dict(self, digits=6):
        rows = [
            {
                "iso3": c.iso3,
                "demand": round(c.demand, digits),
                "utility": round(c.utility, digits),
                "product": round(c.product, digits),
            }
            for c in sorted(self.contributions.values(), key=lambda c: (-c.product, -c.demand, c.iso3))
        ]
        return {
            "task": self.task_id,
            "tau": round(self.tau, digits),
            "value": round(self.value, digits),
            "coverage": self.coverage,
            "contributions": rows,
        }


def global_metric(utility, demand):
    """Compute ``sum_l d_l * u_l`` over the demand universe.

    Languages absent from the utility table take the table's default
    (0, or the random baseline for classification tasks).
    """
    if utility.is_pairwise:
        raise UniverseMismatch(
            f"{utility.task_id}: utility table is keyed by language pairs; "
            "fix a counterpart language first"
        )
    contributions = {}
    coverage = 0
    for code in demand.universe:
        d = demand.weights[code]
        u = utility_or_default(utility, code)
        if code in utility.entries:
            coverage += 1
        contributions[code] = Contribution(code, d, u)
    value = math.fsum(c.product for c in contributions.values())
    return MetricReport(utility.task_id, demand.tau, min(1.0, max(0.0, value)), contributions, coverage)


def metric_curve(utility, records, taus=DEFAULT_TAUS, exclude_l2=False):
    """``(tau, M_tau)`` for every tau in the grid."""
    taus = list(taus)
    if not taus:
        raise ValueError("empty tau grid")
    records = list(records)
    return [
        (tau, global_metric(utility, demand_vector(records, tau, exclude_l2)).value) for tau in taus
    ]


def restricted_metric(utility, demand, subset):
    """Metric over a subset of the universe with demand renormalized on it."""
    subset = [c for c in dict.fromkeys(subset)]
    if not subset:
        raise EmptySubset("empty language subset")
    outside = [c for c in subset if c not in demand.weights]
    if outside:
        raise UniverseMismatch(f"subset languages outside the demand universe: {', '.join(outside)}")
    return global_metric(utility, restrict(demand, subset))
