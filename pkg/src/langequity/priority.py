"""Which languages would raise the global metric the most."""

import math
from dataclasses import dataclass

from .demand import demand_vector
from .errors import EmptyUniverse
from .metric import global_metric
from .utility import utility_or_default


@dataclass(frozen=True)
class PriorityRanking:
    tau: float
    ranked: list
    basis_metric: float

    def to_csv(self):
        lines = ["rank,iso3,gain"]
        lines += [f"{i},{code},{gain:.6f}" for i, (code, gain) in enumerate(self.ranked, start=1)]
        return "\n".join(lines) + "\n"

    def as_dict(self, digits=6):
        return {
            "tau": round(self.tau, digits),
            "basis_metric": round(self.basis_metric, digits),
            "ranked": [
                {"rank": i, "iso3": code, "gain": round(gain, digits)}
                for i, (code, gain) in enumerate(self.ranked, start=1)
            ],
        }


def marginal_gains(utility, demand):
    """Gain in the metric from raising each language's utility to 1."""
    return {
        code: demand.weights[code] * (1.0 - utility_or_default(utility, code)) for code in demand.universe
    }


def priority_ranking(utility, records, tau, k=None, exclude_l2=False):
    """Top-``k`` languages by marginal gain ``d_l * (1 - u_l)``.

    Ties are broken by ascending iso3.  ``k=None`` ranks every language.
    """
    if k is not None and k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    records = list(records)
    if not records:
        raise EmptyUniverse("cannot rank an empty language set")
    demand = demand_vector(records, tau, exclude_l2)
    gains = marginal_gains(utility, demand)
    ranked = sorted(gains.items(), key=lambda kv: (-kv[1], kv[0]))
    if k is not None:
        ranked = ranked[:k]
    return PriorityRanking(float(tau), ranked, global_metric(utility, demand).value)


def greedy_population_curve(utility, records, tau=1.0, exclude_l2=False):
    """Metric after forcing utility 1 on the most populous languages, one at a time.

    Element ``i`` is the metric once the ``i`` most populous languages
    (ties by iso3) are served perfectly; element 0 is the current value and
    the last element is exactly 1.
    """
    records = list(records)
    if not records:
        raise EmptyUniverse("cannot build a curve over an empty language set")
    demand = demand_vector(records, tau, exclude_l2)
    order = sorted(records, key=lambda r: (-r.effective_population(exclude_l2), r.iso3))
    gaps = [demand.weights[r.iso3] * (1.0 - utility_or_default(utility, r.iso3)) for r in order]
    # M = 1 - (remaining unmet demand); the empty suffix makes the end exactly 1
    curve = [1.0 - math.fsum(gaps[i:]) for i in range(len(gaps) + 1)]
    return [min(1.0, max(0.0, m)) for m in curve]
