"""Brute-force reference implementations used to cross-check the engines.

Nothing here imports from ``langequity``: an oracle that shared code with
the engine it checks would agree with it by construction.
"""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

MAX_ORACLE_NODES = 8


class GraphTooLarge(ValueError):
    pass


class LengthMismatch(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    """An expected value plus the steps that produced it."""

    description: str
    expected: object
    trace: list = field(default_factory=list)


def enumerate_all_paths(edges, source, target):
    """Best product over every simple directed path from ``source`` to ``target``.

    ``edges`` maps ``(s, t)`` to a weight in [0, 1]; zero weights count as
    missing.  Ties on the product prefer fewer hops, then the
    lexicographically smaller path.  An unreachable target yields
    ``(0.0, ())``.
    """
    nodes = sorted({n for pair in edges for n in pair} | {source, target})
    if len(nodes) > MAX_ORACLE_NODES:
        raise GraphTooLarge(f"{len(nodes)} nodes; the oracle enumerates at most {MAX_ORACLE_NODES}")
    inner = [n for n in nodes if n not in (source, target)]
    best = None
    trace = []
    for r in range(len(inner) + 1):
        for middle in itertools.permutations(inner, r):
            path = (source, *middle, target)
            weights = [edges.get(pair, 0.0) for pair in zip(path, path[1:])]
            if any(w <= 0 for w in weights):
                continue
            product = 1.0
            for w in weights:
                product *= w
            trace.append((path, product))
            key = (-product, len(path), path)
            if best is None or key < best[0]:
                best = (key, product, path)
    if best is None:
        return OracleResult(f"{source}->{target}: unreachable", (0.0, ()), trace)
    return OracleResult(f"{source}->{target}: best of {len(trace)} paths", (best[1], best[2]), trace)


def dot_product_metric(demands, utilities):
    """Plain sum of ``d * u`` computed exactly with fractions, last term first."""
    demands = list(demands)
    utilities = list(utilities)
    if len(demands) != len(utilities):
        raise LengthMismatch(f"{len(demands)} demands vs {len(utilities)} utilities")
    total = Fraction(0)
    trace = []
    for d, u in zip(reversed(demands), reversed(utilities)):
        term = Fraction(d) * Fraction(u)
        total += term
        trace.append((d, u, float(term)))
    return OracleResult("sum of demand * utility", float(total), trace)


def proportional_weights(populations, tau):
    """``n^tau / sum n^tau`` with ``0 ** 0 == 1``, written out longhand."""
    raw = []
    for n in populations:
        if tau == 0:
            raw.append(1.0)
        elif n == 0:
            raw.append(0.0)
        else:
            raw.append(float(n) ** tau)
    total = sum(raw)
    return [x / total for x in raw]


def midrank_percentiles(values):
    """Percentile of each value: (count below + half the ties) / n, by counting."""
    n = len(values)
    out = []
    for v in values:
        below = sum(1 for w in values if w < v)
        tied = sum(1 for w in values if w == v)
        out.append((below + 0.5 * tied) / n)
    return out
