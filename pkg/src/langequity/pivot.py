"""Translation quality for unevaluated pairs via pivot languages.

Edges carry the best normalized BLEU reported for a direction.  The estimate
for ``s -> t`` is the largest product of edge weights along any directed
path, which models the error compounding of cascaded systems.  Because all
weights lie in (0, 1], maximizing the product is a shortest path problem on
``-log(w)`` and Dijkstra's algorithm applies.
"""

import heapq
import math
import warnings
from dataclasses import dataclass, field

from .errors import UnknownNode
from .ingest import BLEU_Z
from .utility import DefaultPolicy, NormalizerContext, UtilityTable


@dataclass(frozen=True)
class PivotGraph:
    nodes: frozenset
    edges: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        clean = {}
        for (s, t), w in self.edges.items():
            if not 0.0 <= w <= 1.0:
                raise ValueError(f"edge {s}->{t} weight {w} outside [0, 1]")
            if s == t:
                raise ValueError(f"self loop on {s}")
            if w > 0:
                clean[(s, t)] = w
        object.__setattr__(self, "edges", clean)
        adjacency = {}
        for (s, t), w in sorted(clean.items()):
            adjacency.setdefault(s, []).append((t, w))
        object.__setattr__(self, "_adjacency", adjacency)
        missing = {n for pair in clean for n in pair} - self.nodes
        if missing:
            raise ValueError(f"edges reference unknown nodes: {sorted(missing)}")

    def successors(self, node):
        return self._adjacency.get(node, [])

    def weight(self, source, target):
        return self.edges.get((source, target), 0.0)


@dataclass(frozen=True)
class PivotEstimate:
    source: str
    target: str
    estimate: float
    path: tuple = ()

    @property
    def pivots(self):
        return self.path[1:-1]

    def path_string(self):
        return "-".join(self.path)


def build_graph(mt_results, z=None):
    """Graph with one edge per observed direction, weight = best BLEU / Z.

    ``mt_results`` is a :class:`~langequity.ingest.TaskResultSet` of BLEU
    scores keyed by ``(source, target)``.  Weights above 1 are clamped.
    """
    z = z or mt_results.spec.constant or BLEU_Z
    best = {}
    nodes = set()
    for r in mt_results:
        s, t = r.subject
        nodes.update((s, t))
        best[(s, t)] = max(best.get((s, t), 0.0), r.score)
    edges = {}
    clamped = []
    for pair, bleu in best.items():
        w = bleu / z
        if w > 1.0:
            clamped.append(pair)
            w = 1.0
        edges[pair] = w
    if clamped:
        shown = ", ".join(f"{s}->{t}" for s, t in sorted(clamped)[:5])
        warnings.warn(f"{len(clamped)} edge(s) with BLEU above {z} clamped to 1: {shown}", stacklevel=2)
    return PivotGraph(frozenset(nodes), edges)


def _dijkstra(graph, source):
    """Best (cost, hops, path) to every reachable node, cost = sum of -log w."""
    best = {source: (0.0, 0, (source,))}
    heap = [(0.0, 0, (source,))]
    done = set()
    while heap:
        cost, hops, path = heapq.heappop(heap)
        node = path[-1]
        if node in done:
            continue
        done.add(node)
        for nxt, w in graph.successors(node):
            if nxt in done:
                continue
            cand = (cost - math.log(w), hops + 1, path + (nxt,))
            if nxt not in best or cand < best[nxt]:
                best[nxt] = cand
                heapq.heappush(heap, cand)
    return best


def _make(graph, source, target, found):
    if found is None:
        return PivotEstimate(source, target, 0.0, ())
    path = found[2]
    estimate = math.prod(graph.edges[(a, b)] for a, b in zip(path, path[1:]))
    return PivotEstimate(source, target, estimate, path)


def best_pivot_path(graph, source, target):
    """Highest-product path from ``source`` to ``target``.

    The direct edge competes as a one-edge path, so the estimate is never
    below the published score.  Unreachable pairs get estimate 0 and an
    empty path.
    """
    for node in (source, target):
        if node not in graph.nodes:
            raise UnknownNode(f"{node!r} is not in the pivot graph")
    if source == target:
        raise ValueError(f"source and target are both {source!r}")
    return _make(graph, source, target, _dijkstra(graph, source).get(target))


def all_pairs_estimates(graph):
    """Estimate for every ordered pair of distinct nodes."""
    out = {}
    for s in sorted(graph.nodes):
        found = _dijkstra(graph, s)
        for t in sorted(graph.nodes):
            if t != s:
                out[(s, t)] = _make(graph, s, t, found.get(t))
    return out


def estimates_to_csv(estimates):
    lines = ["source,target,estimate,path"]
    for (s, t) in sorted(estimates):
        e = estimates[(s, t)]
        lines.append(f"{s},{t},{e.estimate:.6f},{e.path_string()}")
    return "\n".join(lines) + "\n"


def directional_utility(graph, counterpart, direction, pivot=True, universe=None):
    """Per-language MT utility with one side fixed to ``counterpart``.

    ``direction="to"`` scores ``X -> counterpart`` for every other language X;
    ``direction="from"`` scores ``counterpart -> X``.  With ``pivot`` the
    pivot estimate is used (never below the direct score); otherwise only
    direct edges count.  ``universe`` limits which languages get entries.
    """
    if direction not in ("to", "from"):
        raise ValueError(f"direction must be 'to' or 'from', got {direction!r}")
    entries = {}
    if counterpart in graph.nodes:
        if pivot:
            found = _dijkstra(graph, counterpart) if direction == "from" else None
            for other in sorted(graph.nodes - {counterpart}):
                if direction == "from":
                    value = _make(graph, counterpart, other, found.get(other)).estimate
                else:
                    value = best_pivot_path(graph, other, counterpart).estimate
                if value > 0:
                    entries[other] = value
        else:
            for (s, t), w in graph.edges.items():
                if direction == "to" and t == counterpart:
                    entries[s] = w
                elif direction == "from" and s == counterpart:
                    entries[t] = w
    if universe is not None:
        allowed = set(universe)
        entries = {k: v for k, v in entries.items() if k in allowed}
    task = f"mt-{direction}-{counterpart}"
    return UtilityTable(
        task, dict(sorted(entries.items())), DefaultPolicy("zero"), NormalizerContext("fixed_constant")
    )
