"""Demand over languages (population based) and over language pairs (trade based)."""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import AllZeroPopulations, EmptyUniverse, NoRowsForFlow, UnmappedCountry
from .ingest import TradeShare, check_trade_sums


@dataclass(frozen=True)
class DemandVector:
    tau: float
    weights: dict
    universe: tuple

    def __getitem__(self, iso3):
        return self.weights[iso3]

    def __len__(self):
        return len(self.universe)


def demand_vector(records, tau, exclude_l2=False):
    r"""Demand weights interpolating between linguistic and demographic demand.

    .. math:: d_l = n_l^\tau / \sum_{l'} n_{l'}^\tau

    with :math:`0^0 = 1`, so ``tau=0`` gives every language the same weight
    and ``tau=1`` weights languages by speaker count.

    Parameters
    ----------
    records : sequence of LanguageRecord
        The language universe.
    tau : float in [0, 1]
    exclude_l2 : bool
        Scale each population by ``1 - excluded_fraction`` first.
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    records = list(records)
    if not records:
        raise EmptyUniverse("demand over an empty language set")
    codes = tuple(r.iso3 for r in records)
    pops = np.array([r.effective_population(exclude_l2) for r in records], dtype=float)
    if tau == 0:
        raw = np.ones_like(pops)
    else:
        if not np.any(pops > 0):
            raise AllZeroPopulations(f"all {len(pops)} populations are zero at tau={tau}")
        # scale first so large populations cannot overflow the power
        raw = np.power(pops / pops.max(), tau)
    weights = raw / raw.sum()
    return DemandVector(float(tau), dict(zip(codes, weights.tolist())), codes)


def restrict(demand, subset):
    """Renormalize ``demand`` over ``subset`` (order of ``subset`` kept)."""
    subset = tuple(subset)
    total = math.fsum(demand.weights[c] for c in subset)
    if total <= 0:
        raise AllZeroPopulations("restricted demand has zero total weight")
    return DemandVector(demand.tau, {c: demand.weights[c] / total for c in subset}, subset)


@dataclass(frozen=True)
class PairDemand:
    """Translation demand per ordered pair ``(source, target)``.

    ``weights`` are renormalized within each target (import basis) or source
    (export basis); ``shares`` keep the raw partner shares.
    """

    weights: dict
    basis: str
    shares: dict = field(default_factory=dict)

    def top_pairs(self, k=None, by="share"):
        """Pairs ordered by raw ``share`` (default) or renormalized ``weight``.

        Ties are broken by the pair codes.
        """
        values = self.shares if by == "share" else self.weights
        ranked = sorted(values.items(), key=lambda kv: (-kv[1], kv[0]))
        return ranked if k is None else ranked[:k]


def econ_pair_demand(trade, basis="import"):
    """Pair demand proportional to trade partner shares.

    With the import basis a row ``(t, s, share)`` means community ``t``
    imports ``share`` of its goods from ``s``, which is read as demand for
    ``s -> t`` translation.  With the export basis ``(s, t, share)`` means
    ``s`` exports to ``t``, again demand for ``s -> t``.
    """
    rows = [r for r in trade if r.flow == basis]
    if not rows:
        raise NoRowsForFlow(f"no trade rows with flow {basis!r}")
    shares = {}
    for r in rows:
        if basis == "import":
            pair = (r.partner_iso3, r.importer_iso3)
        else:
            pair = (r.importer_iso3, r.partner_iso3)
        shares[pair] = shares.get(pair, 0.0) + r.share
    anchor = 1 if basis == "import" else 0
    totals = {}
    for pair, s in shares.items():
        totals.setdefault(pair[anchor], []).append(s)
    totals = {k: math.fsum(v) for k, v in totals.items()}
    weights = {}
    for pair, s in sorted(shares.items()):
        total = totals[pair[anchor]]
        weights[pair] = s / total if total > 0 else 0.0
    return PairDemand(weights, basis, dict(sorted(shares.items())))


@dataclass(frozen=True)
class CountryTradeShare:
    reporter_country: str
    partner_country: str
    share: float
    flow: str = "import"


def merge_country_weights(country_shares, country_to_language):
    """Map country-level trade shares onto languages.

    Partner countries that share a language have their shares summed (for
    instance Germany and Austria both contribute to German).  When several
    reporting countries map to the same language their partner profiles are
    averaged so the merged shares remain a distribution.
    """
    country_shares = list(country_shares)
    for cs in country_shares:
        for country in (cs.reporter_country, cs.partner_country):
            if country not in country_to_language:
                raise UnmappedCountry(f"country {country!r} has no language mapping")
    reporters = {}
    for cs in country_shares:
        lang = country_to_language[cs.reporter_country]
        reporters.setdefault((lang, cs.flow), set()).add(cs.reporter_country)
    merged = {}
    for cs in country_shares:
        key = (
            country_to_language[cs.reporter_country],
            country_to_language[cs.partner_country],
            cs.flow,
        )
        merged.setdefault(key, []).append(cs.share)
    out = []
    for (reporter, partner, flow), values in sorted(merged.items()):
        if reporter == partner:
            continue
        n_reporters = len(reporters[(reporter, flow)])
        out.append(TradeShare(reporter, partner, min(1.0, math.fsum(values) / n_reporters), flow))
    check_trade_sums(out)
    return out
