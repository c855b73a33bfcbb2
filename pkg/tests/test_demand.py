import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from langequity.demand import (
    CountryTradeShare,
    demand_vector,
    econ_pair_demand,
    merge_country_weights,
    restrict,
)
from langequity.errors import AllZeroPopulations, EmptyUniverse, NoRowsForFlow, UnmappedCountry
from langequity.ingest import TradeShare, load_trade
from langequity.registry import LanguageRecord

from oracles import proportional_weights


def _records(pops):
    return [LanguageRecord(f"l{chr(97 + i // 26)}{chr(97 + i % 26)}", population=p) for i, p in enumerate(pops)]


def test_tau_zero_uniform():
    d = demand_vector(_records([1, 10, 100, 1000, 0]), 0.0)
    assert list(d.weights.values()) == [0.2] * 5


def test_tau_one_proportional():
    d = demand_vector(_records([300, 100]), 1.0)
    assert list(d.weights.values()) == pytest.approx([0.75, 0.25], abs=1e-12)


def test_tau_half_square_roots():
    d = demand_vector(_records([900, 100]), 0.5)
    assert list(d.weights.values()) == pytest.approx([0.75, 0.25], abs=1e-12)


def test_exclude_l2():
    recs = [
        LanguageRecord("aaa", population=100, excluded_fraction=0.5),
        LanguageRecord("bbb", population=50),
    ]
    d = demand_vector(recs, 1.0, exclude_l2=True)
    assert d["aaa"] == pytest.approx(0.5)


def test_errors():
    with pytest.raises(EmptyUniverse):
        demand_vector([], 0.5)
    with pytest.raises(AllZeroPopulations):
        demand_vector(_records([0, 0]), 0.3)
    assert demand_vector(_records([0, 0]), 0.0)["laa"] == 0.5
    with pytest.raises(ValueError):
        demand_vector(_records([1]), 1.5)


def test_huge_populations_do_not_overflow():
    d = demand_vector(_records([1e300, 1e300]), 1.0)
    assert list(d.weights.values()) == [0.5, 0.5]


def test_restrict_renormalizes():
    d = demand_vector(_records([600, 300, 100]), 1.0)
    r = restrict(d, ["lab", "lac"])
    assert r.universe == ("lab", "lac")
    assert r["lab"] == pytest.approx(0.75)


@given(
    st.lists(st.integers(0, 2_000_000_000), min_size=1, max_size=40),
    st.floats(0, 1),
)
def test_weights_match_oracle(pops, tau):
    if tau > 0 and not any(p > 0 for p in pops):
        return
    d = demand_vector(_records(pops), tau)
    weights = list(d.weights.values())
    assert math.fsum(weights) == pytest.approx(1.0, abs=1e-9)
    assert all(w >= 0 for w in weights)
    assert weights == pytest.approx(proportional_weights(pops, tau), rel=1e-9, abs=1e-12)
    for p, w in zip(pops, weights):
        if w == 0:
            assert p == 0 and tau > 0


AZE_IMPORTS = [("rus", 0.168), ("tur", 0.147), ("cmn", 0.112), ("eng", 0.085), ("ukr", 0.055), ("deu", 0.055)]


def test_azerbaijani_import_demand():
    trade = [TradeShare("aze", p, s) for p, s in AZE_IMPORTS]
    pd = econ_pair_demand(trade, "import")
    assert math.fsum(s for _, s in AZE_IMPORTS) == pytest.approx(0.622)
    assert pd.weights[("rus", "aze")] == pytest.approx(0.168 / 0.622)
    assert pd.weights[("rus", "aze")] == pytest.approx(0.270, abs=5e-4)
    assert math.fsum(pd.weights.values()) == pytest.approx(1.0)
    assert pd.top_pairs(1) == [(("rus", "aze"), 0.168)]


def test_single_partner_weight_one():
    pd = econ_pair_demand([TradeShare("bel", "rus", 0.4)], "import")
    assert pd.weights == {("rus", "bel"): 1.0}


def test_export_basis_direction():
    pd = econ_pair_demand([TradeShare("bel", "rus", 0.7, "export")], "export")
    assert pd.weights == {("bel", "rus"): 1.0}
    with pytest.raises(NoRowsForFlow):
        econ_pair_demand([TradeShare("bel", "rus", 0.7, "export")], "import")


def test_mini_trade_top_pair_is_rus_bel(mini_dir):
    pd = econ_pair_demand(load_trade(mini_dir / "trade.tsv"), "import")
    assert pd.top_pairs(1)[0][0] == ("rus", "bel")


def test_merge_sums_partner_countries():
    shares = [CountryTradeShare("CZ", "DE", 0.05), CountryTradeShare("CZ", "AT", 0.02)]
    out = merge_country_weights(shares, {"CZ": "ces", "DE": "deu", "AT": "deu"})
    assert len(out) == 1
    assert out[0].share == pytest.approx(0.07)


def test_merge_identity():
    shares = [CountryTradeShare("CZ", "DE", 0.05), CountryTradeShare("CZ", "PL", 0.03)]
    out = merge_country_weights(shares, {"CZ": "ces", "DE": "deu", "PL": "pol"})
    assert {(t.partner_iso3, t.share) for t in out} == {("deu", 0.05), ("pol", 0.03)}


def test_merge_three_into_macro():
    shares = [CountryTradeShare("KE", c, s) for c, s in [("EG", 0.1), ("MA", 0.2), ("TN", 0.3)]]
    out = merge_country_weights(shares, {"KE": "swa", "EG": "ara", "MA": "ara", "TN": "ara"})
    assert out[0].share == pytest.approx(0.6)


def test_merge_unmapped():
    with pytest.raises(UnmappedCountry):
        merge_country_weights([CountryTradeShare("CZ", "XX", 0.1)], {"CZ": "ces"})
