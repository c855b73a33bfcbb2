"""Acceptance criteria, one marker per criterion.

Criteria 1-3 need the released paper-scale data converted to the data
directory layout (see ``scripts/fetch_paper_data.py``); point
``LANGEQUITY_PAPER_DATA`` at it to run them.  The terminal summary prints
one PASS/FAIL/SKIP line per criterion.
"""

import itertools
import math
import os
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from langequity.dataset import DataDir, mini_data_dir
from langequity.demand import demand_vector
from langequity.ingest import BLEU_Z, TASKS, RawResult, TaskResultSet
from langequity.metric import global_metric
from langequity.pivot import PivotGraph, all_pairs_estimates, best_pivot_path
from langequity.priority import greedy_population_curve, priority_ranking
from langequity.pubscan import MentionLexicon, PaperRecord, citation_percentiles, scan_languages
from langequity.registry import LanguageRecord
from langequity.utility import UtilityTable, build_utility_table, normalize_score, utility_or_default

from oracles import dot_product_metric, enumerate_all_paths

PAPER_DATA = os.environ.get("LANGEQUITY_PAPER_DATA")
needs_paper_data = pytest.mark.skipif(
    not PAPER_DATA, reason="set LANGEQUITY_PAPER_DATA to the converted paper data directory"
)

C1 = pytest.mark.criterion("1", "metric reproduction on paper data (+-0.02)", budget=10)
C2 = pytest.mark.criterion("2", "MT aggregate reproduction on paper data (+-0.02)")
C3 = pytest.mark.criterion("3", "MT-to-English priority top-3 on paper data")
C4 = pytest.mark.criterion("4", "property suite against oracles", budget=5)
C5 = pytest.mark.criterion("5", "byte-identical CLI output across runs")

CODES = [a + b + c for a, b, c in itertools.product("abcdefghij", repeat=3)]


# -- criteria 1-3 -------------------------------------------------------------


@pytest.fixture(scope="module")
def paper():
    return DataDir(PAPER_DATA)


@C1
@needs_paper_data
@pytest.mark.parametrize(
    "task, expected",
    [
        ("dep", 0.63),
        ("inflection", 0.64),
        ("nli", 0.42),
        ("qa", 0.36),
        ("tts", 0.32),
        ("mt-to-eng", 0.49),
        ("mt-to-spa", 0.36),
        ("mt-to-ben", 0.10),
    ],
)
def test_c1_metric(paper, task, expected):
    assert paper.metric(task, 1.0).value == pytest.approx(expected, abs=0.02)


@C1
@needs_paper_data
@pytest.mark.parametrize("subset, expected", [("ara-vernaculars", 0.58), ("swa-vernaculars", 0.23)])
def test_c1_vernaculars(paper, subset, expected):
    assert paper.metric("qa", 1.0, subset=subset).value == pytest.approx(expected, abs=0.02)


@C2
@needs_paper_data
@pytest.mark.parametrize("task, expected", [("mt-from-eng", 0.25), ("mt-to-eng", 0.27)])
def test_c2_english(paper, task, expected):
    assert paper.metric(task, 1.0).value == pytest.approx(expected, abs=0.02)
    assert paper.metric(task, 0.0).value < 0.01


@C2
@needs_paper_data
@pytest.mark.parametrize(
    "code, expected", [("deu", 0.356), ("fra", 0.309), ("cmn", 0.232), ("ben", 0.148), ("mya", 0.092)]
)
def test_c2_all_pairs(paper, code, expected):
    assert paper.metric(f"mt-from-{code}", 1.0, pivot=True).value == pytest.approx(expected, abs=0.02)


@C3
@needs_paper_data
def test_c3_priority(paper):
    table, universe = paper.task("mt-to-eng")
    ranking = priority_ranking(table, universe, 1.0, k=3)
    assert [code for code, _ in ranking.ranked] == ["cmn", "hin", "ben"]


# -- criterion 4 --------------------------------------------------------------


def _fixture(rng, n_max=20):
    n = int(rng.integers(1, n_max + 1))
    pops = rng.integers(0, 10**9, size=n)
    pops[rng.integers(n)] += 1  # at least one speaker
    utils = rng.random(n)
    utils[rng.random(n) < 0.2] = 0.0
    utils[rng.random(n) < 0.2] = 1.0
    records = [LanguageRecord(c, population=float(p)) for c, p in zip(CODES, pops)]
    table = UtilityTable("fixture", dict(zip(CODES, utils.tolist())))
    return records, table


@C4
def test_c4_metric_matches_oracle():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        records, table = _fixture(rng)
        d = demand_vector(records, float(rng.random()))
        value = global_metric(table, d).value
        assert 0.0 <= value <= 1.0
        oracle = dot_product_metric([d.weights[c] for c in d.universe], [table.entries[c] for c in d.universe])
        assert abs(value - oracle.expected) <= 1e-9


@C4
def test_c4_demand_sums_to_one():
    rng = np.random.default_rng(2)
    for _ in range(1000):
        n = int(rng.integers(1, 60))
        pops = rng.integers(1, 2 * 10**9, size=n).astype(float)
        tau = float(rng.random())
        d = demand_vector([LanguageRecord(c, population=p) for c, p in zip(CODES, pops)], tau)
        assert abs(math.fsum(d.weights.values()) - 1.0) <= 1e-9
        uniform = demand_vector([LanguageRecord(c, population=p) for c, p in zip(CODES, pops)], 0.0)
        assert set(uniform.weights.values()) == {1.0 / n}


@C4
def test_c4_monotone_in_utility():
    rng = np.random.default_rng(3)
    for _ in range(1000):
        records, table = _fixture(rng)
        d = demand_vector(records, float(rng.random()))
        before = global_metric(table, d).value
        code = records[int(rng.integers(len(records)))].iso3
        old = table.entries[code]
        raised = UtilityTable("fixture", {**table.entries, code: old + (1.0 - old) * float(rng.random())})
        assert global_metric(raised, d).value >= before


@C4
def test_c4_pivot_matches_enumeration():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        nodes = CODES[:n]
        edges = {
            (s, t): float(rng.uniform(0.05, 1.0))
            for s, t in itertools.permutations(nodes, 2)
            if rng.random() < 0.45
        }
        graph = PivotGraph(nodes, edges)
        for (s, t), est in all_pairs_estimates(graph).items():
            best, _ = enumerate_all_paths(edges, s, t).expected
            assert est.estimate == pytest.approx(best, rel=1e-12, abs=0)
            assert est.estimate >= graph.weight(s, t)


@C4
def test_c4_pivot_chain_of_point_eight():
    est = best_pivot_path(PivotGraph({"s", "p", "t"}, {("s", "p"): 0.8, ("p", "t"): 0.8}), "s", "t")
    assert est.path == ("s", "p", "t")
    # 0.8 * 0.8 is 0.6400000000000001 in binary floating point
    assert est.estimate == pytest.approx(0.64, abs=1e-12)


@C4
def test_c4_mcd_and_bleu_transforms():
    rng = np.random.default_rng(5)
    for _ in range(200):
        scores = rng.uniform(3.0, 12.0, size=int(rng.integers(2, 30)))
        rs = TaskResultSet(TASKS["tts"])
        for c, x in zip(CODES, scores):
            rs.add(RawResult("tts", c, float(x)))
        table = build_utility_table(rs)
        assert table.entries[CODES[int(np.argmax(scores))]] == 0.0
        assert table.entries[CODES[int(np.argmin(scores))]] == 1.0
    assert BLEU_Z == 70.0
    assert normalize_score(TASKS["mt"], 70.0) == 1.0


@C4
def test_c4_greedy_curve():
    rng = np.random.default_rng(6)
    for _ in range(200):
        records, table = _fixture(rng)
        curve = greedy_population_curve(table, records)
        assert abs(curve[0] - global_metric(table, demand_vector(records, 1.0)).value) <= 1e-9
        assert curve[-1] == 1.0
        assert all(b >= a for a, b in zip(curve, curve[1:]))


@C4
def test_c4_unseen_defaults():
    for task in ("dep", "inflection", "qa", "tts"):
        rs = TaskResultSet(TASKS[task])
        rs.add(RawResult(task, "eng", 50.0))
        rs.add(RawResult(task, "deu", 40.0))
        assert utility_or_default(build_utility_table(rs), "yor") == 0.0
    rs = TaskResultSet(TASKS["nli"])
    rs.add(RawResult("nli", "eng", 90.0))
    assert utility_or_default(build_utility_table(rs), "yor") == 1.0 / 3.0


@C4
def test_c4_pubscan_planted_mentions():
    rng = np.random.default_rng(7)
    registry = DataDir(mini_data_dir()).registry
    lexicon = MentionLexicon.from_registry(registry)
    candidates = [r for r in registry.top_level() if r.iso3 not in ("shx", "mdy", "eve")]
    filler = np.array(["model", "she", "even", "male", "The", "are", "Kim", "Sydney", "data"])
    for _ in range(20):
        planted = [candidates[i] for i in rng.choice(len(candidates), size=12, replace=False)]
        tokens = list(rng.choice(filler, size=10_000))
        for rec in planted:
            tokens.insert(int(rng.integers(len(tokens))), rec.name)
        found = scan_languages(" ".join(tokens), lexicon)
        truth = {r.iso3 for r in planted}
        precision = len(found & truth) / len(found)
        recall = len(found & truth) / len(truth)
        assert precision == recall == 1.0


@C4
def test_c4_percentile_groups():
    assert citation_percentiles([PaperRecord("a", 2020, "X", citations=3)])[0].citation_percentile == 0.5
    ties = citation_percentiles([PaperRecord(str(i), 2020, "X", citations=7) for i in range(5)])
    assert {p.citation_percentile for p in ties} == {0.5}
    rng = np.random.default_rng(8)
    papers = [
        PaperRecord(str(i), int(rng.integers(2015, 2020)), str(rng.choice(["ACL", "EMNLP"])), citations=int(c))
        for i, c in enumerate(rng.integers(0, 30, size=500))
    ]
    groups = {}
    for p in citation_percentiles(papers):
        groups.setdefault(p.group, []).append(p.citation_percentile)
    for values in groups.values():
        assert abs(math.fsum(values) / len(values) - 0.5) <= 1e-12


# -- criterion 5 --------------------------------------------------------------


def _cli(args, out_dir):
    return subprocess.run(
        [sys.executable, "-m", "langequity", *args, "--out", str(out_dir)],
        capture_output=True,
        check=True,
    ).stdout


@C5
@pytest.mark.parametrize(
    "args",
    [
        ["report", "--taus", "0,0.5,1"],
        ["metric", "--format", "svg", "--tau", "0", "--tau", "1"],
        ["curve", "--greedy", "--format", "svg", "--pivot"],
        ["rank", "--task", "mt-to-eng", "--top", "5"],
        ["pivot", "--all"],
        ["pubscan", "--corpus", "CORPUS", "--format", "svg"],
    ],
    ids=lambda a: a[0],
)
def test_c5_byte_identical(tmp_path, args):
    data = Path(mini_data_dir())
    args = [str(data / "corpus") if a == "CORPUS" else a for a in args] + ["--data-dir", str(data)]
    first = _cli(args, tmp_path / "one")
    second = _cli(args, tmp_path / "two")
    assert first == second
    one = sorted(p.name for p in (tmp_path / "one").iterdir())
    assert one == sorted(p.name for p in (tmp_path / "two").iterdir())
    assert one
    for name in one:
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()
