import os
from pathlib import Path

import pytest
from hypothesis import settings

from langequity.dataset import mini_data_dir

settings.register_profile("default", deadline=None, max_examples=100)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# Acceptance bookkeeping: criterion id -> {"title", "budget", "outcomes", "seconds"}
_CRITERIA = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(cid, title, budget=None): acceptance criterion")


def pytest_collection_modifyitems(items):
    for item in items:
        mark = item.get_closest_marker("criterion")
        if mark is None:
            continue
        cid, title = mark.args[:2]
        _CRITERIA.setdefault(
            cid, {"title": title, "budget": mark.kwargs.get("budget"), "outcomes": [], "seconds": 0.0}
        )
        item.user_properties.append(("criterion", cid))


def pytest_runtest_logreport(report):
    cid = dict(report.user_properties).get("criterion")
    if cid is None:
        return
    entry = _CRITERIA[cid]
    entry["seconds"] += report.duration
    if report.when == "call" or report.outcome != "passed":
        entry["outcomes"].append(report.outcome)


def _status(entry):
    outcomes = entry["outcomes"]
    if not outcomes:
        return "NOT RUN"
    if "failed" in outcomes:
        return "FAIL"
    if all(o == "skipped" for o in outcomes):
        return "SKIP"
    if entry["budget"] is not None and entry["seconds"] >= entry["budget"]:
        return "FAIL"
    return "PASS"


def pytest_sessionfinish(session):
    # a criterion that only blew its time budget still fails the run
    if session.exitstatus == 0 and any(_status(e) == "FAIL" for e in _CRITERIA.values()):
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid in sorted(_CRITERIA):
        entry = _CRITERIA[cid]
        timing = f"{entry['seconds']:.2f}s"
        if entry["budget"] is not None:
            timing += f" (budget {entry['budget']:g}s)"
        tr.write_line(f"{_status(entry):<5} criterion {cid}: {entry['title']} [{timing}]")


@pytest.fixture
def mini_dir():
    return Path(mini_data_dir())
