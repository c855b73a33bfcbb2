"""A data directory and the task ids that can be evaluated on it.

Layout (only ``languages.tsv`` is mandatory)::

    languages.tsv            registry
    results.tsv              task results, all tasks in one file
    trade.tsv                trade shares per language
    subsets.tsv              named language subsets (name, iso3)
    countries.tsv            country population and GDP   } both present:
    language_countries.tsv   speakers per country         } GDP is attributed
    lexicon.tsv              extra mention forms (glottocodes)
    denylist.txt             extra deny-list forms

Task ids are the monolingual tasks (``dep``, ``qa``, ...) plus MT with one
side fixed: ``mt-to-eng`` scores X -> eng for every X, ``mt-from-deu``
scores deu -> X.
"""

import os
import re
from functools import cached_property
from importlib import resources
from pathlib import Path

from ._tsv import read_rows
from .demand import demand_vector
from .errors import EmptySubset, MissingFile, UnknownTask
from .ingest import TASKS, load_results, load_trade, task_ids_in
from .metric import global_metric, restricted_metric
from .pivot import build_graph, directional_utility
from .registry import attribute_gdp, load_countries, load_language_countries, load_registry
from .utility import build_utility_table

MT_TASK_RE = re.compile(r"mt-(to|from)-([a-z]{3})")
VERNACULAR_RE = re.compile(r"([a-z]{3})-vernaculars")
ENV_VAR = "LANGEQUITY_DATA"


def mini_data_dir():
    """Path of the small bundled demonstration dataset."""
    return Path(str(resources.files("langequity") / "data" / "mini"))


def default_data_dir():
    env = os.environ.get(ENV_VAR)
    return Path(env) if env else None


class DataDir:
    def __init__(self, path):
        self.path = Path(path)
        if not (self.path / "languages.tsv").is_file():
            raise MissingFile(f"{self.path / 'languages.tsv'}: no such file")

    def file(self, name):
        return self.path / name

    def has(self, name):
        return self.file(name).is_file()

    @cached_property
    def registry(self):
        reg = load_registry(self.file("languages.tsv"))
        if self.has("countries.tsv") and self.has("language_countries.tsv"):
            reg = attribute_gdp(
                reg,
                load_language_countries(self.file("language_countries.tsv")),
                load_countries(self.file("countries.tsv")),
            )
        return reg

    @property
    def results_path(self):
        path = self.file("results.tsv")
        if not path.is_file():
            raise MissingFile(f"{path}: no such file")
        return path

    def result_set(self, task_id):
        return load_results(self.results_path, TASKS[task_id], self.registry)

    @cached_property
    def mt_graph(self):
        return build_graph(self.result_set("mt"))

    def trade(self):
        return load_trade(self.file("trade.tsv"), self.registry)

    def available_tasks(self):
        present = task_ids_in(self.results_path)
        return [t for t in TASKS if t in present]

    def default_tasks(self):
        """Every evaluable task id; MT is scored to and from English when present."""
        tasks = [t for t in self.available_tasks() if t != "mt"]
        if "mt" in self.available_tasks() and "eng" in self.mt_graph.nodes:
            tasks += ["mt-to-eng", "mt-from-eng"]
        return tasks

    def subset_codes(self, name):
        if self.has("subsets.tsv"):
            codes = [
                row["iso3"].lower()
                for _, row in read_rows(self.file("subsets.tsv"), required=("name", "iso3"))
                if row["name"] == name
            ]
            if codes:
                for c in codes:
                    self.registry[c]
                return codes
        m = VERNACULAR_RE.fullmatch(name)
        if m:
            codes = [r.iso3 for r in self.registry.members(m.group(1))]
            if codes:
                return codes
        raise EmptySubset(f"no language subset named {name!r}")

    def task(self, task_id, pivot=False):
        """``(utility_table, universe_records)`` for a task id."""
        m = MT_TASK_RE.fullmatch(task_id)
        top = self.registry.top_level()
        if m:
            direction, counterpart = m.groups()
            self.registry[counterpart]
            universe = [r for r in top if r.iso3 != counterpart]
            table = directional_utility(
                self.mt_graph, counterpart, direction, pivot=pivot, universe=[r.iso3 for r in universe]
            )
            return table, universe
        if task_id not in TASKS or task_id == "mt":
            raise UnknownTask(f"unknown task {task_id!r}")
        return build_utility_table(self.result_set(task_id)), top

    def metric(self, task_id, tau, subset=None, pivot=False, exclude_l2=False):
        table, universe = self.task(task_id, pivot)
        if subset is None:
            return global_metric(table, demand_vector(universe, tau, exclude_l2))
        codes = self.subset_codes(subset)
        records = self.registry.subset(codes)
        return restricted_metric(table, demand_vector(records, tau, exclude_l2), codes)
