"""Loading of task results and trade shares.

Scores are kept on their published scale (percent for accuracy, F-score,
LAS and BLEU; raw distortion for MCD).  Conversion to utilities happens in
:mod:`langequity.utility`.
"""

import math
from dataclasses import dataclass, field

from ._tsv import parse_float, read_rows
from .errors import InvalidRecord, OutOfRangeScore, ParseError, ShareSumExceedsOne, UnknownLanguage
from .registry import ISO3_RE

METRIC_KINDS = ("accuracy", "fscore", "bleu", "las", "mcd")
NORMALIZERS = ("theoretical", "empirical", "fixed_constant", "range_invert")
PERCENT_METRICS = ("accuracy", "fscore", "las")


@dataclass(frozen=True)
class TaskSpec:
    """How a task's raw scores are read and normalized.

    ``constant`` is the fixed divisor Z of the ``fixed_constant`` normalizer.
    ``unseen_classes`` selects the random-baseline default for languages
    without results; ``None`` means unseen languages get utility 0.
    """

    task_id: str
    metric_kind: str
    direction: str = "higher_better"
    normalizer: str = "theoretical"
    theoretical_max: float | None = None
    constant: float | None = None
    unseen_classes: int | None = None

    def __post_init__(self):
        if self.metric_kind not in METRIC_KINDS:
            raise InvalidRecord(f"{self.task_id}: unknown metric kind {self.metric_kind!r}")
        if self.direction not in ("higher_better", "lower_better"):
            raise InvalidRecord(f"{self.task_id}: unknown direction {self.direction!r}")
        if self.normalizer not in NORMALIZERS:
            raise InvalidRecord(f"{self.task_id}: unknown normalizer {self.normalizer!r}")
        if self.metric_kind == "mcd" and (
            self.direction != "lower_better" or self.normalizer != "range_invert"
        ):
            raise InvalidRecord(f"{self.task_id}: mcd requires lower_better and range_invert")
        if self.metric_kind == "bleu" and (
            self.normalizer != "fixed_constant" or not self.constant or self.constant <= 0
        ):
            raise InvalidRecord(f"{self.task_id}: bleu requires fixed_constant with Z > 0")
        if self.normalizer == "theoretical" and not self.theoretical_max:
            raise InvalidRecord(f"{self.task_id}: theoretical normalizer needs theoretical_max")
        if self.unseen_classes is not None and self.unseen_classes < 1:
            raise InvalidRecord(f"{self.task_id}: unseen_classes must be >= 1")

    @property
    def higher_is_better(self):
        return self.direction == "higher_better"

    @property
    def is_pairwise(self):
        return self.metric_kind == "bleu"


# Largest BLEU in the collected MT literature (Serbian-Croatian).
BLEU_Z = 70.0

TASKS = {
    "dep": TaskSpec("dep", "las", normalizer="empirical"),
    "inflection": TaskSpec("inflection", "accuracy", theoretical_max=100.0),
    "nli": TaskSpec("nli", "accuracy", theoretical_max=100.0, unseen_classes=3),
    "qa": TaskSpec("qa", "fscore", theoretical_max=100.0),
    "tts": TaskSpec("tts", "mcd", direction="lower_better", normalizer="range_invert"),
    "mt": TaskSpec("mt", "bleu", normalizer="fixed_constant", constant=BLEU_Z),
}


@dataclass(frozen=True)
class RawResult:
    """One published score.  ``subject`` is an iso3 or a (source, target) pair."""

    task_id: str
    subject: str | tuple
    score: float
    source_tag: str = ""


@dataclass
class TaskResultSet:
    """Best score per subject for one task."""

    spec: TaskSpec
    results: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.results)

    def __iter__(self):
        return iter(self.results.values())

    def scores(self):
        return {subject: r.score for subject, r in self.results.items()}

    def add(self, result):
        """Keep ``result`` if it beats the stored score for its subject.

        Ties keep the first-seen row.
        """
        current = self.results.get(result.subject)
        if current is None:
            self.results[result.subject] = result
            return
        if self.spec.higher_is_better:
            better = result.score > current.score
        else:
            better = result.score < current.score
        if better:
            self.results[result.subject] = result


def check_score(spec, score):
    if not math.isfinite(score):
        raise OutOfRangeScore(f"{spec.task_id}: score {score} is not finite")
    if spec.metric_kind in PERCENT_METRICS and not 0.0 <= score <= 100.0:
        raise OutOfRangeScore(f"{spec.task_id}: {spec.metric_kind} score {score} outside [0, 100]")
    if spec.metric_kind in ("bleu", "mcd") and score < 0:
        raise OutOfRangeScore(f"{spec.task_id}: {spec.metric_kind} score {score} is negative")


RESULT_COLUMNS = ("task_id", "source_iso3", "target_iso3", "score", "source_tag")


def _check_code(code, registry, path, lineno):
    if not ISO3_RE.fullmatch(code):
        raise ParseError(f"bad iso3 code {code!r}", path, lineno)
    if registry is not None and code not in registry:
        raise UnknownLanguage(f"{path}:{lineno}: unknown language {code!r}")


def load_results(path, spec, registry=None):
    """Read the rows of ``spec.task_id`` from a results file.

    Rows for other tasks are skipped, so one file can hold every task.  Only
    the best score per subject is kept (maximum for higher-is-better metrics,
    minimum otherwise).  When ``registry`` is given every code must resolve.
    """
    out = TaskResultSet(spec)
    for lineno, row in read_rows(path, required=("task_id", "source_iso3", "score"), optional=RESULT_COLUMNS):
        if row["task_id"] != spec.task_id:
            continue
        source = row["source_iso3"].lower()
        target = row["target_iso3"].lower()
        _check_code(source, registry, path, lineno)
        if spec.is_pairwise:
            if not target:
                raise ParseError(f"{spec.task_id}: pairwise task needs target_iso3", path, lineno)
            _check_code(target, registry, path, lineno)
            if source == target:
                raise ParseError(f"{spec.task_id}: source equals target ({source})", path, lineno)
            subject = (source, target)
        else:
            if target:
                raise ParseError(f"{spec.task_id}: monolingual task has a target_iso3", path, lineno)
            subject = source
        score = parse_float(row["score"], path, lineno, "score")
        try:
            check_score(spec, score)
        except OutOfRangeScore as exc:
            raise OutOfRangeScore(f"{path}:{lineno}: {exc.detail}") from None
        out.add(RawResult(spec.task_id, subject, score, row["source_tag"]))
    return out


def write_results(path, result_set):
    """Write a result set in the format read by :func:`load_results`."""
    lines = ["\t".join(RESULT_COLUMNS)]
    for subject in sorted(result_set.results):
        r = result_set.results[subject]
        source, target = subject if isinstance(subject, tuple) else (subject, "")
        lines.append("\t".join([r.task_id, source, target, repr(r.score), r.source_tag]))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")


def task_ids_in(path):
    """Distinct task ids present in a results file, in first-seen order."""
    seen = {}
    for _, row in read_rows(path, required=("task_id",)):
        seen.setdefault(row["task_id"], None)
    return list(seen)


@dataclass(frozen=True)
class TradeShare:
    """Share of ``importer_iso3``'s trade (imports or exports) with a partner.

    For ``flow == "export"`` the first field names the exporting community.
    """

    importer_iso3: str
    partner_iso3: str
    share: float
    flow: str = "import"

    def __post_init__(self):
        if self.flow not in ("import", "export"):
            raise InvalidRecord(f"unknown trade flow {self.flow!r}")
        if not 0.0 <= self.share <= 1.0:
            raise InvalidRecord(f"trade share {self.share} outside [0, 1]")


def check_trade_sums(shares, tol=1e-9):
    totals = {}
    for s in shares:
        key = (s.importer_iso3, s.flow)
        totals.setdefault(key, []).append(s.share)
    for (lang, flow), values in sorted(totals.items()):
        total = math.fsum(values)
        if total > 1.0 + tol:
            raise ShareSumExceedsOne(f"{flow} shares of {lang} sum to {total:.6f} > 1")


def load_trade(path, registry=None):
    """Read ``trade.tsv`` (importer_iso3, partner_iso3, share, flow)."""
    shares = []
    for lineno, row in read_rows(
        path, required=("importer_iso3", "partner_iso3", "share"), optional=("flow",)
    ):
        importer = row["importer_iso3"].lower()
        partner = row["partner_iso3"].lower()
        _check_code(importer, registry, path, lineno)
        _check_code(partner, registry, path, lineno)
        share = parse_float(row["share"], path, lineno, "share")
        try:
            shares.append(TradeShare(importer, partner, share, row["flow"].lower() or "import"))
        except InvalidRecord as exc:
            raise ParseError(exc.detail, path, lineno) from None
    check_trade_sums(shares)
    return shares
