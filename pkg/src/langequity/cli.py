"""Command line front end.

Every failure prints one ``ERROR <code>: <detail>`` line on stderr.  Data and
usage errors exit with status 2, unexpected failures with status 1.
"""

import argparse
import json
import math
import sys
from pathlib import Path

from . import svg
from .dataset import ENV_VAR, DataDir, default_data_dir
from .errors import InsufficientData, LangEquityError, MissingFile
from .metric import DEFAULT_TAUS, metric_curve
from .pivot import PivotEstimate, all_pairs_estimates, best_pivot_path, estimates_to_csv
from .priority import greedy_population_curve, priority_ranking
from .pubscan import (
    MentionLexicon,
    citation_percentiles,
    languages_vs_citations_summary,
    load_corpus,
    load_denylist,
    load_lexicon,
    papers_per_language_summary,
    scan_papers,
)


class UsageError(LangEquityError):
    code = "usage"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def fmt(x):
    return f"{x:.6f}"


def _clean(obj):
    if isinstance(obj, float):
        return None if not math.isfinite(obj) else round(obj, 6)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def dump_json(obj):
    return json.dumps(_clean(obj), indent=2, ensure_ascii=False) + "\n"


def _tau(text):
    try:
        value = float(text)
    except ValueError:
        raise UsageError(f"tau must be a number, got {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise UsageError(f"tau must lie in [0, 1], got {text}")
    return value


def _taus(text):
    return [_tau(t) for t in text.split(",") if t.strip()]


def _tasks(args, data):
    tasks = []
    for item in args.task or []:
        tasks += [t.strip() for t in item.split(",") if t.strip()]
    return tasks or data.default_tasks()


def _task_label(task, subset):
    return f"{task}@{subset}" if subset else task


class Output:
    """Collects named output files; writes them under ``--out`` in sorted order."""

    def __init__(self, out_dir):
        self.out_dir = Path(out_dir) if out_dir else None
        self.files = {}

    def add(self, name, text):
        self.files[name] = text

    def flush(self):
        if self.out_dir is None:
            return
        self.out_dir.mkdir(parents=True, exist_ok=True)
        for name in sorted(self.files):
            with open(self.out_dir / name, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(self.files[name])


def cmd_metric(args, data, out):
    taus = args.tau or [1.0]
    rows = ["task\ttau\tvalue\tcoverage"]
    reports = []
    for task in _tasks(args, data):
        for tau in taus:
            rep = data.metric(task, tau, subset=args.subset, pivot=args.pivot, exclude_l2=args.exclude_l2)
            label = _task_label(task, args.subset)
            body = rep.as_dict()
            body["task"] = label
            reports.append(body)
            rows.append(f"{label}\t{fmt(tau)}\t{fmt(rep.value)}\t{rep.coverage}")
            stem = f"metric_{label.replace('@', '_')}_tau{tau:g}"
            if args.format == "tsv":
                lines = ["iso3\tdemand\tutility\tproduct"] + [
                    f"{c['iso3']}\t{fmt(c['demand'])}\t{fmt(c['utility'])}\t{fmt(c['product'])}"
                    for c in body["contributions"]
                ]
                out.add(stem + ".tsv", "\n".join(lines) + "\n")
            else:
                out.add(stem + ".json", dump_json(body))
            if args.format == "svg":
                top = [(c["iso3"], c["utility"]) for c in body["contributions"][:15]]
                out.add(stem + ".svg", svg.bar_chart(top, f"{label} tau={tau:g}: M={rep.value:.2f}"))
    table = "\n".join(rows) + "\n"
    out.add("metric.tsv", table)
    if out.out_dir is None and args.format == "json":
        return dump_json(reports)
    return table


def cmd_curve(args, data, out):
    taus = args.taus if args.taus else list(DEFAULT_TAUS)
    rows = ["task\ttau\tvalue"]
    series = {}
    greedy_rows = ["task\tstep\tiso3\tvalue"]
    for task in _tasks(args, data):
        table, universe = data.task(task, args.pivot)
        curve = metric_curve(table, universe, taus, args.exclude_l2)
        series[task] = curve
        rows += [f"{task}\t{fmt(t)}\t{fmt(v)}" for t, v in curve]
        if args.greedy:
            order = sorted(universe, key=lambda r: (-r.effective_population(args.exclude_l2), r.iso3))
            values = greedy_population_curve(table, universe, 1.0, args.exclude_l2)
            labels = ["-"] + [r.iso3 for r in order]
            greedy_rows += [f"{task}\t{i}\t{code}\t{fmt(v)}" for i, (code, v) in enumerate(zip(labels, values))]
    table_text = "\n".join(rows) + "\n"
    out.add("curve.tsv", table_text)
    if args.greedy:
        out.add("greedy.tsv", "\n".join(greedy_rows) + "\n")
    if args.format == "svg":
        out.add("curve.svg", svg.line_chart(series, "global utility vs tau"))
    if args.greedy and out.out_dir is None:
        return table_text + "\n".join(greedy_rows) + "\n"
    return table_text


def cmd_rank(args, data, out):
    if args.top is not None and args.top < 1:
        raise UsageError(f"--top must be >= 1, got {args.top}")
    tau = args.tau[0] if args.tau else 1.0
    texts = []
    for task in _tasks(args, data):
        table, universe = data.task(task, args.pivot)
        ranking = priority_ranking(table, universe, tau, args.top, args.exclude_l2)
        csv_text = ranking.to_csv()
        stem = f"rank_{task}_tau{tau:g}"
        out.add(stem + ".csv", csv_text)
        body = ranking.as_dict()
        body["task"] = task
        out.add(stem + ".json", dump_json(body))
        texts.append(csv_text if len(_tasks(args, data)) == 1 else f"# {task}\n{csv_text}")
    return "".join(texts)


def cmd_pivot(args, data, out):
    graph = data.mt_graph
    if args.all:
        text = estimates_to_csv(all_pairs_estimates(graph))
        out.add("pivot_all.csv", text)
        return text
    if not args.source or not args.target:
        raise UsageError("pivot needs SOURCE and TARGET, or --all")
    source = data.registry.resolve(args.source).iso3
    target = data.registry.resolve(args.target).iso3
    if source == target:
        raise UsageError(f"source and target are both {source!r}")
    if source in graph.nodes and target in graph.nodes:
        est = best_pivot_path(graph, source, target)
    else:
        est = PivotEstimate(source, target, 0.0, ())
    text = estimates_to_csv({(source, target): est})
    out.add(f"pivot_{source}_{target}.csv", text)
    return text


def cmd_pubscan(args, data, out):
    if not args.corpus:
        raise UsageError("pubscan needs --corpus DIR")
    registry = data.registry
    glottocodes = {}
    extra_entries = []
    if data.has("lexicon.tsv"):
        for e in load_lexicon(data.file("lexicon.tsv")):
            if e.glottocode:
                glottocodes[e.iso3] = e.glottocode
            extra_entries.append(e)
    lexicon = MentionLexicon.from_registry(registry, glottocodes=glottocodes)
    if extra_entries:
        merged = {e.iso3: e for e in lexicon.entries.values()}
        for e in extra_entries:
            base = merged.get(e.iso3)
            if base is None:
                merged[e.iso3] = e
            else:
                merged[e.iso3] = type(e)(
                    e.iso3, base.names + e.names, base.endonyms + e.endonyms, e.glottocode or base.glottocode
                )
        lexicon = MentionLexicon(merged.values(), lexicon.denylist)
    extra = []
    if data.has("denylist.txt"):
        extra += load_denylist(data.file("denylist.txt"))
    if args.denylist:
        extra += load_denylist(args.denylist)
    if extra:
        lexicon = lexicon.with_denylist(extra)

    papers = load_corpus(args.corpus, args.metadata)
    papers = scan_papers(papers, lexicon, english_default=args.english_default)
    papers = citation_percentiles(papers)
    lines = ["paper_id\tyear\tvenue\tcitations\tcitation_percentile\tlanguages"]
    for p in sorted(papers, key=lambda p: p.paper_id):
        lines.append(
            f"{p.paper_id}\t{p.year}\t{p.venue}\t{p.citations}\t{fmt(p.citation_percentile)}\t"
            + ",".join(sorted(p.languages))
        )
    mentions = "\n".join(lines) + "\n"
    try:
        citations = languages_vs_citations_summary(papers)
    except InsufficientData as exc:
        citations = {"error": exc.detail}
    per_lang = papers_per_language_summary(papers, registry)
    summary = {
        "n_papers": len(papers),
        "english_default": args.english_default,
        "languages_vs_citations": citations,
        "papers_per_language": {
            "n_languages": per_lang["n_languages"],
            "spearman_gdp": per_lang["spearman_gdp"],
            "p_value_gdp": per_lang["p_value_gdp"],
            "spearman_population": per_lang["spearman_population"],
            "p_value_population": per_lang["p_value_population"],
            "table": [
                {
                    "iso3": r.iso3,
                    "paper_count": r.paper_count,
                    "log_gdp": r.log_gdp,
                    "log_population": r.log_population,
                }
                for r in per_lang["table"]
                if r.paper_count > 0
            ],
        },
    }
    out.add("mentions.tsv", mentions)
    out.add("summary.json", dump_json(summary))
    if args.format == "svg":
        top = [(r.iso3, r.paper_count) for r in per_lang["table"][:15] if r.paper_count > 0]
        peak = max((c for _, c in top), default=1)
        out.add("papers_per_language.svg", svg.bar_chart([(k, c / peak) for k, c in top], "papers per language"))
    return mentions


def cmd_report(args, data, out):
    taus = args.taus if args.taus else [0.0, 1.0]
    tasks = _tasks(args, data)
    rows = ["task\ttau\tvalue\tcoverage"]
    body = []
    for task in tasks:
        for tau in taus:
            rep = data.metric(task, tau, pivot=args.pivot, exclude_l2=args.exclude_l2)
            rows.append(f"{task}\t{fmt(tau)}\t{fmt(rep.value)}\t{rep.coverage}")
            body.append({"task": task, "tau": tau, "value": rep.value, "coverage": rep.coverage})
    text = "\n".join(rows) + "\n"
    out.add("report.tsv", text)
    out.add("report.json", dump_json(body))
    return text


COMMANDS = {
    "metric": cmd_metric,
    "curve": cmd_curve,
    "rank": cmd_rank,
    "pivot": cmd_pivot,
    "pubscan": cmd_pubscan,
    "report": cmd_report,
}


def build_parser():
    common = _Parser(add_help=False)
    common.add_argument("--data-dir", help=f"data directory (default: ${ENV_VAR})")
    common.add_argument("--out", help="directory for output files; stdout only when omitted")
    common.add_argument("--format", choices=("tsv", "json", "svg"), default=None)
    common.add_argument("--exclude-l2", action="store_true", help="drop excluded_fraction of each population")
    common.add_argument("--pivot", action="store_true", help="use pivot estimates for mt-* tasks")

    parser = _Parser(prog="langequity", description="Global utility of language technologies.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("metric", parents=[common], help="M_tau per task")
    p.add_argument("--task", action="append")
    p.add_argument("--tau", action="append", type=_tau)
    p.add_argument("--subset", help="named subset, e.g. ara-vernaculars")

    p = sub.add_parser("curve", parents=[common], help="M_tau over a tau grid")
    p.add_argument("--task", action="append")
    p.add_argument("--taus", type=_taus, help="comma separated grid (default 0,0.1,...,1)")
    p.add_argument("--greedy", action="store_true", help="also emit the greedy population curve")

    p = sub.add_parser("rank", parents=[common], help="priority languages")
    p.add_argument("--task", action="append")
    p.add_argument("--tau", action="append", type=_tau)
    p.add_argument("--top", type=int, default=10)

    p = sub.add_parser("pivot", parents=[common], help="pivot estimate for a language pair")
    p.add_argument("source", nargs="?")
    p.add_argument("target", nargs="?")
    p.add_argument("--all", action="store_true", help="estimates for every ordered pair")

    p = sub.add_parser("pubscan", parents=[common], help="language mentions in publications")
    p.add_argument("--corpus")
    p.add_argument("--metadata")
    p.add_argument("--denylist")
    p.add_argument("--english-default", action="store_true")

    p = sub.add_parser("report", parents=[common], help="summary over all tasks")
    p.add_argument("--task", action="append")
    p.add_argument("--taus", type=_taus)
    return parser


DEFAULT_FORMATS = {"metric": "json", "curve": "tsv", "rank": "tsv", "pivot": "tsv", "pubscan": "tsv", "report": "tsv"}


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.format is None:
            args.format = DEFAULT_FORMATS[args.command]
        data_dir = args.data_dir or default_data_dir()
        if data_dir is None:
            raise MissingFile(f"languages.tsv: no data directory given (use --data-dir or ${ENV_VAR})")
        data = DataDir(data_dir)
        data.registry  # parse languages.tsv before anything else
        out = Output(args.out)
        text = COMMANDS[args.command](args, data, out)
        out.flush()
        if text:
            stdout.write(text)
        return 0
    except LangEquityError as exc:
        stderr.write(f"ERROR {exc.code}: {exc.detail}\n")
        return 2
    except Exception as exc:  # noqa: BLE001
        stderr.write(f"ERROR internal: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
