"""Language mentions in publication text and simple bibliometric summaries.

Mention detection is whole-token: names are matched case-insensitively as
contiguous token sequences, ISO and Glottolog codes case-sensitively.  A
deny-list removes surface forms that collide with common words, place
names, author names or notation.
"""

import math
import re
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np
from scipy import stats

from ._tsv import parse_float, read_rows, split_list
from .errors import EmptyGroup, InsufficientData, MissingFile, ParseError

DEFAULT_DENYLIST = (
    "She", "Male", "Label", "Even", "The", "Are",
    "Colorado", "Nara", "Sydney",
    "Su", "Kim", "Dan", "Ali", "Rama",
    "Dji", "Dii",
)

TOKEN_RE = re.compile(r"\w+", re.UNICODE)


def tokenize(text):
    return TOKEN_RE.findall(text)


@dataclass(frozen=True)
class LexiconEntry:
    iso3: str
    names: tuple = ()
    endonyms: tuple = ()
    glottocode: str | None = None


class MentionLexicon:
    """Surface forms for every language plus a deny-list.

    Deny-list entries suppress whole surface forms regardless of case, so
    ``"Even"`` also blocks ``"even"``; a denied form never produces a
    mention, but the language can still be found through its other forms.
    """

    def __init__(self, entries, denylist=DEFAULT_DENYLIST):
        self.entries = {e.iso3: e for e in entries}
        self.denylist = frozenset(denylist)
        denied = {d.casefold() for d in self.denylist}
        # first token (casefolded) -> [(token tuple, iso3, case_sensitive)]
        index = {}

        def add(form, iso3, case_sensitive):
            if form.casefold() in denied:
                return
            toks = tuple(tokenize(form))
            if not toks:
                return
            key = tuple(t if case_sensitive else t.casefold() for t in toks)
            index.setdefault(toks[0].casefold(), set()).add((key, iso3, case_sensitive))

        for e in self.entries.values():
            for name in e.names + e.endonyms:
                add(name, e.iso3, False)
            add(e.iso3, e.iso3, True)
            if e.glottocode:
                add(e.glottocode, e.iso3, True)
        self._index = {k: sorted(v, key=lambda x: (-len(x[0]), x)) for k, v in index.items()}

    @classmethod
    def from_registry(cls, registry, denylist=DEFAULT_DENYLIST, glottocodes=None):
        glottocodes = glottocodes or {}
        entries = [
            LexiconEntry(r.iso3, r.names, r.endonyms, glottocodes.get(r.iso3)) for r in registry
        ]
        return cls(entries, denylist)

    def with_denylist(self, extra):
        return MentionLexicon(self.entries.values(), self.denylist | set(extra))

    @property
    def languages(self):
        return frozenset(self.entries)


def scan_languages(text, lexicon):
    """Set of iso3 codes mentioned in ``text``."""
    tokens = tokenize(text)
    folded = [t.casefold() for t in tokens]
    found = set()
    n = len(tokens)
    for i, f in enumerate(folded):
        candidates = lexicon._index.get(f)
        if not candidates:
            continue
        for key, iso3, case_sensitive in candidates:
            if iso3 in found:
                continue
            end = i + len(key)
            if end > n:
                continue
            window = tokens[i:end] if case_sensitive else folded[i:end]
            if tuple(window) == key:
                found.add(iso3)
    return found


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    year: int
    venue: str
    text: str = ""
    citations: int = 0
    languages: frozenset = frozenset()
    citation_percentile: float | None = None
    area: str | None = None

    @property
    def group(self):
        return (self.year, self.venue)


def scan_papers(papers, lexicon, english_default=False):
    """Fill ``languages`` on each paper.

    With ``english_default`` a paper without any detected mention is assumed
    to be about English only.
    """
    out = []
    for p in papers:
        langs = scan_languages(p.text, lexicon)
        if not langs and english_default:
            langs = {"eng"}
        out.append(replace(p, languages=frozenset(langs)))
    return out


def citation_percentiles(papers):
    """Midrank citation percentile of each paper within its (year, venue) group.

    ``(number strictly below + 0.5 * number tied, self included) / group size``,
    so a singleton gets 0.5 and each group averages exactly 0.5.
    """
    papers = list(papers)
    groups = {}
    for i, p in enumerate(papers):
        groups.setdefault(p.group, []).append(i)
    out = list(papers)
    for key, idx in groups.items():
        if not idx:
            raise EmptyGroup(f"empty group {key}")
        cites = np.array([papers[i].citations for i in idx], dtype=float)
        pct = (stats.rankdata(cites, method="average") - 0.5) / len(idx)
        for i, v in zip(idx, pct):
            out[i] = replace(papers[i], citation_percentile=float(v))
    return out


def _spearman(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if len(x) < 3 or np.all(x == x[0]) or np.all(y == y[0]):
        return float("nan"), float("nan")
    res = stats.spearmanr(x, y)
    return float(res.statistic), float(res.pvalue)


def _fisher_ci(r, n, z=1.959963984540054):
    if n <= 3 or not math.isfinite(r):
        return float("nan"), float("nan")
    r = max(min(r, 1 - 1e-12), -1 + 1e-12)
    half = z / math.sqrt(n - 3)
    centre = math.atanh(r)
    return math.tanh(centre - half), math.tanh(centre + half)


def languages_vs_citations_summary(papers):
    """Rank correlation between language count and citation percentile.

    Descriptive only; the confidence interval uses the Fisher transform.
    """
    rows = [p for p in papers if p.citation_percentile is not None]
    if len(rows) < 3:
        raise InsufficientData(f"need at least 3 papers with percentiles, got {len(rows)}")
    counts = [len(p.languages) for p in rows]
    pct = [p.citation_percentile for p in rows]
    rho, pvalue = _spearman(counts, pct)
    lo, hi = _fisher_ci(rho, len(rows))
    by_count = {}
    for c, v in zip(counts, pct):
        by_count.setdefault(c, []).append(v)
    return {
        "n_papers": len(rows),
        "spearman_rho": rho,
        "p_value": pvalue,
        "ci95": [lo, hi],
        "groups": [
            {"n_languages": c, "n_papers": len(v), "mean_percentile": math.fsum(v) / len(v)}
            for c, v in sorted(by_count.items())
        ],
    }


@dataclass(frozen=True)
class LanguagePaperCount:
    iso3: str
    paper_count: int
    log_gdp: float | None
    log_population: float | None


def papers_per_language_summary(papers, registry):
    """Papers per language against log-GDP and log-population.

    Every registry language appears in the table (count 0 when unmentioned);
    correlations use the languages with positive GDP and population.
    """
    counts = {}
    for p in papers:
        for code in p.languages:
            counts[code] = counts.get(code, 0) + 1
    table = []
    for rec in registry:
        table.append(
            LanguagePaperCount(
                rec.iso3,
                counts.get(rec.iso3, 0),
                math.log(rec.gdp) if rec.gdp > 0 else None,
                math.log(rec.population) if rec.population > 0 else None,
            )
        )
    table.sort(key=lambda r: (-r.paper_count, r.iso3))
    usable = [r for r in table if r.log_gdp is not None and r.log_population is not None]
    n = [r.paper_count for r in usable]
    rho_gdp, p_gdp = _spearman(n, [r.log_gdp for r in usable])
    rho_pop, p_pop = _spearman(n, [r.log_population for r in usable])
    return {
        "table": table,
        "n_languages": len(usable),
        "spearman_gdp": rho_gdp,
        "p_value_gdp": p_gdp,
        "spearman_population": rho_pop,
        "p_value_population": p_pop,
    }


def load_lexicon(path):
    """Read a lexicon TSV (iso3, names, endonyms, glottocode)."""
    entries = []
    for lineno, row in read_rows(path, required=("iso3",), optional=("names", "endonyms", "glottocode")):
        entries.append(
            LexiconEntry(
                row["iso3"].lower(),
                split_list(row["names"]),
                split_list(row["endonyms"]),
                row["glottocode"] or None,
            )
        )
    return entries


def load_denylist(path):
    forms = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                forms.append(line)
    return forms


def load_corpus(corpus_dir, metadata=None):
    """Read ``<paper_id>.txt`` files and their metadata rows.

    ``metadata`` defaults to ``metadata.tsv`` inside the corpus directory and
    needs columns paper_id, year, venue, citations (``area`` optional).
    Papers listed in the metadata without a text file get empty text.
    """
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise MissingFile(f"{corpus_dir}: corpus directory not found")
    metadata = Path(metadata) if metadata else corpus_dir / "metadata.tsv"
    papers = []
    seen = set()
    for lineno, row in read_rows(
        metadata, required=("paper_id", "year", "venue", "citations"), optional=("area",)
    ):
        pid = row["paper_id"]
        if pid in seen:
            raise ParseError(f"duplicate paper_id {pid!r}", metadata, lineno)
        seen.add(pid)
        year = parse_float(row["year"], metadata, lineno, "year")
        cites = parse_float(row["citations"], metadata, lineno, "citations")
        if cites < 0:
            raise ParseError("citations must be >= 0", metadata, lineno)
        text_path = corpus_dir / f"{pid}.txt"
        text = text_path.read_text(encoding="utf-8") if text_path.is_file() else ""
        papers.append(PaperRecord(pid, int(year), row["venue"], text, int(cites), area=row["area"] or None))
    return papers
