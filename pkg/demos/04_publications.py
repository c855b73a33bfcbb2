"""
Which languages do papers mention?
==================================

Scan a small corpus for language names, codes and endonyms, drop the
forms that collide with ordinary words, then relate mention counts to
citations and to economic weight.
"""

from langequity.dataset import DataDir, mini_data_dir
from langequity.pubscan import (
    MentionLexicon,
    citation_percentiles,
    languages_vs_citations_summary,
    load_corpus,
    papers_per_language_summary,
    scan_languages,
    scan_papers,
)

data = DataDir(mini_data_dir())
lexicon = MentionLexicon.from_registry(data.registry)

# "She", "Male" and "Even" are language names too, hence the deny-list
print(scan_languages("She said the labels are even male", lexicon))
print(scan_languages("experiments on Tagalog and tgl data", lexicon))

papers = load_corpus(mini_data_dir() / "corpus")
papers = citation_percentiles(scan_papers(papers, lexicon, english_default=True))
for p in papers:
    print(p.paper_id, p.venue, p.year, f"{p.citation_percentile:.3f}", sorted(p.languages))

summary = languages_vs_citations_summary(papers)
print("rho(languages, citation percentile) =", round(summary["spearman_rho"], 3), summary["ci95"])

per_language = papers_per_language_summary(papers, data.registry)
for row in per_language["table"][:6]:
    print(row.iso3, row.paper_count)
print("rho with log GDP:", round(per_language["spearman_gdp"], 3))
