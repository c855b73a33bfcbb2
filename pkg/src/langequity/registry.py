"""Language registry: identities, speaker populations and attributed GDP."""

import math
import re
from dataclasses import dataclass, replace
from pathlib import Path

from ._tsv import parse_float, read_rows, split_list
from .errors import (
    AmbiguousName,
    DuplicateLanguage,
    EmptyMemberSet,
    InvalidRecord,
    ParseError,
    UnknownCountry,
    UnknownLanguage,
    ZeroCountryPopulation,
)

ISO3_RE = re.compile(r"[a-z]{3}")


def check_iso3(code):
    if not isinstance(code, str) or not ISO3_RE.fullmatch(code):
        raise InvalidRecord(f"not a lowercase ISO 639-3 code: {code!r}")
    return code


@dataclass(frozen=True)
class LanguageRecord:
    """One language and its demographic / economic attributes.

    ``excluded_fraction`` is the share of speakers dropped when the L2
    adjustment is enabled (e.g. speakers who already use English).
    """

    iso3: str
    names: tuple = ()
    endonyms: tuple = ()
    population: float = 0.0
    gdp: float = 0.0
    member_of: str | None = None
    excluded_fraction: float = 0.0

    def __post_init__(self):
        check_iso3(self.iso3)
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "endonyms", tuple(self.endonyms))
        if not (math.isfinite(self.population) and self.population >= 0):
            raise InvalidRecord(f"{self.iso3}: population must be >= 0, got {self.population}")
        if not (math.isfinite(self.gdp) and self.gdp >= 0):
            raise InvalidRecord(f"{self.iso3}: gdp must be >= 0, got {self.gdp}")
        if self.member_of is not None:
            check_iso3(self.member_of)
            if self.member_of == self.iso3:
                raise InvalidRecord(f"{self.iso3}: a language cannot be a member of itself")
        if not 0.0 <= self.excluded_fraction <= 1.0:
            raise InvalidRecord(
                f"{self.iso3}: excluded_fraction must lie in [0, 1], got {self.excluded_fraction}"
            )

    @property
    def name(self):
        return self.names[0] if self.names else self.iso3

    def effective_population(self, exclude_l2=False):
        if exclude_l2:
            return self.population * (1.0 - self.excluded_fraction)
        return self.population


@dataclass(frozen=True)
class CountryStat:
    country_code: str
    population: float
    gdp: float

    def __post_init__(self):
        if self.population < 0 or self.gdp < 0:
            raise InvalidRecord(f"{self.country_code}: population and gdp must be >= 0")


@dataclass(frozen=True)
class LanguageCountryShare:
    iso3: str
    country_code: str
    speaker_count: float

    def __post_init__(self):
        if self.speaker_count < 0:
            raise InvalidRecord(f"{self.iso3}/{self.country_code}: negative speaker_count")


class Registry:
    """Immutable collection of :class:`LanguageRecord` keyed by ISO 639-3 code.

    Records whose ``member_of`` is set are variants of a macro-language; they
    are resolvable but excluded from :meth:`top_level`, which is the language
    universe used for global metrics.
    """

    def __init__(self, records):
        by_code = {}
        for rec in records:
            if rec.iso3 in by_code:
                raise DuplicateLanguage(f"duplicate iso3 {rec.iso3!r}")
            by_code[rec.iso3] = rec
        for rec in by_code.values():
            if rec.member_of is None:
                continue
            macro = by_code.get(rec.member_of)
            if macro is None:
                raise UnknownLanguage(f"{rec.iso3}: member_of {rec.member_of!r} is not in the registry")
            if macro.member_of is not None:
                raise InvalidRecord(
                    f"{rec.iso3}: macro-language {macro.iso3!r} is itself a member of {macro.member_of!r}"
                )
        self._records = dict(sorted(by_code.items()))
        names = {}
        for rec in self._records.values():
            for form in rec.names + rec.endonyms:
                names.setdefault(form.casefold(), set()).add(rec.iso3)
        self._names = {k: frozenset(v) for k, v in names.items()}

    def __len__(self):
        return len(self._records)

    def __iter__(self):
        return iter(self._records.values())

    def __contains__(self, code):
        return code in self._records

    def __getitem__(self, code):
        try:
            return self._records[code]
        except KeyError:
            raise UnknownLanguage(f"unknown language {code!r}") from None

    def __repr__(self):
        return f"Registry({len(self)} languages)"

    @property
    def codes(self):
        return tuple(self._records)

    def resolve(self, code_or_name):
        """Return the record matching an ISO code, English name or endonym.

        Codes take precedence over names; names are compared case-insensitively.
        """
        query = code_or_name.strip()
        rec = self._records.get(query.lower())
        if rec is not None:
            return rec
        hits = self._names.get(query.casefold())
        if not hits:
            raise UnknownLanguage(f"unknown language {code_or_name!r}")
        if len(hits) > 1:
            raise AmbiguousName(
                f"{code_or_name!r} names several languages ({', '.join(sorted(hits))}); query by iso3"
            )
        (code,) = hits
        return self._records[code]

    def top_level(self):
        """Records that are not variants of a macro-language."""
        return [r for r in self._records.values() if r.member_of is None]

    def members(self, macro_iso3):
        return [r for r in self._records.values() if r.member_of == macro_iso3]

    def subset(self, codes):
        return [self[c] for c in codes]


def aggregate_macrolanguage(macro_iso3, members, names=(), endonyms=()):
    """Build a macro-language record by summing its members.

    >>> a = LanguageRecord("arz", population=10, member_of="ara")
    >>> b = LanguageRecord("apc", population=20, member_of="ara")
    >>> aggregate_macrolanguage("ara", [a, b]).population
    30.0
    """
    members = list(members)
    if not members:
        raise EmptyMemberSet(f"{macro_iso3}: no member languages to aggregate")
    for m in members:
        if m.member_of != macro_iso3:
            raise InvalidRecord(f"{m.iso3} is not a member of {macro_iso3}")
    # fsum keeps the result independent of member order
    population = math.fsum(m.population for m in members)
    gdp = math.fsum(m.gdp for m in members)
    return LanguageRecord(
        macro_iso3, names=tuple(names), endonyms=tuple(endonyms), population=population, gdp=gdp
    )


def gdp_for_language(iso3, shares, countries):
    """GDP attributed to a language community.

    Each country contributes its GDP times the fraction of its population
    speaking the language.
    """
    by_code = {c.country_code: c for c in countries}
    terms = []
    for share in shares:
        if share.iso3 != iso3:
            continue
        country = by_code.get(share.country_code)
        if country is None:
            raise UnknownCountry(f"{iso3}: unknown country {share.country_code!r}")
        if country.population <= 0:
            raise ZeroCountryPopulation(f"country {country.country_code!r} has zero population")
        terms.append(share.speaker_count / country.population * country.gdp)
    return math.fsum(terms)


def attribute_gdp(registry, shares, countries):
    """Return a new registry whose GDP column is recomputed from country shares.

    Languages without any share row keep their existing GDP.
    """
    covered = {s.iso3 for s in shares}
    records = [
        replace(rec, gdp=gdp_for_language(rec.iso3, shares, countries)) if rec.iso3 in covered else rec
        for rec in registry
    ]
    return Registry(records)


LANGUAGE_COLUMNS = ("iso3", "names", "endonyms", "population", "gdp", "member_of", "excluded_fraction")


def load_registry(path):
    """Read ``languages.tsv``.

    A macro-language row may leave ``population`` (and ``gdp``) empty; the
    value is then filled by aggregating its member rows.
    """
    path = Path(path)
    if path.is_dir():
        path = path / "languages.tsv"
    raw = []
    seen = {}
    for lineno, row in read_rows(path, required=("iso3", "population"), optional=LANGUAGE_COLUMNS):
        code = row["iso3"].lower()
        if not ISO3_RE.fullmatch(code):
            raise ParseError(f"bad iso3 code {row['iso3']!r}", path, lineno)
        if code in seen:
            raise DuplicateLanguage(f"{path}:{lineno}: iso3 {code!r} already defined on line {seen[code]}")
        seen[code] = lineno
        pop = None if row["population"] == "" else parse_float(row["population"], path, lineno, "population")
        gdp = None if row["gdp"] == "" else parse_float(row["gdp"], path, lineno, "gdp")
        excl = 0.0 if row["excluded_fraction"] == "" else parse_float(
            row["excluded_fraction"], path, lineno, "excluded_fraction"
        )
        raw.append((lineno, code, row, pop, gdp, excl))

    member_rows = {}
    for lineno, code, row, pop, gdp, excl in raw:
        macro = row["member_of"].lower() or None
        if macro:
            member_rows.setdefault(macro, []).append((code, pop, gdp))

    records = []
    for lineno, code, row, pop, gdp, excl in raw:
        members = member_rows.get(code, [])
        if pop is None:
            if not members or any(m[1] is None for m in members):
                raise ParseError(f"{code}: population is empty and cannot be aggregated", path, lineno)
            pop = math.fsum(m[1] for m in members)
        if gdp is None:
            gdp = math.fsum(m[2] or 0.0 for m in members)
        try:
            records.append(
                LanguageRecord(
                    code,
                    names=split_list(row["names"]),
                    endonyms=split_list(row["endonyms"]),
                    population=pop,
                    gdp=gdp,
                    member_of=row["member_of"].lower() or None,
                    excluded_fraction=excl,
                )
            )
        except InvalidRecord as exc:
            raise ParseError(exc.detail, path, lineno) from None
    return Registry(records)


def load_countries(path):
    countries = []
    for lineno, row in read_rows(path, required=("country_code", "population", "gdp")):
        countries.append(
            CountryStat(
                row["country_code"].upper(),
                parse_float(row["population"], path, lineno, "population"),
                parse_float(row["gdp"], path, lineno, "gdp"),
            )
        )
    return countries


def load_language_countries(path):
    shares = []
    for lineno, row in read_rows(path, required=("iso3", "country_code", "speaker_count")):
        shares.append(
            LanguageCountryShare(
                row["iso3"].lower(),
                row["country_code"].upper(),
                parse_float(row["speaker_count"], path, lineno, "speaker_count"),
            )
        )
    return shares
