"""Name-based dispatch over every supported indicator."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from csncr.cited_side import hazen_percentiles, ncs_journal_scores, ncs_scores
from csncr.citing_side import sncs1_scores, sncs2_scores, sncs3_scores
from csncr.classification import build_base_scheme, build_overlapping_scheme
from csncr.corpus import Corpus
from csncr.potential import CitationPotential, csncr_scores
from csncr.scores import ScoreTable
from csncr.windows import WindowSpec, windowed_citation_count

INDICATORS = (
    "csncr",
    "cites_full",
    "cites_fixed3",
    "ncs",
    "ncs_j",
    "percentiles",
    "sncs1",
    "sncs2",
    "sncs3",
)

DEFAULT_WINDOWS = {name: WindowSpec.fixed(3) for name in INDICATORS}
DEFAULT_WINDOWS["cites_full"] = WindowSpec.full()

# Windows that define the indicator itself and cannot be overridden.
PINNED_WINDOWS = {"cites_full": WindowSpec.full(), "cites_fixed3": WindowSpec.fixed(3)}

LABELS = {
    "csncr": "CSNCR",
    "cites_full": "Citation counts",
    "cites_fixed3": "Citation counts (3 years)",
    "ncs": "NCS",
    "ncs_j": "NCS_j",
    "percentiles": "Percentiles",
    "sncs1": "SNCS(1)",
    "sncs2": "SNCS(2)",
    "sncs3": "SNCS(3)",
}


class UnknownIndicatorError(ValueError):
    pass


@dataclass(frozen=True)
class IndicatorOptions:
    doc_type: Optional[str] = None
    min_size: int = 10
    zero_refs: str = "zero"
    windows: Mapping[str, WindowSpec] = field(default_factory=dict)

    def window_for(self, name: str) -> WindowSpec:
        if name in PINNED_WINDOWS:
            return PINNED_WINDOWS[name]
        return self.windows.get(name, DEFAULT_WINDOWS[name])


def check_indicators(names) -> list[str]:
    names = list(names)
    bad = [n for n in names if n not in INDICATORS]
    if bad:
        raise UnknownIndicatorError(f"unknown indicator(s): {', '.join(bad)} (supported: {', '.join(INDICATORS)})")
    return names


def bare_citation_scores(
    corpus: Corpus, spec: WindowSpec, pub_year: int, name: str, doc_type: Optional[str] = None
) -> ScoreTable:
    scores = {
        p.paper_id: float(windowed_citation_count(corpus, p.paper_id, spec))
        for p in corpus.papers_in_year(pub_year, doc_type)
    }
    return ScoreTable(name, pub_year, spec, scores)


def compute_indicator(
    name: str,
    corpus: Corpus,
    pub_year: int,
    options: IndicatorOptions = IndicatorOptions(),
    potentials: Optional[Mapping[str, CitationPotential]] = None,
) -> ScoreTable:
    check_indicators([name])
    spec = options.window_for(name)
    dt = options.doc_type
    if name == "csncr":
        scheme = build_overlapping_scheme(corpus, pub_year, options.min_size, dt)
        return csncr_scores(corpus, scheme, spec, pub_year, potentials)
    if name in ("cites_full", "cites_fixed3"):
        return bare_citation_scores(corpus, spec, pub_year, name, dt)
    if name == "ncs":
        return ncs_scores(corpus, build_base_scheme(corpus, pub_year, dt), spec, pub_year)
    if name == "ncs_j":
        return ncs_journal_scores(corpus, spec, pub_year, dt)
    if name == "percentiles":
        return hazen_percentiles(corpus, build_base_scheme(corpus, pub_year, dt), spec, pub_year)
    if name == "sncs1":
        return sncs1_scores(corpus, spec, pub_year, dt)
    if name == "sncs2":
        return sncs2_scores(corpus, spec, pub_year, dt, options.zero_refs)
    return sncs3_scores(corpus, spec, pub_year, dt, options.zero_refs)
