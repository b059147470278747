"""Source-normalized citation scores SNCS(1), SNCS(2) and SNCS(3).

Each incoming citation is weighted by the reference supply of the citing
side.  Reference counts of a citing paper are taken inside its own
reference window, which has the same length as the citation window of the
cited paper.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Optional

from csncr.corpus import Corpus, linked_reference_count
from csncr.scores import ScoreTable
from csncr.windows import WindowSpec, citation_interval, reference_interval

ZERO_REF_POLICIES = ("zero", "unit")


@dataclass(frozen=True)
class JournalYearRefStats:
    journal_id: str
    year: int
    a: float  # mean in-window linked references
    p: float  # share of papers with at least one
    n: int


def _ref_count(corpus: Corpus, paper_id: str, spec: WindowSpec) -> int:
    paper = corpus[paper_id]
    return linked_reference_count(corpus, paper_id, reference_interval(spec, paper.pub_year))


def _stats(journal_id: str, year: int, counts: list[int]) -> JournalYearRefStats:
    n = len(counts)
    return JournalYearRefStats(journal_id, year, math.fsum(counts) / n, sum(1 for r in counts if r > 0) / n, n)


def journal_year_ref_stats(
    corpus: Corpus, journal_id: str, year: int, spec: WindowSpec, doc_type: Optional[str] = None
) -> JournalYearRefStats:
    counts = [
        _ref_count(corpus, p.paper_id, spec)
        for p in corpus.papers_in_year(year, doc_type)
        if p.journal_id == journal_id
    ]
    if not counts:
        raise ValueError(f"no papers in journal {journal_id} for {year}")
    return _stats(journal_id, year, counts)


def all_journal_year_stats(
    corpus: Corpus, spec: WindowSpec, doc_type: Optional[str] = None
) -> dict[tuple[str, int], JournalYearRefStats]:
    groups: dict[tuple[str, int], list[int]] = defaultdict(list)
    for pid in sorted(corpus.papers):
        p = corpus.papers[pid]
        if doc_type is None or p.doc_type == doc_type:
            groups[(p.journal_id, p.pub_year)].append(_ref_count(corpus, pid, spec))
    return {key: _stats(key[0], key[1], counts) for key, counts in sorted(groups.items())}


def _sncs(
    name: str,
    weight: Callable[[str], float],
    corpus: Corpus,
    spec: WindowSpec,
    pub_year: int,
    doc_type: Optional[str],
) -> ScoreTable:
    interval = citation_interval(spec, pub_year, corpus.census_year)
    cache: dict[str, float] = {}
    scores = {}
    for paper in corpus.papers_in_year(pub_year, doc_type):
        terms = []
        for citing_id, citing_year in corpus.citations[paper.paper_id]:
            if citing_year not in interval:
                continue
            w = cache.get(citing_id)
            if w is None:
                w = cache[citing_id] = weight(citing_id)
            terms.append(w)
        scores[paper.paper_id] = math.fsum(terms)
    return ScoreTable(name, pub_year, spec, scores)


def _check_policy(zero_refs: str) -> None:
    if zero_refs not in ZERO_REF_POLICIES:
        raise ValueError(f"zero_refs must be one of {ZERO_REF_POLICIES}, got {zero_refs!r}")


def sncs2_scores(
    corpus: Corpus, spec: WindowSpec, pub_year: int, doc_type: Optional[str] = None, zero_refs: str = "zero"
) -> ScoreTable:
    """Sum of 1/r over in-window citations, r = citing paper's in-window linked refs."""
    _check_policy(zero_refs)

    def weight(citing_id: str) -> float:
        r = _ref_count(corpus, citing_id, spec)
        if r == 0:
            return 1.0 if zero_refs == "unit" else 0.0
        return 1.0 / r

    return _sncs("sncs2", weight, corpus, spec, pub_year, doc_type)


def sncs1_scores(
    corpus: Corpus, spec: WindowSpec, pub_year: int, doc_type: Optional[str] = None
) -> ScoreTable:
    """Sum of 1/a over in-window citations, a = mean refs of the citing journal-year."""
    stats = all_journal_year_stats(corpus, spec, doc_type)

    def weight(citing_id: str) -> float:
        citing = corpus[citing_id]
        st = stats.get((citing.journal_id, citing.pub_year))
        if st is None or st.a == 0:
            return 0.0
        return 1.0 / st.a

    return _sncs("sncs1", weight, corpus, spec, pub_year, doc_type)


def sncs3_scores(
    corpus: Corpus, spec: WindowSpec, pub_year: int, doc_type: Optional[str] = None, zero_refs: str = "zero"
) -> ScoreTable:
    """Sum of 1/(p*r) over in-window citations."""
    _check_policy(zero_refs)
    stats = all_journal_year_stats(corpus, spec, doc_type)

    def weight(citing_id: str) -> float:
        citing = corpus[citing_id]
        r = _ref_count(corpus, citing_id, spec)
        if r == 0:
            return 1.0 if zero_refs == "unit" else 0.0
        st = stats.get((citing.journal_id, citing.pub_year))
        if st is None or st.p == 0:
            return 0.0
        return 1.0 / (st.p * r)

    return _sncs("sncs3", weight, corpus, spec, pub_year, doc_type)

