"""Cited-side indicators: NCS, journal-normalized NCS and Hazen percentiles."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from csncr.classification import FieldScheme, build_journal_scheme
from csncr.corpus import Corpus
from csncr.scores import ScoreTable
from csncr.windows import WindowSpec, windowed_citation_count


@dataclass(frozen=True)
class FieldMeanCitations:
    field_id: str
    rho: float
    n: int


def _counts(corpus: Corpus, scheme: FieldScheme, spec: WindowSpec) -> dict[str, int]:
    return {pid: windowed_citation_count(corpus, pid, spec) for pid in scheme.assignment}


def _check_year(corpus: Corpus, scheme: FieldScheme, pub_year: int) -> None:
    for pid in scheme.assignment:
        if corpus[pid].pub_year != pub_year:
            raise ValueError(f"{pid} is not a {pub_year} paper; build the scheme for that year")


def field_mean_citations(
    corpus: Corpus,
    scheme: FieldScheme,
    spec: WindowSpec,
    pub_year: int,
    counts: Optional[Mapping[str, int]] = None,
) -> dict[str, FieldMeanCitations]:
    """Mean windowed citation count per field."""
    _check_year(corpus, scheme, pub_year)
    if counts is None:
        counts = _counts(corpus, scheme, spec)
    out = {}
    for fid, members in scheme.fields.items():
        out[fid] = FieldMeanCitations(fid, math.fsum(counts[p] for p in members) / len(members), len(members))
    return out


def _normalized_scores(
    name: str,
    zero_reason: str,
    corpus: Corpus,
    scheme: FieldScheme,
    spec: WindowSpec,
    pub_year: int,
) -> ScoreTable:
    counts = _counts(corpus, scheme, spec)
    means = field_mean_citations(corpus, scheme, spec, pub_year, counts)
    scores: dict[str, float] = {}
    unscored = dict(scheme.excluded)
    for pid, fids in scheme.assignment.items():
        rhos = [means[f].rho for f in sorted(fids)]
        if any(rho == 0 for rho in rhos):
            unscored[pid] = zero_reason
            continue
        c = counts[pid]
        scores[pid] = math.fsum(c / rho for rho in rhos) / len(rhos)
    return ScoreTable(name, pub_year, spec, scores, unscored)


def ncs_scores(corpus: Corpus, scheme: FieldScheme, spec: WindowSpec, pub_year: int) -> ScoreTable:
    """c / rho per field, averaged over a paper's fields."""
    return _normalized_scores("ncs", "zero field mean", corpus, scheme, spec, pub_year)


def ncs_journal_scores(
    corpus: Corpus, spec: WindowSpec, pub_year: int, doc_type: Optional[str] = None
) -> ScoreTable:
    scheme = build_journal_scheme(corpus, pub_year, doc_type)
    return _normalized_scores("ncs_j", "zero journal mean", corpus, scheme, spec, pub_year)


def mid_ranks(values: Sequence[float]) -> list[float]:
    """Ascending 1-based ranks; tied values share the mean of their positions."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        rank = (i + j) / 2 + 1
        for k in range(i, j + 1):
            ranks[order[k]] = rank
        i = j + 1
    return ranks


def hazen_percentiles(corpus: Corpus, scheme: FieldScheme, spec: WindowSpec, pub_year: int) -> ScoreTable:
    """(rank - 0.5) / n * 100 within each field, rank 1 = least cited.

    Multi-field papers get the mean of their per-field percentiles.
    """
    _check_year(corpus, scheme, pub_year)
    counts = _counts(corpus, scheme, spec)
    per_paper: dict[str, list[float]] = {pid: [] for pid in scheme.assignment}
    for fid, members in scheme.fields.items():
        ids = sorted(members)
        n = len(ids)
        for pid, rank in zip(ids, mid_ranks([counts[p] for p in ids])):
            per_paper[pid].append((rank - 0.5) / n * 100)
    scores = {pid: math.fsum(v) / len(v) for pid, v in per_paper.items()}
    return ScoreTable("percentiles", pub_year, spec, scores, dict(scheme.excluded))
