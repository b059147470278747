"""Referencing-pattern summaries per group: reference counts, reference ages, trends."""

from __future__ import annotations

import logging
import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

import numpy as np

from csncr.corpus import Corpus, linked_reference_count
from csncr.windows import WindowSpec, YearInterval, reference_interval

log = logging.getLogger(__name__)

DEFAULT_QUANTILE_METHOD = "hazen"


@dataclass(frozen=True)
class DistributionSummary:
    group: str
    mean: float
    median: float
    q1: float
    q3: float
    n: int

    def as_row(self) -> list[str]:
        return [self.group, repr(self.mean), repr(self.median), repr(self.q1), repr(self.q3), str(self.n)]


SUMMARY_COLUMNS = ("group", "mean", "median", "q1", "q3", "n")


def summarize(group: str, values: Sequence[float], method: str = DEFAULT_QUANTILE_METHOD) -> DistributionSummary:
    """Mean and quartiles; quartiles use numpy's named interpolation ``method``."""
    if not values:
        raise ValueError(f"group {group}: no observations")
    arr = np.sort(np.asarray(values, dtype=float))
    q1, med, q3 = np.quantile(arr, [0.25, 0.5, 0.75], method=method)
    return DistributionSummary(group, math.fsum(values) / len(values), float(med), float(q1), float(q3), len(values))


def _grouped(corpus: Corpus, grouping: Mapping[str, str], pub_year: int) -> dict[str, list[str]]:
    groups: dict[str, list[str]] = defaultdict(list)
    ungrouped = 0
    for paper in corpus.papers_in_year(pub_year):
        g = grouping.get(paper.paper_id)
        if g is None:
            ungrouped += 1
            continue
        groups[g].append(paper.paper_id)
    if ungrouped:
        log.info("%d papers of %d have no group", ungrouped, pub_year)
    return dict(sorted(groups.items()))


def reference_count_summary(
    corpus: Corpus, grouping: Mapping[str, str], pub_year: int, method: str = DEFAULT_QUANTILE_METHOD
) -> list[DistributionSummary]:
    """Per group: linked references per paper, no reference window."""
    out = []
    for g, ids in _grouped(corpus, grouping, pub_year).items():
        out.append(summarize(g, [linked_reference_count(corpus, pid) for pid in ids], method))
    return out


def reference_year_summary(
    corpus: Corpus,
    grouping: Mapping[str, str],
    pub_year: int,
    linked_only: bool = False,
    method: str = DEFAULT_QUANTILE_METHOD,
) -> list[DistributionSummary]:
    """Per group: cited-reference years pooled over all references of the group's papers."""
    out = []
    for g, ids in _grouped(corpus, grouping, pub_year).items():
        years = [
            ref.ref_year
            for pid in ids
            for ref in corpus[pid].references
            if not linked_only or ref.linked
        ]
        if not years:
            log.warning("group %s has no references in %d; omitted", g, pub_year)
            continue
        out.append(summarize(g, years, method))
    return out


def reference_trend(
    corpus: Corpus,
    grouping: Mapping[str, str],
    year_range: YearInterval,
    window_length: int = 3,
    corpus_start: Optional[int] = None,
) -> dict[str, dict[int, Optional[float]]]:
    """Per group and year, mean linked references inside a fixed reference window.

    Years without papers in a group map to ``None``.
    """
    spec = WindowSpec.fixed(window_length)
    if corpus_start is None:
        years = corpus.years()
        if not years:
            raise ValueError("empty corpus")
        corpus_start = years[0]
    if year_range.first - corpus_start < window_length:
        raise ValueError(
            f"trend cannot start in {year_range.first}: reference windows of {window_length} years "
            f"need coverage from {corpus_start + window_length} on (corpus starts {corpus_start})"
        )
    sums: dict[str, dict[int, list[int]]] = defaultdict(lambda: defaultdict(list))
    for pid in sorted(corpus.papers):
        paper = corpus.papers[pid]
        g = grouping.get(pid)
        if g is None or paper.pub_year not in year_range:
            continue
        sums[g][paper.pub_year].append(
            linked_reference_count(corpus, pid, reference_interval(spec, paper.pub_year))
        )
    out = {}
    for g in sorted(sums):
        out[g] = {
            y: (math.fsum(sums[g][y]) / len(sums[g][y]) if sums[g].get(y) else None)
            for y in range(year_range.first, year_range.last + 1)
        }
    return out
