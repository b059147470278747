"""Fairness test: top-decile shares per evaluation category.

For each indicator and publication year the globally highest-scoring share
of papers is marked, papers are grouped by an independent single-assignment
category scheme, and each category's marked percentage is compared to the
expected ``100 * share``.  The summary statistic is the unweighted mean
absolute deviation across categories.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from csncr.classification import EvaluationScheme
from csncr.corpus import Corpus
from csncr.indicators import LABELS, IndicatorOptions, check_indicators, compute_indicator
from csncr.scores import InvariantError, ScoreTable

log = logging.getLogger(__name__)

TIE_RULES = ("include", "strict")
ROUNDING_RULES = ("half_even", "half_up", "floor", "ceil")


def cut_count(n: int, share: float, rounding: str = "half_even") -> int:
    """Number of papers in the top ``share`` of ``n`` (exact decimal arithmetic)."""
    exact = Fraction(str(share)) * n
    if rounding == "half_even":
        return round(exact)
    if rounding == "half_up":
        return math.floor(exact + Fraction(1, 2))
    if rounding == "floor":
        return math.floor(exact)
    if rounding == "ceil":
        return math.ceil(exact)
    raise ValueError(f"unknown rounding rule {rounding!r}")


def mark_top_decile(
    scores: ScoreTable,
    share: float = 0.10,
    ties: str = "include",
    rounding: str = "half_even",
    include_unscored: bool = False,
) -> dict[str, int]:
    """Flag the highest-scoring papers with 1, the rest with 0.

    With ``ties="include"`` every paper tied with the value at the cut is
    flagged, so the result depends only on values.  ``ties="strict"`` flags
    exactly the cut count, breaking ties by paper id.  Unscored papers are
    only present (as 0) when ``include_unscored`` is set.
    """
    if not 0 < share <= 1:
        raise ValueError("share must be in (0, 1]")
    if ties not in TIE_RULES:
        raise ValueError(f"unknown tie rule {ties!r}")
    if not scores.scores:
        raise ValueError(f"{scores.indicator} {scores.pub_year}: no scored papers to mark")

    ranked = sorted(scores.scores.items(), key=lambda kv: (-kv[1], kv[0]))
    k = cut_count(len(ranked), share, rounding)
    flags = {pid: 0 for pid, _ in ranked}
    if k > 0:
        if ties == "strict":
            for pid, _ in ranked[:k]:
                flags[pid] = 1
        else:
            threshold = ranked[k - 1][1]
            for pid, value in ranked:
                if value < threshold:
                    break
                flags[pid] = 1
    if include_unscored:
        for pid in scores.unscored:
            flags[pid] = 0
    return dict(sorted(flags.items()))


@dataclass(frozen=True)
class CategoryTally:
    papers: dict[str, int]
    marked: dict[str, int]
    unassigned: tuple[str, ...]

    def proportions(self) -> dict[str, float]:
        return {c: 100.0 * self.marked[c] / n for c, n in self.papers.items()}


def tally(flags: Mapping[str, int], evaluation: EvaluationScheme) -> CategoryTally:
    papers: dict[str, int] = {}
    marked: dict[str, int] = {}
    unassigned = []
    for pid in sorted(flags):
        cat = evaluation.assignment.get(pid)
        if cat is None:
            unassigned.append(pid)
            continue
        papers[cat] = papers.get(cat, 0) + 1
        marked[cat] = marked.get(cat, 0) + flags[pid]
    for cat in evaluation.categories():
        if cat not in papers:
            log.warning("evaluation category %s has no papers in this run; omitted", cat)
    if unassigned:
        log.info("%d flagged papers have no evaluation category and were left out", len(unassigned))
    order = sorted(papers)
    return CategoryTally({c: papers[c] for c in order}, {c: marked[c] for c in order}, tuple(unassigned))


def fairness_proportions(flags: Mapping[str, int], evaluation: EvaluationScheme) -> dict[str, float]:
    """Percent of each category's papers that are flagged."""
    return tally(flags, evaluation).proportions()


def mean_absolute_deviation(proportions: Mapping[str, float] | Iterable[float], expected: float = 10.0) -> float:
    values = list(proportions.values()) if isinstance(proportions, Mapping) else list(proportions)
    if not values:
        raise ValueError("no categories")
    return math.fsum(abs(v - expected) for v in values) / len(values)


@dataclass(frozen=True)
class FairnessRow:
    indicator: str
    pub_year: int
    proportions: dict[str, float]
    papers: dict[str, int]
    marked: dict[str, int]
    mad: float
    global_share: float  # percent of evaluated papers flagged
    unscored: int
    unassigned: int

    def as_dict(self) -> dict:
        return {
            "indicator": self.indicator,
            "pub_year": self.pub_year,
            "proportions": self.proportions,
            "papers": self.papers,
            "marked": self.marked,
            "mad": self.mad,
            "global_share": self.global_share,
            "unscored": self.unscored,
            "unassigned": self.unassigned,
        }


@dataclass(frozen=True)
class FairnessReport:
    indicators: tuple[str, ...]
    years: tuple[int, ...]
    categories: tuple[str, ...]
    rows: dict[tuple[str, int], FairnessRow]
    cross_year_mad: dict[str, float] = field(default_factory=dict)

    @property
    def ranking(self) -> list[str]:
        """Indicators ordered from fairest (lowest mean MAD) to least fair."""
        return sorted(self.cross_year_mad, key=lambda name: (self.cross_year_mad[name], name))

    def mad(self, indicator: str, pub_year: int) -> float:
        return self.rows[(indicator, pub_year)].mad

    def as_dict(self) -> dict:
        return {
            "indicators": list(self.indicators),
            "years": list(self.years),
            "categories": list(self.categories),
            "rows": [self.rows[(i, y)].as_dict() for y in self.years for i in self.indicators],
            "cross_year_mad": {i: self.cross_year_mad[i] for i in self.indicators},
            "ranking": self.ranking,
        }

    def by_year_rows(self, digits: int = 2) -> list[list[str]]:
        """Per-year blocks: indicator rows with category percentages and MAD."""
        out = [["year", "indicator", *self.categories, "mean_absolute_deviation"]]
        for year in self.years:
            for name in self.indicators:
                row = self.rows[(name, year)]
                cells = [_fmt(row.proportions.get(c), digits) for c in self.categories]
                out.append([str(year), LABELS.get(name, name), *cells, f"{row.mad:.{digits}f}"])
            first = self.rows[(self.indicators[0], year)]
            out.append([str(year), "Number of papers", *[str(first.papers.get(c, 0)) for c in self.categories], ""])
        return out

    def summary_rows(self, digits: int = 2) -> list[list[str]]:
        out = [["indicator", "mean_of_mean_absolute_deviations"]]
        for name in self.ranking:
            out.append([LABELS.get(name, name), f"{self.cross_year_mad[name]:.{digits}f}"])
        return out


def _fmt(value: Optional[float], digits: int) -> str:
    return "" if value is None else f"{value:.{digits}f}"


def check_conservation(t: CategoryTally, tol: float = 1e-9) -> float:
    """Count-weighted mean of category percentages must equal the realized marked share."""
    total = sum(t.papers.values())
    if total == 0:
        return 0.0
    realized = 100.0 * sum(t.marked.values()) / total
    props = t.proportions()
    weighted = math.fsum(t.papers[c] * props[c] for c in props) / total
    if abs(weighted - realized) > tol:
        raise InvariantError(f"mark conservation violated: weighted {weighted!r} vs realized {realized!r}")
    return realized


def fairness_row(
    scores: ScoreTable,
    evaluation: EvaluationScheme,
    share: float = 0.10,
    ties: str = "include",
    rounding: str = "half_even",
    include_unscored: bool = False,
) -> FairnessRow:
    flags = mark_top_decile(scores, share, ties, rounding, include_unscored)
    t = tally(flags, evaluation)
    if not t.papers:
        raise ValueError(f"{scores.indicator} {scores.pub_year}: no evaluated papers")
    realized = check_conservation(t)
    props = t.proportions()
    return FairnessRow(
        indicator=scores.indicator,
        pub_year=scores.pub_year,
        proportions=props,
        papers=t.papers,
        marked=t.marked,
        mad=mean_absolute_deviation(props, 100.0 * share),
        global_share=realized,
        unscored=len(scores.unscored),
        unassigned=len(t.unassigned),
    )


def fairness_from_tables(
    tables: Sequence[ScoreTable],
    evaluation: EvaluationScheme,
    share: float = 0.10,
    ties: str = "include",
    rounding: str = "half_even",
    include_unscored: bool = False,
) -> FairnessReport:
    """Assemble a report from precomputed score tables (one per indicator and year)."""
    rows = {}
    for table in tables:
        key = (table.indicator, table.pub_year)
        if key in rows:
            raise ValueError(f"duplicate score table for {key}")
        rows[key] = fairness_row(table, evaluation, share, ties, rounding, include_unscored)
    indicators = tuple(dict.fromkeys(t.indicator for t in tables))
    years = tuple(sorted({t.pub_year for t in tables}))
    for name in indicators:
        for year in years:
            if (name, year) not in rows:
                raise ValueError(f"missing score table for {name} {year}")
    categories = tuple(sorted({c for row in rows.values() for c in row.papers}))
    cross = {name: math.fsum(rows[(name, y)].mad for y in years) / len(years) for name in indicators}
    return FairnessReport(indicators, years, categories, rows, cross)


def fairness_suite(
    corpus: Corpus,
    indicators: Sequence[str],
    years: Sequence[int],
    evaluation: EvaluationScheme,
    options: IndicatorOptions = IndicatorOptions(),
    share: float = 0.10,
    ties: str = "include",
    rounding: str = "half_even",
    include_unscored: bool = False,
) -> FairnessReport:
    """Compute every indicator for every year and run the fairness test on each."""
    names = check_indicators(indicators)
    if not names or not years:
        raise ValueError("need at least one indicator and one year")
    tables = [compute_indicator(name, corpus, year, options) for year in sorted(years) for name in names]
    return fairness_from_tables(tables, evaluation, share, ties, rounding, include_unscored)
