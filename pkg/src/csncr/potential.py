"""Citation score normalized by cited references (CSNCR).

The expected citation count of a paper is the mean number of in-window
linked references of the papers in its overlapping-category field and
publication year.  Because those reference counts are fixed once a year is
fully indexed, the per-field potentials can be written to a baseline file
and reused for later citation censuses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, TextIO

from csncr.classification import OVERLAPPING, FieldScheme
from csncr.corpus import Corpus, CorpusError, linked_reference_count
from csncr.scores import ScoreTable
from csncr.windows import WindowSpec, reference_interval, windowed_citation_count

BASELINE_COLUMNS = ("field_id", "pub_year", "window", "R", "N")


@dataclass(frozen=True)
class CitationPotential:
    field_id: str
    pub_year: int
    window: WindowSpec
    R: float
    N: int


def citation_potentials(
    corpus: Corpus, scheme: FieldScheme, spec: WindowSpec, pub_year: int
) -> dict[str, CitationPotential]:
    """Mean in-window linked reference count per field (R) and field size (N)."""
    if scheme.kind != OVERLAPPING:
        raise ValueError(f"citation potentials need an {OVERLAPPING} scheme, got {scheme.kind}")
    window = reference_interval(spec, pub_year)
    out = {}
    for fid, members in scheme.fields.items():
        counts = []
        for pid in sorted(members):
            if corpus[pid].pub_year != pub_year:
                raise ValueError(f"{pid} is not a {pub_year} paper")
            counts.append(linked_reference_count(corpus, pid, window))
        out[fid] = CitationPotential(fid, pub_year, spec, math.fsum(counts) / len(counts), len(counts))
    return out


def csncr_scores(
    corpus: Corpus,
    scheme: FieldScheme,
    spec: WindowSpec,
    pub_year: int,
    potentials: Optional[Mapping[str, CitationPotential]] = None,
) -> ScoreTable:
    """c / e per paper, where e is the potential R of the paper's field.

    ``potentials`` may come from a stored baseline; otherwise they are computed.
    """
    if potentials is None:
        potentials = citation_potentials(corpus, scheme, spec, pub_year)
    scores = {}
    unscored = dict(scheme.excluded)
    for pid in scheme.assignment:
        fid = scheme.field_of(pid)
        pot = potentials.get(fid)
        if pot is None:
            unscored[pid] = "no baseline for field"
            continue
        if pot.pub_year != pub_year or pot.window != spec:
            raise ValueError(f"baseline for {fid} is for {pot.pub_year}/{pot.window}, not {pub_year}/{spec}")
        if pot.R == 0:
            unscored[pid] = "zero citation potential"
            continue
        scores[pid] = windowed_citation_count(corpus, pid, spec) / pot.R
    return ScoreTable("csncr", pub_year, spec, scores, unscored)


class AggregationError(ValueError):
    pass


def aggregate_scores(scores: ScoreTable, paper_ids: Iterable[str], mode: str = "mean") -> float:
    """MCSNCR (``mode="mean"``) or TCSNCR (``mode="sum"``) over a paper set.

    Works for any ScoreTable; summation is exactly rounded so the result does
    not depend on the order of ``paper_ids``.
    """
    ids = sorted(set(paper_ids))
    if not ids:
        raise AggregationError("cannot aggregate an empty paper set")
    missing = [pid for pid in ids if pid not in scores.scores]
    if missing:
        raise AggregationError(f"unscored papers in set: {', '.join(missing)}")
    total = math.fsum(scores.scores[pid] for pid in ids)
    if mode == "sum":
        return total
    if mode == "mean":
        return total / len(ids)
    raise ValueError(f"unknown aggregation mode {mode!r}")


def write_baselines(potentials: Iterable[CitationPotential], out: TextIO, header: Iterable[str] = ()) -> None:
    for line in header:
        out.write(f"# {line}\n")
    out.write("\t".join(BASELINE_COLUMNS) + "\n")
    rows = sorted(potentials, key=lambda p: (p.pub_year, str(p.window), p.field_id))
    for p in rows:
        out.write(f"{p.field_id}\t{p.pub_year}\t{p.window}\t{p.R!r}\t{p.N}\n")


def read_baselines(lines: Iterable[str]) -> dict[tuple[str, int, WindowSpec], CitationPotential]:
    """Load a baseline file keyed by ``(field_id, pub_year, window)``."""
    out: dict[tuple[str, int, WindowSpec], CitationPotential] = {}
    seen_header = False
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if not seen_header:
            if tuple(parts) != BASELINE_COLUMNS:
                raise CorpusError(f"line {lineno}: expected baseline header {BASELINE_COLUMNS}")
            seen_header = True
            continue
        if len(parts) != len(BASELINE_COLUMNS):
            raise CorpusError(f"line {lineno}: expected {len(BASELINE_COLUMNS)} columns")
        try:
            pot = CitationPotential(parts[0], int(parts[1]), WindowSpec.parse(parts[2]), float(parts[3]), int(parts[4]))
        except ValueError as exc:
            raise CorpusError(f"line {lineno}: {exc}") from None
        key = (pot.field_id, pot.pub_year, pot.window)
        if key in out and out[key] != pot:
            raise CorpusError(f"line {lineno}: conflicting baseline for {key}")
        out[key] = pot
    return out


def potentials_for(
    baselines: Mapping[tuple[str, int, WindowSpec], CitationPotential], pub_year: int, spec: WindowSpec
) -> dict[str, CitationPotential]:
    return {fid: p for (fid, year, window), p in baselines.items() if year == pub_year and window == spec}
