"""Corpus data model, JSON-lines ingestion and the resolved citation graph.

Input format: one JSON object per line::

    {"paper_id": "P1", "pub_year": 2011, "journal_id": "J1",
     "doc_type": "article", "categories": ["chem-org", "chem-phys"],
     "references": [{"target_id": "P0", "ref_year": 2009}, {"ref_year": 1998}]}

Blank lines and lines starting with ``#`` are ignored.  A reference without
``target_id`` (or whose target is not in the corpus) is *unlinked*: it keeps
its year but never counts in indicator math.
"""

from __future__ import annotations

import bisect
import hashlib
import json
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, TextIO

from csncr.windows import YearInterval


class CorpusError(ValueError):
    """Raised for invalid corpus input."""


class ReferenceLink(NamedTuple):
    target_id: Optional[str]
    ref_year: int

    @property
    def linked(self) -> bool:
        return self.target_id is not None


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    pub_year: int
    journal_id: str
    doc_type: str
    categories: frozenset[str] = frozenset()
    references: tuple[ReferenceLink, ...] = ()

    def to_json(self) -> str:
        refs = []
        for ref in self.references:
            if ref.target_id is None:
                refs.append({"ref_year": ref.ref_year})
            else:
                refs.append({"target_id": ref.target_id, "ref_year": ref.ref_year})
        return json.dumps(
            {
                "paper_id": self.paper_id,
                "pub_year": self.pub_year,
                "journal_id": self.journal_id,
                "doc_type": self.doc_type,
                "categories": sorted(self.categories),
                "references": refs,
            },
            separators=(",", ":"),
        )


@dataclass(frozen=True)
class IngestSummary:
    papers_read: int
    links_resolved: int
    links_demoted: int
    unlinked_input: int

    def as_dict(self) -> dict:
        return {
            "papers_read": self.papers_read,
            "links_resolved": self.links_resolved,
            "links_demoted": self.links_demoted,
            "unlinked_input": self.unlinked_input,
        }


@dataclass(frozen=True, eq=False)
class Corpus:
    """Immutable paper collection with forward citations derived from references.

    ``citations[pid]`` holds ``(citing_id, citing_year)`` pairs sorted by year
    then id.
    """

    papers: Mapping[str, PaperRecord]
    citations: Mapping[str, tuple[tuple[str, int], ...]]
    census_year: int
    summary: IngestSummary = field(compare=False)
    _citing_years: Mapping[str, tuple[int, ...]] = field(repr=False, compare=False)
    _linked_ref_years: Mapping[str, tuple[int, ...]] = field(repr=False, compare=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return (
            self.census_year == other.census_year
            and dict(self.papers) == dict(other.papers)
            and dict(self.citations) == dict(other.citations)
        )

    __hash__ = None  # type: ignore[assignment]

    def __len__(self) -> int:
        return len(self.papers)

    def __contains__(self, paper_id: object) -> bool:
        return paper_id in self.papers

    def __getitem__(self, paper_id: str) -> PaperRecord:
        try:
            return self.papers[paper_id]
        except KeyError:
            raise KeyError(f"unknown paper_id {paper_id}") from None

    def years(self) -> list[int]:
        return sorted({p.pub_year for p in self.papers.values()})

    def papers_in_year(self, pub_year: int, doc_type: Optional[str] = None) -> list[PaperRecord]:
        """Papers of one publication year, sorted by id, optionally filtered by doc type."""
        return [
            p
            for pid, p in sorted(self.papers.items())
            if p.pub_year == pub_year and (doc_type is None or p.doc_type == doc_type)
        ]

    def citing_years(self, paper_id: str) -> tuple[int, ...]:
        """Sorted publication years of the papers citing ``paper_id``."""
        return self._citing_years[paper_id]

    def linked_reference_years(self, paper_id: str) -> tuple[int, ...]:
        """Sorted years of the resolved references of ``paper_id``."""
        return self._linked_ref_years[paper_id]

    @property
    def n_citation_edges(self) -> int:
        return sum(len(c) for c in self.citations.values())

    def iter_lines(self) -> Iterator[str]:
        for pid in sorted(self.papers):
            yield self.papers[pid].to_json()

    def dump(self, out: TextIO) -> None:
        for line in self.iter_lines():
            out.write(line)
            out.write("\n")

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(f"census_year={self.census_year}\n".encode())
        for line in self.iter_lines():
            h.update(line.encode())
            h.update(b"\n")
        return h.hexdigest()

    def restrict(self, doc_type: str) -> "Corpus":
        """Sub-corpus of one document type; links to dropped papers are demoted."""
        kept = [p for p in self.papers.values() if p.doc_type == doc_type]
        return build_corpus(kept, self.census_year)


def _parse_record(raw: str, lineno: int) -> PaperRecord:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {lineno}: malformed record ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise CorpusError(f"line {lineno}: malformed record (expected an object)")

    def token(name: str) -> str:
        value = obj.get(name)
        if not isinstance(value, str) or not value.strip():
            raise CorpusError(f"line {lineno}: malformed record ({name} must be a non-empty string)")
        return value

    def year(value: object, name: str) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise CorpusError(f"line {lineno}: malformed record ({name} must be an integer)")
        return value

    paper_id = token("paper_id")
    pub_year = year(obj.get("pub_year"), "pub_year")
    journal_id = token("journal_id")
    doc_type = token("doc_type")

    cats = obj.get("categories", [])
    if not isinstance(cats, list) or not all(isinstance(c, str) and c for c in cats):
        raise CorpusError(f"line {lineno}: malformed record (categories must be a list of strings)")

    refs_raw = obj.get("references", [])
    if not isinstance(refs_raw, list):
        raise CorpusError(f"line {lineno}: malformed record (references must be a list)")
    refs = []
    seen: set[str] = set()
    for ref in refs_raw:
        if not isinstance(ref, dict):
            raise CorpusError(f"line {lineno}: malformed reference {ref!r}")
        target = ref.get("target_id")
        if target is not None and (not isinstance(target, str) or not target):
            raise CorpusError(f"line {lineno}: malformed reference target {target!r}")
        ref_year = year(ref.get("ref_year"), "ref_year")
        if target is not None:
            if target in seen:
                raise CorpusError(f"line {lineno}: duplicate reference to {target} in {paper_id}")
            seen.add(target)
        refs.append(ReferenceLink(target, ref_year))

    return PaperRecord(paper_id, pub_year, journal_id, doc_type, frozenset(cats), tuple(refs))


def build_corpus(records: Iterable[PaperRecord], census_year: int) -> Corpus:
    """Validate records, demote dangling links and build the citation graph."""
    papers: dict[str, PaperRecord] = {}
    for rec in records:
        if rec.paper_id in papers:
            raise CorpusError(f"duplicate paper_id {rec.paper_id}")
        if rec.pub_year > census_year:
            raise CorpusError(
                f"pub_year {rec.pub_year} of {rec.paper_id} is after census year {census_year}"
            )
        papers[rec.paper_id] = rec

    resolved = demoted = unlinked = 0
    citing: dict[str, list[tuple[int, str]]] = {pid: [] for pid in papers}
    ref_years: dict[str, tuple[int, ...]] = {}
    for pid, rec in papers.items():
        new_refs = []
        changed = False
        years = []
        for ref in rec.references:
            if ref.target_id is None:
                unlinked += 1
                new_refs.append(ref)
                continue
            target = papers.get(ref.target_id)
            if target is None:
                demoted += 1
                changed = True
                new_refs.append(ReferenceLink(None, ref.ref_year))
                continue
            if target.pub_year != ref.ref_year:
                raise CorpusError(
                    f"reference {pid} -> {ref.target_id}: ref_year {ref.ref_year} "
                    f"does not match pub_year {target.pub_year}"
                )
            resolved += 1
            new_refs.append(ref)
            years.append(ref.ref_year)
            citing[ref.target_id].append((rec.pub_year, pid))
        if changed:
            papers[pid] = PaperRecord(
                rec.paper_id, rec.pub_year, rec.journal_id, rec.doc_type, rec.categories, tuple(new_refs)
            )
        ref_years[pid] = tuple(sorted(years))

    citations = {}
    citing_years = {}
    for pid, edges in citing.items():
        edges.sort()
        citations[pid] = tuple((cid, y) for y, cid in edges)
        citing_years[pid] = tuple(y for y, _ in edges)

    summary = IngestSummary(len(papers), resolved, demoted, unlinked)
    return Corpus(
        papers=MappingProxyType(papers),
        citations=MappingProxyType(citations),
        census_year=census_year,
        summary=summary,
        _citing_years=MappingProxyType(citing_years),
        _linked_ref_years=MappingProxyType(ref_years),
    )


def ingest_corpus(lines: Iterable[str], census_year: int) -> Corpus:
    """Parse corpus-format lines into a validated :class:`Corpus`."""

    def records() -> Iterator[PaperRecord]:
        for lineno, raw in enumerate(lines, start=1):
            raw = raw.strip()
            if not raw or raw.startswith("#"):
                continue
            yield _parse_record(raw, lineno)

    return build_corpus(records(), census_year)


def count_in_interval(sorted_years: tuple[int, ...], interval: Optional[YearInterval]) -> int:
    if interval is None:
        return len(sorted_years)
    lo = bisect.bisect_left(sorted_years, interval.first)
    hi = bisect.bisect_right(sorted_years, interval.last)
    return hi - lo


def linked_reference_count(
    corpus: Corpus, paper_id: str, ref_window: Optional[YearInterval] = None
) -> int:
    """Resolved references of ``paper_id`` dated inside ``ref_window`` (inclusive)."""
    if paper_id not in corpus.papers:
        raise KeyError(f"unknown paper_id {paper_id}")
    return count_in_interval(corpus.linked_reference_years(paper_id), ref_window)
