"""Normalization field schemes and the independent evaluation scheme."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from csncr.corpus import Corpus, CorpusError

log = logging.getLogger(__name__)

BASE_CATEGORIES = "base_categories"
OVERLAPPING = "overlapping_combinations"
JOURNAL_YEAR = "journal_year"

COMBINATION_SEP = "|"


@dataclass(frozen=True)
class FieldScheme:
    kind: str
    assignment: Mapping[str, frozenset[str]]
    fields: Mapping[str, frozenset[str]]
    excluded: Mapping[str, str]  # paper_id -> reason

    @classmethod
    def from_assignment(
        cls, kind: str, assignment: Mapping[str, Iterable[str]], excluded: Optional[Mapping[str, str]] = None
    ) -> "FieldScheme":
        assign = {pid: frozenset(fs) for pid, fs in assignment.items()}
        fields: dict[str, set[str]] = defaultdict(set)
        for pid, fs in assign.items():
            for f in fs:
                fields[f].add(pid)
        return cls(
            kind,
            MappingProxyType(dict(sorted(assign.items()))),
            MappingProxyType({f: frozenset(p) for f, p in sorted(fields.items())}),
            MappingProxyType(dict(sorted((excluded or {}).items()))),
        )

    def field_of(self, paper_id: str) -> str:
        """The single field of a paper in a single-assignment scheme."""
        (f,) = self.assignment[paper_id]
        return f


def combination_id(categories: Iterable[str]) -> str:
    return COMBINATION_SEP.join(sorted(categories))


def build_overlapping_scheme(
    corpus: Corpus, pub_year: int, min_size: int = 10, doc_type: Optional[str] = None
) -> FieldScheme:
    """One field per exact category combination among the year's papers.

    Combinations with fewer than ``min_size`` papers are dropped and their
    papers listed in ``excluded``; papers without categories are excluded too.
    """
    if min_size < 1:
        raise ValueError("min_size must be >= 1")
    groups: dict[str, list[str]] = defaultdict(list)
    excluded: dict[str, str] = {}
    for paper in corpus.papers_in_year(pub_year, doc_type):
        if not paper.categories:
            excluded[paper.paper_id] = "no categories"
            continue
        groups[combination_id(paper.categories)].append(paper.paper_id)

    assignment: dict[str, list[str]] = {}
    for fid, members in groups.items():
        if len(members) < min_size:
            for pid in members:
                excluded[pid] = f"field below minimum size ({len(members)} < {min_size})"
            continue
        for pid in members:
            assignment[pid] = [fid]
    return FieldScheme.from_assignment(OVERLAPPING, assignment, excluded)


def build_base_scheme(corpus: Corpus, pub_year: int, doc_type: Optional[str] = None) -> FieldScheme:
    """Multi-assignment scheme: each base category is a field."""
    assignment = {}
    excluded = {}
    for paper in corpus.papers_in_year(pub_year, doc_type):
        if paper.categories:
            assignment[paper.paper_id] = paper.categories
        else:
            excluded[paper.paper_id] = "no categories"
    return FieldScheme.from_assignment(BASE_CATEGORIES, assignment, excluded)


def build_journal_scheme(corpus: Corpus, pub_year: int, doc_type: Optional[str] = None) -> FieldScheme:
    assignment = {p.paper_id: [p.journal_id] for p in corpus.papers_in_year(pub_year, doc_type)}
    return FieldScheme.from_assignment(JOURNAL_YEAR, assignment)


@dataclass(frozen=True)
class EvaluationScheme:
    """Single-assignment paper -> evaluation category map."""

    assignment: Mapping[str, str]

    def categories(self) -> list[str]:
        return sorted(set(self.assignment.values()))

    def __len__(self) -> int:
        return len(self.assignment)


def load_evaluation_scheme(lines: Iterable[str], corpus: Corpus) -> EvaluationScheme:
    """Read ``paper_id<TAB>category`` lines; ``#`` comments and blanks are skipped."""
    assignment: dict[str, str] = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise CorpusError(f"line {lineno}: expected 'paper_id<TAB>category'")
        pid, cat = parts[0].strip(), parts[1].strip()
        if pid not in corpus.papers:
            raise CorpusError(f"line {lineno}: unknown paper_id {pid}")
        prev = assignment.get(pid)
        if prev is not None and prev != cat:
            raise CorpusError(f"multiple evaluation categories for {pid}")
        assignment[pid] = cat
    if not assignment:
        log.warning("evaluation scheme is empty")
    else:
        missing = len(corpus) - len(assignment)
        if missing:
            log.info("%d corpus papers have no evaluation category and are left out of fairness runs", missing)
    return EvaluationScheme(MappingProxyType(dict(sorted(assignment.items()))))


def dump_evaluation_scheme(scheme: EvaluationScheme) -> list[str]:
    return [f"{pid}\t{cat}" for pid, cat in sorted(scheme.assignment.items())]
