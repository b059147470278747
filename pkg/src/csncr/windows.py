"""Citation and reference window arithmetic.

A fixed window of length L covers the L years after publication on the
citing side and the L years before publication on the reference side, so
the two sides are symmetric by construction.  The full window counts
citations from the publication year up to the census year and leaves
references unrestricted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

if TYPE_CHECKING:
    from csncr.corpus import Corpus


class IncompleteWindowError(ValueError):
    """A fixed citation window reaches past the census year."""


@dataclass(frozen=True, order=True)
class YearInterval:
    first: int
    last: int

    def __post_init__(self) -> None:
        if self.first > self.last:
            raise ValueError(f"empty year interval {self.first}-{self.last}")

    def __contains__(self, year: object) -> bool:
        return isinstance(year, int) and self.first <= year <= self.last

    def __len__(self) -> int:
        return self.last - self.first + 1

    def __str__(self) -> str:
        return f"{self.first}-{self.last}"


@dataclass(frozen=True)
class WindowSpec:
    """``kind`` is ``"fixed"`` or ``"full"``; ``length`` only applies to fixed."""

    kind: str
    length: int = 0

    def __post_init__(self) -> None:
        if self.kind == "fixed":
            if self.length < 1:
                raise ValueError("fixed window length must be >= 1")
        elif self.kind == "full":
            if self.length != 0:
                raise ValueError("full window takes no length")
        else:
            raise ValueError(f"unknown window kind {self.kind!r}")

    @classmethod
    def fixed(cls, length: int) -> "WindowSpec":
        return cls("fixed", length)

    @classmethod
    def full(cls) -> "WindowSpec":
        return cls("full")

    @classmethod
    def parse(cls, text: str) -> "WindowSpec":
        """Parse ``"full"`` or ``"fixedN"``."""
        text = text.strip().lower()
        if text == "full":
            return cls.full()
        m = re.fullmatch(r"fixed(\d+)", text)
        if m is None:
            raise ValueError(f"invalid window spec {text!r} (expected 'full' or 'fixedN')")
        return cls.fixed(int(m.group(1)))

    def __str__(self) -> str:
        return "full" if self.kind == "full" else f"fixed{self.length}"


def citation_interval(spec: WindowSpec, pub_year: int, census_year: int) -> YearInterval:
    if spec.kind == "full":
        if pub_year > census_year:
            raise IncompleteWindowError(
                f"incomplete citation window: pub_year {pub_year} after census year {census_year}"
            )
        return YearInterval(pub_year, census_year)
    last = pub_year + spec.length
    if last > census_year:
        raise IncompleteWindowError(
            f"incomplete citation window: {spec} from {pub_year} ends {last}, "
            f"after census year {census_year}"
        )
    return YearInterval(pub_year + 1, last)


def reference_interval(spec: WindowSpec, pub_year: int) -> Optional[YearInterval]:
    if spec.kind == "full":
        return None
    return YearInterval(pub_year - spec.length, pub_year - 1)


def windowed_citation_count(corpus: "Corpus", paper_id: str, spec: WindowSpec) -> int:
    """Citations to ``paper_id`` whose citing year lies in its citation window."""
    from csncr.corpus import count_in_interval

    paper = corpus[paper_id]
    interval = citation_interval(spec, paper.pub_year, corpus.census_year)
    return count_in_interval(corpus.citing_years(paper_id), interval)
