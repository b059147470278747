"""Per-paper indicator values for one publication year."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

from csncr.windows import WindowSpec


class InvariantError(RuntimeError):
    """An internal consistency check failed."""


@dataclass(frozen=True)
class ScoreTable:
    indicator: str
    pub_year: int
    window: WindowSpec
    scores: Mapping[str, float]
    unscored: Mapping[str, str] = field(default_factory=dict)

    def __post_init__(self) -> None:
        both = set(self.scores) & set(self.unscored)
        if both:
            raise InvariantError(f"{self.indicator}: papers both scored and unscored: {sorted(both)[:5]}")
        for pid, v in self.scores.items():
            if not math.isfinite(v) or v < 0:
                raise InvariantError(f"{self.indicator}: invalid score {v!r} for {pid}")

    def __len__(self) -> int:
        return len(self.scores)

    def __getitem__(self, paper_id: str) -> float:
        return self.scores[paper_id]

    def rows(self) -> list[tuple[str, float]]:
        return sorted(self.scores.items())

    def as_dict(self) -> dict:
        return {
            "indicator": self.indicator,
            "pub_year": self.pub_year,
            "window": str(self.window),
            "scores": dict(sorted(self.scores.items())),
            "unscored": dict(sorted(self.unscored.items())),
        }
