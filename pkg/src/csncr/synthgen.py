"""Seeded synthetic corpora with per-field referencing behaviour.

Papers are generated year by year.  Each paper draws a reference-list
length (gamma-Poisson around the field's current mean), a lookback age for
every reference (geometric, mean ``ref_age_scale`` years, always >= 1) and a
target field (own field with probability ``internal_citation_bias``, else a
uniformly chosen other field).  Targets inside a (field, year) pool are
picked proportionally to a lognormal paper fitness, which gives skewed
citation distributions of similar shape in every field.  References that
reach back before the first generated year, or fall into the
``unlinked_noise`` share, keep their year but get no target.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from csncr.classification import EvaluationScheme
from csncr.corpus import Corpus, PaperRecord, ReferenceLink, build_corpus
from csncr.windows import YearInterval

MAX_RESAMPLE = 25


@dataclass(frozen=True)
class FieldProfile:
    field: str
    papers_per_year: int
    mean_refs: float
    ref_length_dispersion: float = 0.3
    ref_age_scale: float = 4.0
    internal_citation_bias: float = 0.9
    yearly_ref_growth: float = 0.0

    def __post_init__(self) -> None:
        if not self.field or "|" in self.field:
            raise ValueError(f"invalid field token {self.field!r}")
        if self.papers_per_year < 1:
            raise ValueError(f"{self.field}: papers_per_year must be positive")
        if self.mean_refs < 0 or self.ref_length_dispersion < 0:
            raise ValueError(f"{self.field}: mean_refs and ref_length_dispersion must be >= 0")
        if self.ref_age_scale < 1:
            raise ValueError(f"{self.field}: ref_age_scale must be >= 1 (references are at least one year old)")
        if not 0 <= self.internal_citation_bias <= 1:
            raise ValueError(f"{self.field}: internal_citation_bias must be in [0, 1]")


@dataclass(frozen=True)
class OverlapRule:
    """A ``share`` of ``field`` papers also carry ``also`` as a category."""

    field: str
    also: str
    share: float = 0.1


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    year_range: YearInterval
    fields: tuple[FieldProfile, ...]
    journals_per_field: int = 5
    category_overlap_rules: tuple[OverlapRule, ...] = ()
    unlinked_noise: float = 0.0
    fitness_sigma: float = 1.0
    doc_type: str = "article"
    census_year: Optional[int] = None

    def __post_init__(self) -> None:
        names = [f.field for f in self.fields]
        if not names:
            raise ValueError("at least one field profile is required")
        if len(set(names)) != len(names):
            raise ValueError("duplicate field tokens")
        if len(self.year_range) < 2:
            raise ValueError("year_range must span at least two years so that references can resolve")
        if self.journals_per_field < 1:
            raise ValueError("journals_per_field must be positive")
        if not 0 <= self.unlinked_noise <= 1:
            raise ValueError("unlinked_noise must be in [0, 1]")
        if self.fitness_sigma < 0:
            raise ValueError("fitness_sigma must be >= 0")
        for rule in self.category_overlap_rules:
            if rule.field not in names or rule.also not in names or rule.field == rule.also:
                raise ValueError(f"bad overlap rule {rule}")
            if not 0 <= rule.share <= 1:
                raise ValueError(f"overlap share out of range in {rule}")
        if self.census is not None and self.census < self.year_range.last:
            raise ValueError("census_year precedes the last generated year")

    @property
    def census(self) -> int:
        return self.year_range.last if self.census_year is None else self.census_year

    def to_dict(self) -> dict:
        d = asdict(self)
        d["year_range"] = [self.year_range.first, self.year_range.last]
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "GeneratorConfig":
        d = dict(d)
        first, last = d.pop("year_range")
        fields = tuple(FieldProfile(**f) for f in d.pop("fields"))
        rules = tuple(OverlapRule(**r) for r in d.pop("category_overlap_rules", ()))
        return cls(year_range=YearInterval(first, last), fields=fields, category_overlap_rules=rules, **d)

    @classmethod
    def from_json(cls, text: str) -> "GeneratorConfig":
        return cls.from_dict(json.loads(text))


def _resolve_duplicates(rng, targets: list, pools, keys: list) -> list:
    """Re-draw repeated targets within one paper; give up after MAX_RESAMPLE tries."""
    seen = set()
    out = []
    for t, key in zip(targets, keys):
        if t is None:
            out.append(None)
            continue
        tries = 0
        while t in seen and tries < MAX_RESAMPLE:
            ids, cum = pools[key]
            t = ids[min(int(np.searchsorted(cum, rng.random() * cum[-1], side="right")), len(ids) - 1)]
            tries += 1
        if t in seen:
            out.append(False)  # dropped
            continue
        seen.add(t)
        out.append(t)
    return out


def generate(config: GeneratorConfig) -> tuple[Corpus, EvaluationScheme]:
    """Generate a corpus plus the latent field of every paper as evaluation scheme."""
    rng = np.random.default_rng(config.seed)
    profiles = sorted(config.fields, key=lambda f: f.field)
    names = [f.field for f in profiles]
    overlap = {}
    for rule in config.category_overlap_rules:
        overlap.setdefault(rule.field, []).append(rule)
    sigma = config.fitness_sigma

    pools: dict[tuple[int, int], tuple[list[str], np.ndarray]] = {}
    records: list[PaperRecord] = []
    latent: dict[str, str] = {}
    y0 = config.year_range.first

    for year in range(config.year_range.first, config.year_range.last + 1):
        new_pools = {}
        for fi, prof in enumerate(profiles):
            n = prof.papers_per_year
            ids = [f"{prof.field}-{year}-{i:05d}" for i in range(n)]
            fitness = rng.lognormal(-sigma * sigma / 2, sigma, n) if sigma > 0 else np.ones(n)
            journals = rng.integers(0, config.journals_per_field, n)
            extra = {r.also: rng.random(n) < r.share for r in overlap.get(prof.field, ())}

            mean = max(prof.mean_refs + prof.yearly_ref_growth * (year - y0), 0.0)
            if prof.ref_length_dispersion > 0 and mean > 0:
                disp = prof.ref_length_dispersion
                lam = rng.gamma(1.0 / disp, mean * disp, n)
            else:
                lam = np.full(n, mean)
            n_refs = rng.poisson(lam)
            total = int(n_refs.sum())
            ages = rng.geometric(1.0 / prof.ref_age_scale, total)
            own = rng.random(total) < prof.internal_citation_bias
            if len(names) > 1:
                pick = rng.integers(0, len(names) - 1, total)
                other = np.where(pick >= fi, pick + 1, pick)
            else:
                other = np.full(total, fi)
            tfield = np.where(own, fi, other)
            noise = rng.random(total) < config.unlinked_noise
            ref_years = year - ages

            targets: list = [None] * total
            keys: list = [None] * total
            by_pool: dict[tuple[int, int], list[int]] = {}
            for j in range(total):
                if noise[j]:
                    continue
                key = (int(tfield[j]), int(ref_years[j]))
                if key in pools:
                    by_pool.setdefault(key, []).append(j)
            for key in sorted(by_pool):
                idx = by_pool[key]
                pool_ids, cum = pools[key]
                draws = np.minimum(
                    np.searchsorted(cum, rng.random(len(idx)) * cum[-1], side="right"), len(pool_ids) - 1
                )
                for j, d in zip(idx, draws):
                    targets[j] = pool_ids[int(d)]
                    keys[j] = key

            start = 0
            for i, pid in enumerate(ids):
                stop = start + int(n_refs[i])
                resolved = _resolve_duplicates(rng, targets[start:stop], pools, keys[start:stop])
                refs = tuple(
                    ReferenceLink(t if t else None, int(ref_years[j]))
                    for j, t in zip(range(start, stop), resolved)
                    if t is not False
                )
                start = stop
                cats = {prof.field}
                for also, mask in extra.items():
                    if mask[i]:
                        cats.add(also)
                records.append(
                    PaperRecord(
                        pid, year, f"{prof.field}-J{int(journals[i])}", config.doc_type, frozenset(cats), refs
                    )
                )
                latent[pid] = prof.field
            new_pools[(fi, year)] = (ids, np.cumsum(fitness))
        pools.update(new_pools)

    corpus = build_corpus(records, config.census)
    return corpus, EvaluationScheme(dict(sorted(latent.items())))


def generate_corpus(config: GeneratorConfig) -> Corpus:
    return generate(config)[0]
