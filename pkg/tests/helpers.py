"""Small builders for hand-made corpora."""

from __future__ import annotations

from csncr.corpus import Corpus, PaperRecord, ReferenceLink, build_corpus

# Worked example: (citations, linked references) for researcher A and B papers 1-6.
EXAMPLE_A = [(40, 20), (20, 15), (10, 16), (15, 30), (12, 12), (5, 22)]
EXAMPLE_B = [(22, 10), (33, 15), (11, 20), (6, 17), (2, 25), (60, 30)]
EXAMPLE_CSNCR_A = [2.07, 1.03, 0.52, 0.78, 0.62, 0.26]
EXAMPLE_CSNCR_B = [1.14, 1.71, 0.57, 0.31, 0.10, 3.10]


def paper(pid, year, refs=(), journal="J", cats=("f",), doc_type="article", years=None):
    """``refs`` holds target ids; ``years`` maps ids to years, ``(None, y)`` is unlinked."""
    links = []
    for r in refs:
        if isinstance(r, tuple):
            links.append(ReferenceLink(*r))
        else:
            links.append(ReferenceLink(r, years[r]))
    return PaperRecord(pid, year, journal, doc_type, frozenset(cats), tuple(links))


def corpus_from(rows, census_year):
    """rows: (pid, year, [target ids or (None, year)], journal, cats)."""
    years = {r[0]: r[1] for r in rows}
    records = []
    for row in rows:
        pid, year, refs = row[0], row[1], row[2]
        journal = row[3] if len(row) > 3 else "J"
        cats = row[4] if len(row) > 4 else ("f",)
        records.append(paper(pid, year, refs, journal, cats, years=years))
    return build_corpus(records, census_year)


def example_records() -> list[PaperRecord]:
    """Twelve 2011 papers in one field reproducing the worked example under a fixed 3-year window.

    Referenced papers come from a 2008-2010 pool, citing papers are published
    in 2012, census year 2014.
    """
    pool = [PaperRecord(f"REF-{i:02d}", 2008 + i % 3, "JP", "article", frozenset({"pool"}), ()) for i in range(30)]
    focal = []
    for who, rows in (("A", EXAMPLE_A), ("B", EXAMPLE_B)):
        for i, (_, r) in enumerate(rows, start=1):
            refs = tuple(ReferenceLink(p.paper_id, p.pub_year) for p in pool[:r])
            focal.append(PaperRecord(f"{who}{i}", 2011, "J", "article", frozenset({"field-x"}), refs))
    cites = {f"A{i}": c for i, (c, _) in enumerate(EXAMPLE_A, start=1)}
    cites.update({f"B{i}": c for i, (c, _) in enumerate(EXAMPLE_B, start=1)})
    citers = []
    for k in range(60):
        refs = tuple(ReferenceLink(pid, 2011) for pid in sorted(cites) if k < cites[pid])
        citers.append(PaperRecord(f"C-{k:02d}", 2012, "JC", "article", frozenset({"citing"}), refs))
    return pool + focal + citers


def example_corpus() -> Corpus:
    return build_corpus(example_records(), 2014)


def cited_corpus(papers, year=2010, census=None, cite_year=None):
    """papers: (pid, count, journal, cats); each gets ``count`` citations from year+1."""
    cite_year = cite_year or year + 1
    records = [PaperRecord(pid, year, journal, "article", frozenset(cats), ()) for pid, _, journal, cats in papers]
    top = max((c for _, c, _, _ in papers), default=0)
    for k in range(top):
        refs = tuple(ReferenceLink(pid, year) for pid, c, _, _ in papers if k < c)
        records.append(PaperRecord(f"cit-{k:04d}", cite_year, "JC", "article", frozenset({"zz-citing"}), refs))
    return build_corpus(records, census or year + 3)


def coherent_corpus(seed, equal_r=False, years=(2000, 2008), journals=("J1", "J2", "J3"), per_journal=(1, 6)):
    """Random corpus in which every non-seed paper has >= 1 linked reference in its
    3-year reference window (so every citing journal-year has p = 1).

    With ``equal_r`` all papers of a journal-year share the same count.
    Papers of the first three years are seeds without references.
    """
    import random

    rng = random.Random(seed)
    first, last = years
    records = []
    by_year: dict[int, list[str]] = {}
    for year in range(first, last + 1):
        by_year[year] = []
        for j in journals:
            n = rng.randint(*per_journal)
            window = [pid for y in range(year - 3, year) for pid in by_year.get(y, [])]
            shared_r = rng.randint(1, 4)
            for i in range(n):
                pid = f"{j}-{year}-{i}"
                refs = ()
                if year >= first + 3:
                    r = min(shared_r if equal_r else rng.randint(1, 6), len(window))
                    chosen = rng.sample(window, r)
                    refs = tuple(ReferenceLink(t, int(t.split("-")[1])) for t in chosen)
                    refs += tuple(ReferenceLink(None, year - rng.randint(1, 9)) for _ in range(rng.randint(0, 2)))
                records.append(PaperRecord(pid, year, j, "article", frozenset({"f"}), refs))
                by_year[year].append(pid)
    return build_corpus(records, last)


def field_corpus(specs, year=2011, census=2014):
    """specs: (pid, categories, citations, linked_refs) for papers published in ``year``.

    Reference targets come from a pool in the three preceding years (inside a
    fixed-3 reference window) and citations from papers one year later, so
    ``citations`` and ``linked_refs`` are the windowed counts under fixed3.
    """
    max_refs = max((s[3] for s in specs), default=0)
    pool = [
        PaperRecord(f"~ref-{i:04d}", year - 3 + i % 3, "~JP", "article", frozenset({"~pool"}), ())
        for i in range(max_refs)
    ]
    records = list(pool)
    for pid, cats, _, r in specs:
        refs = tuple(ReferenceLink(p.paper_id, p.pub_year) for p in pool[:r])
        records.append(PaperRecord(pid, year, "J", "article", frozenset(cats), refs))
    max_c = max((s[2] for s in specs), default=0)
    for k in range(max_c):
        refs = tuple(ReferenceLink(pid, year) for pid, _, c, _ in specs if k < c)
        records.append(PaperRecord(f"~cit-{k:04d}", year + 1, "~JC", "article", frozenset({"~citing"}), refs))
    return build_corpus(records, census)
