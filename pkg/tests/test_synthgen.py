import io
import json
import math

import numpy as np
import pytest

from csncr.corpus import linked_reference_count
from csncr.synthgen import FieldProfile, GeneratorConfig, OverlapRule, generate, generate_corpus
from csncr.windows import WindowSpec, YearInterval, windowed_citation_count


def config(seed=1, **kw):
    fields = kw.pop(
        "fields",
        (FieldProfile("a", 80, 12.0, internal_citation_bias=0.8), FieldProfile("b", 80, 6.0, internal_citation_bias=0.8)),
    )
    return GeneratorConfig(seed=seed, year_range=kw.pop("year_range", YearInterval(2000, 2008)), fields=fields, **kw)


def dump(corpus):
    buf = io.StringIO()
    corpus.dump(buf)
    return buf.getvalue()


def test_deterministic_for_seed():
    assert dump(generate_corpus(config(5))) == dump(generate_corpus(config(5)))
    assert dump(generate_corpus(config(5))) != dump(generate_corpus(config(6)))


def test_references_point_backwards_and_close_the_world():
    corpus = generate_corpus(config(2))
    for p in corpus.papers.values():
        assert all(r.ref_year < p.pub_year for r in p.references)
    resolved = sum(linked_reference_count(corpus, pid) for pid in corpus.papers)
    assert resolved == corpus.n_citation_edges
    assert corpus.summary.links_demoted == 0


def test_realized_mean_refs_converge():
    fields = (FieldProfile("a", 1500, 20.0, ref_length_dispersion=0.3),)
    corpus = generate_corpus(config(3, fields=fields, year_range=YearInterval(2000, 2001)))
    counts = [len(p.references) for p in corpus.papers_in_year(2001)]
    # sd of the mean: sqrt(mu + disp * mu^2) / sqrt(n) ~ 0.30
    assert abs(np.mean(counts) - 20.0) < 1.2


def test_unlinked_noise_and_pre_start_references():
    corpus = generate_corpus(config(4, unlinked_noise=0.2))
    refs = [r for p in corpus.papers_in_year(2008) for r in p.references]
    share = sum(not r.linked for r in refs) / len(refs)
    assert 0.15 < share < 0.35
    first = [r for p in corpus.papers_in_year(2000) for r in p.references]
    assert first and not any(r.linked for r in first)


def test_journals_categories_and_evaluation():
    cfg = config(7, category_overlap_rules=(OverlapRule("a", "b", 0.5),), journals_per_field=3)
    corpus, ev = generate(cfg)
    assert set(ev.categories()) == {"a", "b"}
    assert len(ev) == len(corpus)
    a_papers = [p for p in corpus.papers.values() if ev.assignment[p.paper_id] == "a"]
    both = sum(p.categories == {"a", "b"} for p in a_papers) / len(a_papers)
    assert 0.4 < both < 0.6
    assert {p.journal_id for p in a_papers} == {"a-J0", "a-J1", "a-J2"}
    assert all(p.categories == {"b"} for p in corpus.papers.values() if ev.assignment[p.paper_id] == "b")


def mean_citations(corpus, ev, field, year):
    ids = [p.paper_id for p in corpus.papers_in_year(year) if ev.assignment[p.paper_id] == field]
    return float(np.mean([windowed_citation_count(corpus, pid, WindowSpec.fixed(3)) for pid in ids]))


def test_identical_profiles_indistinguishable():
    fields = (FieldProfile("x", 100, 10.0, internal_citation_bias=0.7),
              FieldProfile("y", 100, 10.0, internal_citation_bias=0.7))
    diffs, pooled_x, pooled_y = [], [], []
    for seed in range(20):
        corpus, ev = generate(config(seed, fields=fields, year_range=YearInterval(2000, 2007)))
        mx, my = mean_citations(corpus, ev, "x", 2004), mean_citations(corpus, ev, "y", 2004)
        diffs.append(mx - my)
        pooled_x.append(mx)
        pooled_y.append(my)
    # the cross-seed mean difference must sit within 3 standard errors of zero
    se = np.std(diffs, ddof=1) / math.sqrt(len(diffs))
    assert abs(np.mean(diffs)) < 3 * se
    assert abs(np.mean(pooled_x) / np.mean(pooled_y) - 1) < 0.05


def test_reference_supply_drives_citations():
    fields = (FieldProfile("dense", 100, 40.0, internal_citation_bias=0.9),
              FieldProfile("sparse", 100, 5.0, internal_citation_bias=0.9))
    wins = 0
    for seed in range(20):
        corpus, ev = generate(config(seed, fields=fields, year_range=YearInterval(2000, 2007)))
        wins += mean_citations(corpus, ev, "dense", 2004) > mean_citations(corpus, ev, "sparse", 2004)
    assert wins == 20


def test_config_validation():
    with pytest.raises(ValueError, match="two years"):
        config(year_range=YearInterval(2000, 2000))
    with pytest.raises(ValueError):
        FieldProfile("a", 0, 5.0)
    with pytest.raises(ValueError):
        FieldProfile("a", 10, 5.0, internal_citation_bias=1.5)
    with pytest.raises(ValueError):
        FieldProfile("a|b", 10, 5.0)
    with pytest.raises(ValueError):
        config(category_overlap_rules=(OverlapRule("a", "zzz"),))
    with pytest.raises(ValueError):
        config(census_year=2005)


def test_config_json_round_trip():
    cfg = config(9, category_overlap_rules=(OverlapRule("a", "b", 0.25),), census_year=2010)
    again = GeneratorConfig.from_json(json.dumps(cfg.to_dict()))
    assert again == cfg
    assert again.census == 2010
