import io
import json

import pytest
from hypothesis import given, settings

from csncr.corpus import CorpusError, ingest_corpus, linked_reference_count
from csncr.windows import YearInterval
from helpers import corpus_from
from strategies import corpora


def line(pid, year, refs=(), journal="J", cats=("f",), doc_type="article"):
    return json.dumps(
        {"paper_id": pid, "pub_year": year, "journal_id": journal, "doc_type": doc_type,
         "categories": list(cats), "references": list(refs)}
    )


def test_empty_input():
    corpus = ingest_corpus([], 2014)
    assert len(corpus) == 0
    assert corpus.summary.papers_read == 0


def test_minimal_graph():
    corpus = ingest_corpus(
        [line("A", 2010), line("B", 2011, [{"target_id": "A", "ref_year": 2010}])], 2014
    )
    assert corpus.citations["A"] == (("B", 2011),)
    assert corpus.citations["B"] == ()
    assert corpus.summary.links_resolved == 1


def test_duplicate_paper_id():
    with pytest.raises(CorpusError, match="duplicate paper_id P1"):
        ingest_corpus([line("P1", 2010), line("P1", 2011)], 2014)


def test_malformed_line_reports_line_number():
    with pytest.raises(CorpusError, match="line 2"):
        ingest_corpus([line("P1", 2010), "{not json"], 2014)
    with pytest.raises(CorpusError, match="line 1"):
        ingest_corpus(['{"paper_id": "X", "pub_year": "2010", "journal_id": "J", "doc_type": "a"}'], 2014)


def test_pub_year_after_census():
    with pytest.raises(CorpusError, match="census"):
        ingest_corpus([line("P1", 2015)], 2014)


def test_comments_and_blank_lines_skipped():
    corpus = ingest_corpus(["# header", "", line("P1", 2010)], 2014)
    assert list(corpus.papers) == ["P1"]


def test_duplicate_reference_target_rejected():
    refs = [{"target_id": "A", "ref_year": 2010}, {"target_id": "A", "ref_year": 2010}]
    with pytest.raises(CorpusError, match="duplicate reference"):
        ingest_corpus([line("A", 2010), line("B", 2011, refs)], 2014)


def test_ref_year_must_match_target():
    with pytest.raises(CorpusError, match="does not match"):
        ingest_corpus([line("A", 2010), line("B", 2011, [{"target_id": "A", "ref_year": 2009}])], 2014)


def test_dangling_reference_demoted():
    corpus = ingest_corpus(
        [line("A", 2010), line("B", 2011, [{"target_id": "A", "ref_year": 2010}, {"target_id": "ZZ", "ref_year": 2005}])],
        2014,
    )
    assert corpus.summary.links_demoted == 1
    assert corpus["B"].references[1].target_id is None
    assert corpus["B"].references[1].ref_year == 2005
    assert linked_reference_count(corpus, "B") == 1


def test_demotion_does_not_change_other_citation_counts():
    rows = [("A", 2010, []), ("B", 2011, ["A"]), ("C", 2012, ["A", "B"])]
    base = corpus_from(rows, 2014)
    with_dangling = ingest_corpus(
        [p.to_json() for p in base.papers.values()]
        + [line("D", 2013, [{"target_id": "A", "ref_year": 2010}, {"target_id": "GONE", "ref_year": 2001}])],
        2014,
    )
    assert with_dangling.summary.links_demoted == 1
    for pid in ("B", "C"):
        assert with_dangling.citations[pid] == base.citations[pid]
    assert len(with_dangling.citations["A"]) == len(base.citations["A"]) + 1


def test_linked_reference_count_examples():
    rows = [
        ("R7", 2007, []), ("R8", 2008, []), ("R10", 2010, []),
        ("P", 2011, ["R7", "R8", "R10"]),
        ("Q", 2011, ["R7", "R8", "R10", (None, 2009), (None, 2001)]),
        ("E", 2011, []),
    ]
    corpus = corpus_from(rows, 2014)
    assert linked_reference_count(corpus, "E") == 0
    assert linked_reference_count(corpus, "P", YearInterval(2008, 2010)) == 2
    assert linked_reference_count(corpus, "Q") == 3


def test_linked_reference_count_unknown_paper():
    with pytest.raises(KeyError):
        linked_reference_count(corpus_from([], 2014), "nope")


@given(corpora())
@settings(max_examples=60, deadline=None)
def test_linked_references_equal_citation_edges(corpus):
    assert sum(linked_reference_count(corpus, pid) for pid in corpus.papers) == corpus.n_citation_edges


@given(corpora())
@settings(max_examples=60, deadline=None)
def test_citations_are_inverse_of_links(corpus):
    links = {(p.paper_id, r.target_id) for p in corpus.papers.values() for r in p.references if r.linked}
    edges = {(citing, cited) for cited, cs in corpus.citations.items() for citing, _ in cs}
    assert links == edges
    for cited, cs in corpus.citations.items():
        for citing, year in cs:
            assert corpus[citing].pub_year == year


@given(corpora())
@settings(max_examples=60, deadline=None)
def test_round_trip_identity(corpus):
    buf = io.StringIO()
    corpus.dump(buf)
    again = ingest_corpus(buf.getvalue().splitlines(), corpus.census_year)
    assert again == corpus
    assert again.content_hash() == corpus.content_hash()


def test_corpus_is_read_only(example):
    with pytest.raises(TypeError):
        example.papers["X"] = None
    with pytest.raises(AttributeError):
        example.census_year = 2000


def test_restrict_demotes_links_to_dropped_types():
    import csncr.corpus as c

    records = [
        c.PaperRecord("A", 2010, "J", "article", frozenset(), ()),
        c.PaperRecord("R", 2010, "J", "review", frozenset(), ()),
        c.PaperRecord("B", 2011, "J", "article", frozenset(), (c.ReferenceLink("A", 2010), c.ReferenceLink("R", 2010))),
    ]
    sub = c.build_corpus(records, 2014).restrict("article")
    assert set(sub.papers) == {"A", "B"}
    assert linked_reference_count(sub, "B") == 1
