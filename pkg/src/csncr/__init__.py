"""Field-normalized citation indicators, including citation scores normalized by cited references."""

from csncr.classification import (
    EvaluationScheme,
    FieldScheme,
    build_base_scheme,
    build_journal_scheme,
    build_overlapping_scheme,
    load_evaluation_scheme,
)
from csncr.corpus import Corpus, CorpusError, PaperRecord, ReferenceLink, ingest_corpus, linked_reference_count
from csncr.fairness import FairnessReport, fairness_suite, mark_top_decile, mean_absolute_deviation
from csncr.indicators import INDICATORS, IndicatorOptions, compute_indicator
from csncr.potential import CitationPotential, aggregate_scores, citation_potentials, csncr_scores
from csncr.scores import ScoreTable
from csncr.windows import WindowSpec, YearInterval, citation_interval, reference_interval, windowed_citation_count

__version__ = "0.1.0"
