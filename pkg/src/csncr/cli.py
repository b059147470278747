"""Command-line entry point: ``csncr <command> [options]``.

Exit codes: 0 success, 1 input error, 2 config error, 3 internal invariant
failure, 4 incomplete citation window.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import logging
import os
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from csncr import __version__
from csncr.classification import (
    EvaluationScheme,
    build_overlapping_scheme,
    dump_evaluation_scheme,
    load_evaluation_scheme,
)
from csncr.corpus import Corpus, CorpusError, ingest_corpus
from csncr.descriptives import SUMMARY_COLUMNS, reference_count_summary, reference_trend, reference_year_summary
from csncr.fairness import ROUNDING_RULES, TIE_RULES, fairness_from_tables
from csncr.indicators import INDICATORS, IndicatorOptions, UnknownIndicatorError, check_indicators, compute_indicator
from csncr.potential import citation_potentials, potentials_for, read_baselines, write_baselines
from csncr.scores import InvariantError, ScoreTable
from csncr.synthgen import GeneratorConfig, generate
from csncr.windows import IncompleteWindowError, WindowSpec, YearInterval

log = logging.getLogger("csncr")

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONFIG = 2
EXIT_INVARIANT = 3
EXIT_WINDOW = 4

OUTPUT_DIR_ENV = "CSNCR_OUTPUT_DIR"


class ConfigError(ValueError):
    pass


class InputError(ValueError):
    pass


INPUT_FILES = ("corpus", "evaluation", "baselines", "generator_config")


@dataclass
class RunConfig:
    command: str
    corpus: Optional[str] = None
    census_year: Optional[int] = None
    doc_type: Optional[str] = "article"
    citing_doc_type_only: bool = False
    windows: dict = field(default_factory=dict)
    min_size: int = 10
    indicators: list = field(default_factory=lambda: list(INDICATORS))
    years: list = field(default_factory=list)
    evaluation: Optional[str] = None
    output_dir: str = "out"
    output_format: str = "delimited"
    zero_refs: str = "zero"
    share: float = 0.10
    ties: str = "include"
    rounding: str = "half_even"
    include_unscored: bool = False
    baselines: Optional[str] = None
    group_by: str = "evaluation"
    trend_range: Optional[str] = None
    trend_window: int = 3
    linked_only: bool = False
    generator_config: Optional[str] = None
    digits: int = 2

    def digest(self) -> str:
        """Hash of the settings; input files enter the header by content hash, not path."""
        d = asdict(self)
        for key in ("output_dir", *INPUT_FILES):
            d.pop(key)
        return hashlib.sha256(json.dumps(d, sort_keys=True).encode()).hexdigest()

    def indicator_options(self) -> IndicatorOptions:
        return IndicatorOptions(
            doc_type=self.doc_type,
            min_size=self.min_size,
            zero_refs=self.zero_refs,
            windows={k: WindowSpec.parse(v) for k, v in self.windows.items()},
        )


def parse_years(text: str) -> list[int]:
    """``"2007-2011"``, ``"2007,2009"`` or a mix of both."""
    years: set[int] = set()
    try:
        for part in text.split(","):
            part = part.strip()
            if not part:
                continue
            if "-" in part:
                a, b = part.split("-", 1)
                years.update(range(int(a), int(b) + 1))
            else:
                years.add(int(part))
    except ValueError:
        raise ConfigError(f"invalid year list {text!r}") from None
    if not years:
        raise ConfigError(f"empty year list {text!r}")
    return sorted(years)


def _file_hash(path: str) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


class Run:
    def __init__(self, config: RunConfig) -> None:
        self.config = config
        self.out = Path(os.environ.get(OUTPUT_DIR_ENV) or config.output_dir)
        self._corpus: Optional[Corpus] = None

    # -- inputs -------------------------------------------------------
    def _require(self, attr: str, flag: str):
        value = getattr(self.config, attr)
        if value is None:
            raise ConfigError(f"{self.config.command} needs {flag}")
        return value

    def _open(self, path: str):
        try:
            return open(path, encoding="utf-8")
        except FileNotFoundError:
            raise InputError(f"file not found: {path}") from None

    @property
    def corpus(self) -> Corpus:
        if self._corpus is None:
            path = self._require("corpus", "--corpus")
            census = self._require("census_year", "--census-year")
            with self._open(path) as fh:
                corpus = ingest_corpus(fh, census)
            if self.config.citing_doc_type_only and self.config.doc_type:
                corpus = corpus.restrict(self.config.doc_type)
            self._corpus = corpus
        return self._corpus

    def evaluation(self) -> EvaluationScheme:
        path = self._require("evaluation", "--evaluation")
        with self._open(path) as fh:
            return load_evaluation_scheme(fh, self.corpus)

    def header(self) -> dict:
        h = {"tool": f"csncr {__version__}", "command": self.config.command, "config_sha256": self.config.digest()}
        for key in INPUT_FILES:
            path = getattr(self.config, key)
            if path:
                h[f"{key}_sha256"] = _file_hash(path)
        return h

    # -- outputs ------------------------------------------------------
    def _write(self, name: str, text: str) -> Path:
        self.out.mkdir(parents=True, exist_ok=True)
        path = self.out / name
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        log.info("wrote %s", path)
        return path

    def write_table(self, name: str, rows: Sequence[Sequence[str]]) -> Path:
        lines = [f"# {k}: {v}" for k, v in self.header().items()]
        lines += ["\t".join(str(c) for c in row) for row in rows]
        return self._write(name + ".tsv", "\n".join(lines) + "\n")

    def write_json(self, name: str, payload: dict) -> Path:
        doc = {"header": self.header(), **payload}
        return self._write(name + ".json", json.dumps(doc, indent=2, sort_keys=False) + "\n")

    @property
    def structured(self) -> bool:
        return self.config.output_format == "structured"

    # -- commands -----------------------------------------------------
    def validate(self) -> None:
        summary = self.corpus.summary.as_dict()
        print(
            f"{summary['papers_read']} papers read, {summary['links_resolved']} links resolved, "
            f"{summary['links_demoted']} link{'s' if summary['links_demoted'] != 1 else ''} demoted"
        )
        if self.structured:
            self.write_json("validate", {"summary": summary})
        else:
            self.write_table("validate", [["key", "value"], *[[k, str(v)] for k, v in summary.items()]])

    def _grouping(self) -> dict[str, str]:
        by = self.config.group_by
        if by == "evaluation":
            return dict(self.evaluation().assignment)
        if by == "categories":
            return {pid: "|".join(sorted(p.categories)) for pid, p in self.corpus.papers.items() if p.categories}
        if by == "journal":
            return {pid: p.journal_id for pid, p in self.corpus.papers.items()}
        raise ConfigError(f"unknown grouping {by!r}")

    def describe(self) -> None:
        grouping = self._grouping()
        years = self.config.years or self.corpus.years()
        count_rows, year_rows = [["pub_year", *SUMMARY_COLUMNS]], [["pub_year", *SUMMARY_COLUMNS]]
        payload: dict = {"reference_counts": [], "reference_years": []}
        for y in years:
            for s in reference_count_summary(self.corpus, grouping, y):
                count_rows.append([str(y), *s.as_row()])
                payload["reference_counts"].append({"pub_year": y, **asdict(s)})
            for s in reference_year_summary(self.corpus, grouping, y, linked_only=self.config.linked_only):
                year_rows.append([str(y), *s.as_row()])
                payload["reference_years"].append({"pub_year": y, **asdict(s)})
        trend_rows = [["group", "pub_year", "mean_linked_refs"]]
        if self.config.trend_range:
            span = parse_years(self.config.trend_range)
            trend = reference_trend(self.corpus, grouping, YearInterval(span[0], span[-1]), self.config.trend_window)
            payload["reference_trend"] = {g: {str(y): v for y, v in s.items()} for g, s in trend.items()}
            for g, series in trend.items():
                for y, v in series.items():
                    trend_rows.append([g, str(y), "" if v is None else repr(v)])
        if self.structured:
            self.write_json("describe", payload)
        else:
            self.write_table("reference_counts", count_rows)
            self.write_table("reference_years", year_rows)
            if self.config.trend_range:
                self.write_table("reference_trend", trend_rows)

    def _years(self) -> list[int]:
        if not self.config.years:
            raise ConfigError(f"{self.config.command} needs --years")
        return self.config.years

    def _tables(self) -> list[ScoreTable]:
        names = check_indicators(self.config.indicators)
        options = self.config.indicator_options()
        baselines = None
        if self.config.baselines:
            with self._open(self.config.baselines) as fh:
                baselines = read_baselines(fh)
        tables = []
        for year in self._years():
            for name in names:
                pots = None
                if name == "csncr" and baselines is not None:
                    pots = potentials_for(baselines, year, options.window_for(name))
                tables.append(compute_indicator(name, self.corpus, year, options, pots))
        return tables

    def compute(self) -> None:
        tables = self._tables()
        if self.structured:
            self.write_json("scores", {"tables": [t.as_dict() for t in tables]})
            return
        for t in tables:
            rows = [["paper_id", "indicator", "value"]]
            rows += [[pid, t.indicator, repr(v)] for pid, v in t.rows()]
            self.write_table(f"scores_{t.indicator}_{t.pub_year}", rows)
            if t.unscored:
                un = [["paper_id", "indicator", "reason"]]
                un += [[pid, t.indicator, reason] for pid, reason in sorted(t.unscored.items())]
                self.write_table(f"unscored_{t.indicator}_{t.pub_year}", un)

    def fairness(self) -> None:
        c = self.config
        evaluation = self.evaluation()
        report = fairness_from_tables(self._tables(), evaluation, c.share, c.ties, c.rounding, c.include_unscored)
        if self.structured:
            self.write_json("fairness", report.as_dict())
        else:
            self.write_table("fairness_by_year", report.by_year_rows(c.digits))
            self.write_table("fairness_summary", report.summary_rows(c.digits))
        for name in report.ranking:
            print(f"{name}\t{report.cross_year_mad[name]:.{c.digits}f}")

    def generate(self) -> None:
        path = self._require("generator_config", "--generator-config")
        with self._open(path) as fh:
            try:
                gen = GeneratorConfig.from_json(fh.read())
            except (TypeError, KeyError, ValueError) as exc:
                raise ConfigError(f"invalid generator config {path}: {exc}") from None
        corpus, evaluation = generate(gen)
        self._write("corpus.jsonl", "".join(line + "\n" for line in corpus.iter_lines()))
        self._write("evaluation.tsv", "".join(line + "\n" for line in dump_evaluation_scheme(evaluation)))
        print(f"generated {len(corpus)} papers, {corpus.n_citation_edges} citation edges, census year {gen.census}")

    def baselines(self) -> None:
        spec = self.config.indicator_options().window_for("csncr")
        pots = []
        for year in self._years():
            scheme = build_overlapping_scheme(self.corpus, year, self.config.min_size, self.config.doc_type)
            pots.extend(citation_potentials(self.corpus, scheme, spec, year).values())
        if self.structured:
            self.write_json("baselines", {"baselines": [{**asdict(p), "window": str(p.window)} for p in pots]})
            return
        buf = io.StringIO()
        write_baselines(pots, buf, [f"{k}: {v}" for k, v in self.header().items()])
        self._write("baselines.tsv", buf.getvalue())

    def dispatch(self) -> None:
        getattr(self, self.config.command)()


COMMANDS = ("validate", "describe", "compute", "fairness", "generate", "baselines")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="csncr", description="Field-normalized citation indicators.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--corpus", help="corpus file (JSON lines)")
    p.add_argument("--census-year", type=int, help="last complete citation year")
    p.add_argument("--doc-type", default="article", help="analyzed document type; 'any' disables the filter")
    p.add_argument(
        "--citing-doc-type-only",
        action="store_true",
        help="drop papers of other document types before building the citation graph",
    )
    p.add_argument("--window", action="append", default=[], metavar="INDICATOR=SPEC",
                   help="window per indicator, e.g. csncr=fixed3 or ncs=full (repeatable)")
    p.add_argument("--min-size", type=int, default=10, help="minimum papers per category combination")
    p.add_argument("--indicators", default=",".join(INDICATORS), help="comma-separated indicator names")
    p.add_argument("--years", help="publication years, e.g. 2007-2011")
    p.add_argument("--evaluation", help="evaluation scheme file (paper_id<TAB>category)")
    p.add_argument("--output-dir", default="out", help=f"output directory (overridden by ${OUTPUT_DIR_ENV})")
    p.add_argument("--format", dest="output_format", choices=("delimited", "structured"), default="delimited")
    p.add_argument("--zero-refs", choices=("zero", "unit"), default="zero",
                   help="weight of citations from papers without in-window linked references (SNCS2/3)")
    p.add_argument("--share", type=float, default=0.10, help="top share marked in the fairness test")
    p.add_argument("--ties", choices=TIE_RULES, default="include")
    p.add_argument("--rounding", choices=ROUNDING_RULES, default="half_even")
    p.add_argument("--include-unscored", action="store_true")
    p.add_argument("--baselines", help="reuse citation potentials from a baseline file")
    p.add_argument("--group-by", choices=("evaluation", "categories", "journal"), default="evaluation")
    p.add_argument("--trend-range", help="years for the reference trend, e.g. 1985-2014")
    p.add_argument("--trend-window", type=int, default=3)
    p.add_argument("--linked-only", action="store_true", help="reference-year summary over linked references only")
    p.add_argument("--generator-config", help="synthetic generator config (JSON)")
    p.add_argument("--digits", type=int, default=2, help="rounding in human-facing tables")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    windows = {}
    for item in args.window:
        name, sep, spec = item.partition("=")
        if not sep:
            raise ConfigError(f"--window expects INDICATOR=SPEC, got {item!r}")
        check_indicators([name])
        try:
            WindowSpec.parse(spec)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        windows[name] = spec
    if args.min_size < 1:
        raise ConfigError("--min-size must be >= 1")
    if not 0 < args.share <= 1:
        raise ConfigError("--share must be in (0, 1]")
    return RunConfig(
        command=args.command,
        corpus=args.corpus,
        census_year=args.census_year,
        doc_type=None if args.doc_type == "any" else args.doc_type,
        citing_doc_type_only=args.citing_doc_type_only,
        windows=dict(sorted(windows.items())),
        min_size=args.min_size,
        indicators=check_indicators([s.strip() for s in args.indicators.split(",") if s.strip()]),
        years=parse_years(args.years) if args.years else [],
        evaluation=args.evaluation,
        output_dir=args.output_dir,
        output_format=args.output_format,
        zero_refs=args.zero_refs,
        share=args.share,
        ties=args.ties,
        rounding=args.rounding,
        include_unscored=args.include_unscored,
        baselines=args.baselines,
        group_by=args.group_by,
        trend_range=args.trend_range,
        trend_window=args.trend_window,
        linked_only=args.linked_only,
        generator_config=args.generator_config,
        digits=args.digits,
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = config_from_args(args)
        Run(config).dispatch()
    except IncompleteWindowError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_WINDOW
    except (ConfigError, UnknownIndicatorError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InputError, CorpusError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except ValueError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
