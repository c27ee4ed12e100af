"""Command-line surface: annotate corpora, evaluate results, sweep
parameters, emit figure-ready report data.

Commands work on JSONL corpora (one tagged document per line) and write
JSONL result streams and CSV reports.  Configuration precedence is flags
over config file over built-in defaults, and the effective configuration
is echoed as ``#`` comment lines into every CSV so a report names the run
that produced it.  Every command is deterministic given its inputs.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .corank import (CoRankParams, DomainGraph, assignment_ratio,
                     build_domain_graph, co_rank_document, select,
                     select_forced_ratio)
from .corpus import (DatasetSplit, build_controlled_vocabulary,
                     load_dataset, load_tag_map)
from .evaluation import evaluate, paired_t_test, pr_curve, score_document
from .text import stemmer_for_document
from .topicrank import (RankedKeyphrase, RankingResult, TopicRankParams,
                        extract_topicrank)

log = logging.getLogger(__name__)

METHODS = ("topicrank", "topiccorank", "topiccorank-extr",
           "topiccorank-assign")
CORANK_MODES = {"topiccorank": "full", "topiccorank-extr": "extr",
                "topiccorank-assign": "assign"}
SWEEP_PARAMETERS = ("lambda", "lambda_t", "lambda_k", "ratio")

DEFAULTS = {
    "stemmer": "auto",
    "method": "topiccorank",
    "n": 10,
    "lambda_t": 0.1,
    "lambda_k": 0.5,
    "threshold": 0.25,
    "damping": 0.85,
    "tol": 1e-6,
    "max_iter": 1000,
    "normalize_domain": False,
    "cross_sentence": False,
    "jobs": 1,
    "cutoff": 10,
}

_BOOL_KEYS = {"normalize_domain", "cross_sentence", "no_plot", "micro"}
_INT_KEYS = {"n", "max_iter", "jobs", "cutoff"}
_FLOAT_KEYS = {"lambda", "lambda_t", "lambda_k", "threshold", "damping",
               "tol", "ratio"}


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    train: str | None = None
    dev: str | None = None
    test: str | None = None
    tag_map: str | None = None
    results: str | None = None
    compare: str | None = None
    out: str | None = None
    report_json: str | None = None
    report_csv: str | None = None
    pr_curve_out: str | None = None
    label: str = ""
    stemmer: str = DEFAULTS["stemmer"]
    method: str = DEFAULTS["method"]
    n: int = DEFAULTS["n"]
    lambda_t: float = DEFAULTS["lambda_t"]
    lambda_k: float = DEFAULTS["lambda_k"]
    threshold: float = DEFAULTS["threshold"]
    damping: float = DEFAULTS["damping"]
    tol: float = DEFAULTS["tol"]
    max_iter: int = DEFAULTS["max_iter"]
    normalize_domain: bool = DEFAULTS["normalize_domain"]
    cross_sentence: bool = DEFAULTS["cross_sentence"]
    jobs: int = DEFAULTS["jobs"]
    cutoff: int = DEFAULTS["cutoff"]
    parameter: str | None = None
    grid: tuple[float, ...] = ()
    on: str = "test"
    micro: bool = False
    no_plot: bool = False

    def corank_params(self) -> CoRankParams:
        return CoRankParams(lambda_t=self.lambda_t, lambda_k=self.lambda_k,
                            tol=self.tol, max_iter=self.max_iter)

    def topicrank_params(self) -> TopicRankParams:
        return TopicRankParams(damping=self.damping, tol=self.tol,
                               max_iter=self.max_iter,
                               clustering_threshold=self.threshold,
                               cross_sentence=self.cross_sentence)


def _parse_config_file(path: str) -> dict[str, str]:
    """Flat ``key=value`` text file; blank lines and # comments ignored."""
    values: dict[str, str] = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ConfigError(f"{path}:{lineno}: expected key=value, "
                                  f"got {line!r}")
            key, _, value = line.partition("=")
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _coerce(key: str, raw: str):
    if key in _BOOL_KEYS:
        lowered = raw.lower()
        if lowered in ("1", "true", "yes", "on"):
            return True
        if lowered in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"config key {key!r}: expected a boolean, "
                          f"got {raw!r}")
    try:
        if key in _INT_KEYS:
            return int(raw)
        if key in _FLOAT_KEYS:
            return float(raw)
    except ValueError:
        raise ConfigError(f"config key {key!r}: bad number {raw!r}") from None
    return raw


def _parse_grid(raw: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in raw.split(",") if
                       part.strip() != "")
    except ValueError:
        raise ConfigError(f"bad grid {raw!r}: expected comma-separated "
                          f"numbers") from None
    if not values:
        raise ConfigError("grid must contain at least one value")
    for value in values:
        if not 0.0 <= value <= 1.0:
            raise ConfigError(f"grid values must lie in [0, 1], "
                              f"got {value}")
    return values


def resolve_config(args: argparse.Namespace) -> RunConfig:
    """Merge flags over config file over defaults and validate."""
    file_values: dict[str, str] = {}
    if getattr(args, "config", None):
        file_values = _parse_config_file(args.config)
    if "lambda" in file_values and ("lambda_t" in file_values
                                    or "lambda_k" in file_values):
        raise ConfigError("config file sets both 'lambda' and a split "
                          "mixing factor; pick one form")
    cfg = RunConfig(command=args.command)
    single_lambda = None
    for key, raw in file_values.items():
        if key == "lambda":
            single_lambda = _coerce(key, raw)
            continue
        if key == "grid":
            cfg.grid = _parse_grid(raw)
            continue
        if not hasattr(cfg, key):
            raise ConfigError(f"unknown config key {key!r}")
        setattr(cfg, key, _coerce(key, raw))
    flag_lambda = getattr(args, "lambda_", None)
    explicit_split = any(getattr(args, k, None) is not None
                         for k in ("lambda_t", "lambda_k"))
    if flag_lambda is not None:
        if explicit_split:
            raise ConfigError("--lambda is a shorthand for equal mixing "
                              "factors; do not combine it with --lambda-t "
                              "or --lambda-k")
        single_lambda = flag_lambda
    if single_lambda is not None and not explicit_split:
        cfg.lambda_t = single_lambda
        cfg.lambda_k = single_lambda
    for key in vars(cfg):
        flag = getattr(args, key, None)
        if flag is not None and key not in ("command", "grid"):
            setattr(cfg, key, flag)
    if getattr(args, "grid", None) is not None:
        cfg.grid = _parse_grid(args.grid)
    _validate(cfg, args)
    return cfg


def _validate(cfg: RunConfig, args: argparse.Namespace) -> None:
    if cfg.method not in METHODS:
        raise ConfigError(f"method must be one of {METHODS}, "
                          f"got {cfg.method!r}")
    if cfg.command in ("annotate", "sweep"):
        if cfg.test is None or cfg.tag_map is None:
            raise ConfigError("annotate/sweep need --test and --tag-map")
        needs_train = cfg.command == "sweep" or cfg.method != "topicrank"
        if needs_train and cfg.train is None:
            raise ConfigError("co-ranking needs a --train split to build "
                              "the controlled vocabulary")
        if cfg.method == "topicrank" and any(
                getattr(args, k, None) is not None
                for k in ("lambda_", "lambda_t", "lambda_k")) \
                and cfg.command == "annotate":
            raise ConfigError("lambda parameters only apply to "
                              "co-ranking methods")
    if cfg.command == "annotate" and cfg.out is None:
        raise ConfigError("annotate needs --out")
    if cfg.command in ("evaluate", "pr-curve"):
        if cfg.results is None or cfg.test is None or cfg.tag_map is None:
            raise ConfigError(f"{cfg.command} needs --results, --test "
                              f"and --tag-map")
    if cfg.command == "sweep":
        if cfg.parameter not in SWEEP_PARAMETERS:
            raise ConfigError(f"sweep parameter must be one of "
                              f"{SWEEP_PARAMETERS}, got {cfg.parameter!r}")
        if not cfg.grid:
            raise ConfigError("sweep needs --grid")
        if cfg.out is None:
            raise ConfigError("sweep needs --out")
        if cfg.method == "topicrank":
            raise ConfigError("sweeps only apply to co-ranking methods")
        if cfg.on == "dev" and cfg.dev is None:
            raise ConfigError("--on dev needs --dev")
    if cfg.n < 1:
        raise ConfigError(f"n must be >= 1, got {cfg.n}")
    if cfg.cutoff < 1:
        raise ConfigError(f"cutoff must be >= 1, got {cfg.cutoff}")
    if cfg.jobs < 1:
        raise ConfigError(f"jobs must be >= 1, got {cfg.jobs}")


_ECHO_KEYS = ("method", "stemmer", "n", "lambda_t", "lambda_k",
              "threshold", "damping", "tol", "max_iter",
              "normalize_domain", "cross_sentence", "cutoff")


def _config_header(cfg: RunConfig, extra: dict | None = None) -> str:
    pairs = [("command", cfg.command)]
    pairs += [(key, getattr(cfg, key)) for key in _ECHO_KEYS]
    for key in ("train", "dev", "test", "tag_map", "results"):
        value = getattr(cfg, key)
        if value is not None:
            pairs.append((key, value))
    if extra:
        pairs += sorted(extra.items())
    return "".join(f"# {key}={value}\n" for key, value in pairs)


def _load_splits(cfg: RunConfig):
    tag_map = load_tag_map(cfg.tag_map)
    test = load_dataset(cfg.test, tag_map, name="test")
    train = None
    if cfg.train is not None:
        train = load_dataset(cfg.train, tag_map, name="train")
    dev = None
    if cfg.dev is not None:
        dev = load_dataset(cfg.dev, tag_map, name="dev")
    return train, dev, test


def _build_domain(cfg: RunConfig, train: DatasetSplit) -> DomainGraph:
    if not train.documents:
        raise ConfigError("train split is empty; co-ranking needs "
                          "training keyphrases")
    vocab = build_controlled_vocabulary(
        train, stemmer_for_document(train.documents[0], cfg.stemmer),
        per_document=lambda doc: stemmer_for_document(doc, cfg.stemmer))
    return build_domain_graph(vocab, normalize=cfg.normalize_domain)


@dataclass(frozen=True)
class _Job:
    method: str
    n: int
    stemmer: str
    threshold: float
    cross_sentence: bool
    damping: float
    lambda_t: float
    lambda_k: float
    tol: float
    max_iter: int


def _annotate_one(doc, job: _Job, domain: DomainGraph | None) \
        -> RankingResult:
    stemmer = stemmer_for_document(doc, job.stemmer)
    if job.method == "topicrank":
        params = TopicRankParams(damping=job.damping, tol=job.tol,
                                 max_iter=job.max_iter,
                                 clustering_threshold=job.threshold,
                                 cross_sentence=job.cross_sentence)
        return extract_topicrank(doc, job.n, stemmer, params)
    params = CoRankParams(lambda_t=job.lambda_t, lambda_k=job.lambda_k,
                          tol=job.tol, max_iter=job.max_iter)
    ranking = co_rank_document(doc, domain, params=params, stemmer=stemmer,
                               clustering_threshold=job.threshold,
                               cross_sentence=job.cross_sentence)
    return select(ranking, job.n, mode=CORANK_MODES[job.method])


def _annotate_star(packed):
    doc, job, domain = packed
    return _annotate_one(doc, job, domain)


def cmd_annotate(cfg: RunConfig) -> int:
    train, _, test = _load_splits(cfg)
    domain = None
    if cfg.method != "topicrank":
        domain = _build_domain(cfg, train)
    job = _Job(method=cfg.method, n=cfg.n, stemmer=cfg.stemmer,
               threshold=cfg.threshold, cross_sentence=cfg.cross_sentence,
               damping=cfg.damping, lambda_t=cfg.lambda_t,
               lambda_k=cfg.lambda_k, tol=cfg.tol, max_iter=cfg.max_iter)
    if cfg.jobs > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(
                _annotate_star,
                ((doc, job, domain) for doc in test.documents)))
    else:
        results = [_annotate_one(doc, job, domain)
                   for doc in test.documents]
    with open(cfg.out, "w", encoding="utf-8") as handle:
        for result in results:
            handle.write(json.dumps(result.to_record(),
                                    ensure_ascii=False) + "\n")
    log.info("annotated %d documents with %s -> %s", len(results),
             cfg.method, cfg.out)
    return 0


def read_results(path: str | Path) -> list[RankingResult]:
    """Read an annotate output stream back into ranking results."""
    results = []
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                record = json.loads(line)
                keyphrases = [RankedKeyphrase(text=k["text"],
                                              score=float(k["score"]),
                                              source=k["source"])
                              for k in record["keyphrases"]]
                results.append(RankingResult(document_id=record["id"],
                                             keyphrases=keyphrases))
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise ConfigError(f"{path}:{lineno}: malformed result "
                                  f"line ({exc})") from exc
    return results


def _check_ids(results, docs, what: str) -> None:
    result_ids = [r.document_id for r in results]
    if len(set(result_ids)) != len(result_ids):
        raise ConfigError(f"{what}: duplicate document ids")
    missing = sorted(set(result_ids) - set(docs))
    extra = sorted(set(docs) - set(result_ids))
    if missing or extra:
        raise ConfigError(f"{what}: results and dataset ids differ "
                          f"(unknown: {missing[:5]}, "
                          f"unannotated: {extra[:5]})")


def _maybe_plot_curve(cfg: RunConfig, curve, csv_path: str) -> None:
    if cfg.no_plot:
        return
    from .plotting import render_pr_curve
    png = Path(csv_path).with_suffix(".png")
    render_pr_curve(curve.points, png,
                    label=cfg.label or cfg.method)
    log.info("rendered %s", png)


def cmd_evaluate(cfg: RunConfig) -> int:
    _, _, test = _load_splits(cfg)
    docs = test.by_id()
    results = read_results(cfg.results)
    _check_ids(results, docs, "evaluate")
    per_doc = lambda doc: stemmer_for_document(doc, cfg.stemmer)  # noqa: E731
    label = cfg.label or Path(cfg.results).stem
    report = evaluate(results, docs, cfg.cutoff, None, method=label,
                      micro=cfg.micro, per_document=per_doc)
    ratio = assignment_ratio(results)
    row = (f"{label}\tcutoff={cfg.cutoff}"
           f"\tP={report.macro_precision * 100:.2f}"
           f"\tR={report.macro_recall * 100:.2f}"
           f"\tF={report.macro_f1 * 100:.2f}"
           f"\tassigned={ratio * 100:.1f}%")
    if cfg.micro and report.micro:
        row += (f"\tmicroP={report.micro[0] * 100:.2f}"
                f"\tmicroR={report.micro[1] * 100:.2f}"
                f"\tmicroF={report.micro[2] * 100:.2f}")
    if cfg.compare:
        other = read_results(cfg.compare)
        _check_ids(other, docs, "compare")
        by_id = {r.document_id: r for r in other}
        f_main, f_other = [], []
        for result in results:
            doc = docs[result.document_id]
            stemmer = per_doc(doc)
            f_main.append(score_document(result, doc, cfg.cutoff,
                                         stemmer).f1)
            f_other.append(score_document(by_id[result.document_id], doc,
                                          cfg.cutoff, stemmer).f1)
        ttest = paired_t_test(f_main, f_other)
        row += f"\tt={ttest.t:.4f}\tp={ttest.p:.6g}"
        report.flags["paired_t_test"] = {
            "against": str(cfg.compare), "t": round(ttest.t, 6),
            "p": float(f"{ttest.p:.6g}"),
            "zero_variance": ttest.zero_variance}
    report.flags["assignment_ratio"] = round(ratio, 6)
    print(row)
    if cfg.report_json:
        Path(cfg.report_json).write_text(report.to_json(),
                                         encoding="utf-8")
    if cfg.report_csv:
        Path(cfg.report_csv).write_text(
            _config_header(cfg) + report.to_csv(), encoding="utf-8")
    if cfg.pr_curve_out:
        curve = pr_curve(results, docs, None, per_document=per_doc)
        Path(cfg.pr_curve_out).write_text(
            _config_header(cfg) + curve.to_csv(), encoding="utf-8")
        _maybe_plot_curve(cfg, curve, cfg.pr_curve_out)
    return 0


def cmd_pr_curve(cfg: RunConfig) -> int:
    _, _, test = _load_splits(cfg)
    docs = test.by_id()
    results = read_results(cfg.results)
    _check_ids(results, docs, "pr-curve")
    per_doc = lambda doc: stemmer_for_document(doc, cfg.stemmer)  # noqa: E731
    curve = pr_curve(results, docs, None, per_document=per_doc)
    Path(cfg.out).write_text(_config_header(cfg) + curve.to_csv(),
                             encoding="utf-8")
    _maybe_plot_curve(cfg, curve, cfg.out)
    return 0


def cmd_sweep(cfg: RunConfig) -> int:
    train, dev, test = _load_splits(cfg)
    domain = _build_domain(cfg, train)
    split = dev if cfg.on == "dev" else test
    docs = split.by_id()
    per_doc = lambda doc: stemmer_for_document(doc, cfg.stemmer)  # noqa: E731
    mode = CORANK_MODES[cfg.method]

    rows: list[tuple[float, float]] = []
    if cfg.parameter == "ratio":
        # the mixing factors are fixed, so one converged co-ranking per
        # document serves every grid value; only selection is redone
        rankings = [co_rank_document(doc, domain,
                                     params=cfg.corank_params(),
                                     stemmer=per_doc(doc),
                                     clustering_threshold=cfg.threshold,
                                     cross_sentence=cfg.cross_sentence)
                    for doc in split.documents]
        for value in cfg.grid:
            results = [select_forced_ratio(r, cfg.n, value)
                       for r in rankings]
            report = evaluate(results, docs, cfg.cutoff, None,
                              per_document=per_doc)
            rows.append((value, report.macro_f1))
    else:
        for value in cfg.grid:
            if cfg.parameter == "lambda":
                params = CoRankParams(lambda_t=value, lambda_k=value,
                                      tol=cfg.tol, max_iter=cfg.max_iter)
            elif cfg.parameter == "lambda_t":
                params = CoRankParams(lambda_t=value,
                                      lambda_k=cfg.lambda_k, tol=cfg.tol,
                                      max_iter=cfg.max_iter)
            else:
                params = CoRankParams(lambda_t=cfg.lambda_t,
                                      lambda_k=value, tol=cfg.tol,
                                      max_iter=cfg.max_iter)
            results = [select(co_rank_document(
                doc, domain, params=params, stemmer=per_doc(doc),
                clustering_threshold=cfg.threshold,
                cross_sentence=cfg.cross_sentence), cfg.n, mode=mode)
                for doc in split.documents]
            report = evaluate(results, docs, cfg.cutoff, None,
                              per_document=per_doc)
            rows.append((value, report.macro_f1))

    lines = ["value,macro_f"]
    lines += [f"{value:g},{macro_f:.6f}" for value, macro_f in rows]
    body = "".join(line + "\n" for line in lines)
    extra = {"parameter": cfg.parameter, "on": cfg.on,
             "grid": ",".join(f"{v:g}" for v in cfg.grid)}
    Path(cfg.out).write_text(_config_header(cfg, extra) + body,
                             encoding="utf-8")
    if not cfg.no_plot:
        from .plotting import render_sweep
        png = Path(cfg.out).with_suffix(".png")
        render_sweep([v for v, _ in rows], [f for _, f in rows],
                     cfg.parameter, png)
        log.info("rendered %s", png)
    for value, macro_f in rows:
        print(f"{cfg.parameter}={value:g}\tF={macro_f * 100:.2f}")
    return 0


def _add_common(parser: argparse.ArgumentParser,
                with_pipeline: bool) -> None:
    parser.add_argument("--config", help="flat key=value config file")
    parser.add_argument("--tag-map", dest="tag_map",
                        help="RAW_TAG<TAB>COARSE_TAG mapping file")
    parser.add_argument("--test", help="test split JSONL")
    parser.add_argument("--stemmer",
                        choices=("auto", "identity", "porter", "french"))
    if with_pipeline:
        parser.add_argument("--train", help="train split JSONL "
                            "(controlled vocabulary source)")
        parser.add_argument("--dev", help="development split JSONL")
        parser.add_argument("--method", choices=METHODS)
        parser.add_argument("--n", type=int, help="keyphrases per document")
        parser.add_argument("--lambda", dest="lambda_", type=float,
                            help="shorthand setting both mixing factors")
        parser.add_argument("--lambda-t", dest="lambda_t", type=float)
        parser.add_argument("--lambda-k", dest="lambda_k", type=float)
        parser.add_argument("--threshold", type=float,
                            help="clustering similarity threshold")
        parser.add_argument("--damping", type=float)
        parser.add_argument("--tol", type=float)
        parser.add_argument("--max-iter", dest="max_iter", type=int)
        parser.add_argument("--normalize-domain", dest="normalize_domain",
                            action="store_const", const=True,
                            help="divide co-assignment counts by the "
                                 "training-set size")
        parser.add_argument("--cross-sentence", dest="cross_sentence",
                            action="store_const", const=True,
                            help="let candidate runs span sentence "
                                 "boundaries")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="topickey",
        description="Keyphrase annotation: topic-graph extraction, "
                    "co-ranking assignment and the matching evaluation "
                    "harness.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="chatty logging")
    sub = parser.add_subparsers(dest="command", required=True)

    annotate = sub.add_parser("annotate",
                              help="write top-n keyphrases per document")
    _add_common(annotate, with_pipeline=True)
    annotate.add_argument("--out", help="output JSONL path")
    annotate.add_argument("--jobs", type=int,
                          help="worker processes (output order is input "
                               "order regardless)")

    ev = sub.add_parser("evaluate", help="score results against the "
                                         "reference keyphrases")
    _add_common(ev, with_pipeline=False)
    ev.add_argument("--results", help="annotate output JSONL")
    ev.add_argument("--cutoff", type=int, help="evaluation cutoff")
    ev.add_argument("--label", help="method label for the report row")
    ev.add_argument("--compare", help="second results file for a paired "
                                      "t-test on per-document F")
    ev.add_argument("--micro", action="store_const", const=True,
                    help="also report pooled TP/FP/FN scores")
    ev.add_argument("--report-json", dest="report_json")
    ev.add_argument("--report-csv", dest="report_csv")
    ev.add_argument("--pr-curve", dest="pr_curve_out",
                    help="also write a PR curve CSV here")
    ev.add_argument("--no-plot", dest="no_plot", action="store_const",
                    const=True, help="skip figure rendering")

    curve = sub.add_parser("pr-curve", help="precision/recall per cutoff")
    _add_common(curve, with_pipeline=False)
    curve.add_argument("--results", help="annotate output JSONL")
    curve.add_argument("--out", help="output CSV path")
    curve.add_argument("--no-plot", dest="no_plot", action="store_const",
                       const=True)

    sweep = sub.add_parser("sweep", help="macro F across a parameter grid")
    _add_common(sweep, with_pipeline=True)
    sweep.add_argument("--parameter", choices=SWEEP_PARAMETERS)
    sweep.add_argument("--grid", help="comma-separated values in [0, 1]")
    sweep.add_argument("--out", help="output CSV path")
    sweep.add_argument("--cutoff", type=int)
    sweep.add_argument("--on", choices=("test", "dev"),
                       help="which split to evaluate (default test)")
    sweep.add_argument("--no-plot", dest="no_plot", action="store_const",
                       const=True)
    return parser


_COMMANDS = {
    "annotate": cmd_annotate,
    "evaluate": cmd_evaluate,
    "pr-curve": cmd_pr_curve,
    "sweep": cmd_sweep,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = resolve_config(args)
        return _COMMANDS[cfg.command](cfg)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
