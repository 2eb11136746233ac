# sajatiya/main.py
"""
Command-line entry point.

    python main.py evaluate --dataset pairs.tsv --features XL:MUSE+WLS \
        --emb-src hi.vec --emb-tgt mr.vec --context-src hi.tsv --context-tgt mr.tsv

Logs go to stderr; data goes to stdout or --out.
"""

import functools
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import click

from config import Config, RunConfig, load_run_config
from core import augment as augment_ops
from core.classifier import FFNNConfig, default_grid, grid_search, load_model, predict_batch, save_model
from core.context import (
    COGNATE,
    PairRow,
    WordPair,
    build_context,
    coverage,
    empty_context,
    load_context,
    load_dataset,
    read_pair_rows,
    save_context,
    summarize,
    write_dataset,
)
from core.embeddings import angular_similarity_scored, load_embeddings, lookup
from core.evaluation import (
    ExperimentReport,
    file_digest,
    render_table,
    run_ablation,
    run_experiment,
)
from core.exceptions import ConfigurationError, ResourceLoadError, SajatiyaError
from core.features import (
    DEFAULT_EXPERIMENT_MATRIX,
    FeatureResources,
    FeatureSetSpec,
    assemble_dataset,
    export_csv,
    to_matrix,
)
from core.phonology import load_phonetic_table, phonetic_features, word_phonetic_vector
from core.script import (
    PIVOT_LANGUAGE,
    SCRIPT_BLOCKS,
    convert_script,
    resolve_script,
    standardize,
    transliterate_lines,
)
from core.strsim import score_pairs
from core.synthetic import build_fixture

logger = logging.getLogger("sajatiya")

SCRIPT_CHOICES = [name.lower() for name in SCRIPT_BLOCKS]


def setup_logging(level: str = Config.LOG_LEVEL, log_file: Optional[str] = Config.LOG_FILE) -> None:
    """Root logger to stderr, plus a file handler when a log file is configured"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding="utf-8"))
    logging.basicConfig(level=level.upper(), format=Config.LOG_FORMAT, handlers=handlers, force=True)


class ToolkitError(click.ClickException):
    """One machine-parsable stderr line, exit code 1"""
    exit_code = 1

    def __init__(self, error: SajatiyaError):
        super().__init__(str(error))
        self.error_name = type(error).__name__

    def show(self, file=None) -> None:
        click.echo(f"error: {self.error_name}: {self.message}", err=True)


def handles_errors(func: Callable) -> Callable:
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except SajatiyaError as e:
            logger.debug("command failed", exc_info=True)
            raise ToolkitError(e) from e
    return wrapper


def _run_config(ctx: click.Context, subcommand: str, **overrides: Any) -> RunConfig:
    base: RunConfig = ctx.obj["base"]
    return base.merged({"subcommand": subcommand, "threads": ctx.obj["threads"], **overrides})


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as f:
            f.write(text if text.endswith("\n") else text + "\n")
        logger.info(f"💾 Wrote {out}")
    else:
        click.echo(text.rstrip("\n"))


def _split_list(value: Optional[str], cast=str) -> Optional[List]:
    if value is None:
        return None
    return [cast(item.strip()) for item in value.split(",") if item.strip()]


def _parse_xl_sources(values: Sequence[str]) -> Optional[Dict[str, List[str]]]:
    """`TAG=SRC,TGT` entries"""
    if not values:
        return None
    sources = {}
    for value in values:
        tag, sep, files = value.partition("=")
        paths = files.split(",")
        if not sep or not tag or len(paths) != 2:
            raise click.BadParameter(f"expected TAG=SRC_FILE,TGT_FILE, got {value!r}", param_hint="--xl")
        sources[tag.strip()] = [p.strip() for p in paths]
    return sources


def _load_context_file(path: Optional[str], stopwords: Optional[str], language: str):
    if not path:
        return empty_context(language)
    if path.endswith(".json"):
        return load_context(path)
    return build_context(path, stopwords, language=language)


def build_resources(rc: RunConfig, feature_sets: Sequence[str], language_pair: str = "") -> tuple:
    """Load only what the requested feature sets need; returns (resources, digests)"""
    specs = [FeatureSetSpec.parse(name) for name in feature_sets]
    src_lang, _, tgt_lang = language_pair.partition("-")
    digests: Dict[str, str] = {}

    def track(path: Optional[str]) -> None:
        if path:
            digests[path] = file_digest(path)

    stopwords_src = rc.stopwords_src
    default_stopwords = Path(Config.STOPWORDS_HI)
    if rc.context_src and not stopwords_src and src_lang == PIVOT_LANGUAGE and default_stopwords.exists():
        stopwords_src = str(default_stopwords)

    context_src = _load_context_file(rc.context_src, stopwords_src, src_lang)
    context_tgt = _load_context_file(rc.context_tgt, rc.stopwords_tgt, tgt_lang)
    for path in (rc.context_src, rc.context_tgt, stopwords_src, rc.stopwords_tgt):
        track(path)

    phonetic_table = None
    if any(spec.uses_phonetics for spec in specs):
        phonetic_table = load_phonetic_table(rc.phonetic_table)
        track(rc.phonetic_table)

    sources = dict(rc.xl_sources)
    if rc.emb_src and rc.emb_tgt:
        sources.setdefault(rc.emb_tag, [rc.emb_src, rc.emb_tgt])
    embeddings = {}
    for tag in sorted({tag for spec in specs for tag in spec.xl_tags}):
        if tag not in sources:
            raise ConfigurationError(
                f"no embeddings for XL:{tag}; pass --emb-src/--emb-tgt with --emb-tag {tag} or --xl {tag}=SRC,TGT"
            )
        src_path, tgt_path = sources[tag]
        embeddings[tag] = (
            load_embeddings(src_path, src_lang, source_tag=tag),
            load_embeddings(tgt_path, tgt_lang, source_tag=tag),
        )
        track(src_path)
        track(tgt_path)

    resources = FeatureResources(
        context_src=context_src,
        context_tgt=context_tgt,
        phonetic_table=phonetic_table,
        embeddings=embeddings,
        q_len=rc.q_len,
        context_cap=rc.context_cap,
        skip_oov_context=rc.skip_oov_context,
    )
    return resources, digests


def build_grid(rc: RunConfig) -> List[FFNNConfig]:
    try:
        base = FFNNConfig(
            initial_lr=rc.initial_lr,
            lr_floor=rc.lr_floor,
            batch_size=rc.batch_size,
            seed=rc.seed,
            max_epochs=rc.max_epochs,
        )
        kwargs = {"classifier": rc.classifier}
        if rc.hidden_dims:
            kwargs["hidden_dims"] = rc.hidden_dims
        if rc.activations:
            kwargs["activations"] = rc.activations
        return default_grid(base, **kwargs)
    except ValueError as e:
        raise ConfigurationError(f"invalid classifier settings: {e}") from e


def _require(value: Any, flag: str) -> None:
    if not value:
        raise click.UsageError(f"Missing option '{flag}'.")


def _progress(ctx: click.Context) -> bool:
    return not ctx.obj["quiet"] and sys.stderr.isatty()


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(dir_okay=False), help="RunConfig JSON/YAML or a saved report.")
@click.option("--threads", type=click.IntRange(min=1), default=None, help="Worker threads (default: all cores).")
@click.option("-v", "--verbose", is_flag=True, help="Debug logging.")
@click.option("-q", "--quiet", is_flag=True, help="Warnings only, no progress bars.")
@click.pass_context
def cli(ctx: click.Context, config_path, threads, verbose, quiet):
    """Cognate detection between Hindi and other Indian languages."""
    level = "DEBUG" if verbose else "WARNING" if quiet else Config.LOG_LEVEL
    setup_logging(level)
    ctx.ensure_object(dict)
    try:
        base = load_run_config(config_path)
    except SajatiyaError as e:
        raise ToolkitError(e) from e
    ctx.obj["base"] = base
    ctx.obj["threads"] = threads
    ctx.obj["quiet"] = quiet


def _read_lines(path: str) -> List[str]:
    """Lines of a file, or of stdin for `-`"""
    if path != "-" and not Path(path).exists():
        raise ResourceLoadError(path, "input file not found")
    with click.open_file(path, "r", encoding="utf-8") as f:
        return [raw.rstrip("\n").rstrip("\r") for raw in f]


def _pair_rows(path: str, pair: Optional[Tuple[str, str]]) -> List[PairRow]:
    if pair:
        return read_pair_rows(["\t".join(pair)], source="--pair")
    return read_pair_rows(_read_lines(path), source="<stdin>" if path == "-" else path)


@cli.command()
@click.argument("input_arg", metavar="[FILE]", type=click.Path(dir_okay=False, allow_dash=True), required=False)
@click.option("--in", "input_opt", type=click.Path(dir_okay=False, allow_dash=True), default=None,
              help="Input file (default: stdin).")
@click.option("--to", "target", type=click.Choice(SCRIPT_CHOICES, case_sensitive=False), default="devanagari",
              show_default=True, help="Script to write; input lines may mix any supported scripts.")
@click.option("--out", type=click.Path(dir_okay=False))
@handles_errors
def translit(input_arg, input_opt, target, out):
    """Rewrite Brahmic-script text into one script, one line at a time."""
    if input_arg and input_opt:
        raise click.UsageError("give the input as FILE or --in, not both")
    lines = _read_lines(input_opt or input_arg or "-")
    script = resolve_script(target)
    if script == "Devanagari":
        lines = list(transliterate_lines(lines))
    else:
        lines = [convert_script(line, script) for line in lines]
    _emit("\n".join(lines), out)


@cli.command()
@click.argument("pairs_file", metavar="[PAIRS]", default="-")
@click.option("--pair", nargs=2, default=None, metavar="WORD_S WORD_T", help="Score one pair instead of a file.")
@click.option("--metric", type=click.Choice(["ned", "qgram", "wls", "all"], case_sensitive=False), default="all")
@click.option("--q", "--q-len", "q_len", type=click.IntRange(min=1), default=None, help="q-gram length.")
@click.option("--out", type=click.Path(dir_okay=False))
@click.pass_context
@handles_errors
def score(ctx, pairs_file, pair, metric, q_len, out):
    """
    NED, q-gram and WLS similarity of word pairs.

    PAIRS holds `word_s TAB word_t` rows (or the dataset layout); each row
    is echoed with one score column appended per metric.
    """
    rc = _run_config(ctx, "score", q_len=q_len)
    rows = _pair_rows(pairs_file, pair)
    metrics = ["ned", "qgram", "wls"] if metric == "all" else [metric]
    words = [(row.word_s, row.word_t) for row in rows]
    columns = [score_pairs(words, m, rc.q_len) for m in metrics]
    lines = [
        "\t".join(list(row.fields) + [f"{v:.6f}" for v in values])
        for row, values in zip(rows, zip(*columns))
    ]
    logger.info(f"📏 Scored {len(rows)} pairs ({', '.join(metrics)}, q={rc.q_len})")
    _emit("\n".join(lines), out)


@cli.command()
@click.argument("words_file", metavar="[WORDS]", default="-")
@click.option("--pair", nargs=2, default=None, metavar="WORD_S WORD_T",
              help="Phonetic similarity of one pair instead of vectors.")
@click.option("--table", "--phonetic-table", "phonetic_table", type=click.Path(dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False))
@click.pass_context
@handles_errors
def phonvec(ctx, words_file, pair, phonetic_table, out):
    """Phonetic feature vectors, one `word TAB v1 ... vF` line per input word."""
    rc = _run_config(ctx, "phonvec", phonetic_table=phonetic_table)
    table = load_phonetic_table(rc.phonetic_table)
    if pair:
        word_s, word_t = standardize(pair[0]), standardize(pair[1])
        features = phonetic_features(word_s, word_t, [], [], table)
        click.echo(json.dumps(
            {"word_s": word_s, "word_t": word_t, "similarity": features.score1, "oov": features.flags},
            ensure_ascii=False,
        ))
        return

    lines = []
    for word in (line.strip() for line in _read_lines(words_file)):
        if not word:
            continue
        vector = word_phonetic_vector(standardize(word), table)
        lines.append(word + "\t" + " ".join(f"{x:.6f}" for x in vector))
    _emit("\n".join(lines), out)


@cli.command("emb-sim")
@click.argument("pairs_file", metavar="[PAIRS]", default="-")
@click.option("--pair", nargs=2, default=None, metavar="WORD_S WORD_T",
              help="Report one pair as JSON instead of scoring a file.")
@click.option("--src", "--emb-src", "emb_src", type=click.Path(dir_okay=False), default=None)
@click.option("--tgt", "--emb-tgt", "emb_tgt", type=click.Path(dir_okay=False), default=None)
@click.option("--out", type=click.Path(dir_okay=False))
@click.pass_context
@handles_errors
def emb_sim(ctx, pairs_file, pair, emb_src, emb_tgt, out):
    """
    Angular similarity of word pairs in aligned embedding spaces.

    Each PAIRS row is echoed with the similarity appended; OOV words score 0.
    """
    rc = _run_config(ctx, "emb-sim", emb_src=emb_src, emb_tgt=emb_tgt)
    _require(rc.emb_src, "--src")
    _require(rc.emb_tgt, "--tgt")
    src = load_embeddings(rc.emb_src)
    tgt = load_embeddings(rc.emb_tgt)
    if src.dimension != tgt.dimension:
        raise ConfigurationError(f"embedding dimensions differ: {src.dimension} vs {tgt.dimension}")

    rows = _pair_rows(pairs_file, pair)
    results = []
    for row in rows:
        u, v = lookup(src, row.word_s), lookup(tgt, row.word_t)
        results.append((row, u.oov, v.oov, angular_similarity_scored(u.vector, v.vector)))

    if pair:
        row, oov_s, oov_t, similarity = results[0]
        click.echo(json.dumps(
            {
                "word_s": row.word_s,
                "word_t": row.word_t,
                "similarity": similarity.value,
                "oov_s": oov_s,
                "oov_t": oov_t,
                "degenerate": similarity.degenerate,
            },
            ensure_ascii=False,
        ))
        return

    missing = sum(1 for _, oov_s, oov_t, _ in results if oov_s or oov_t)
    if missing:
        logger.warning(f"⚠️ {missing}/{len(results)} pairs have an out-of-vocabulary word")
    _emit("\n".join("\t".join(list(row.fields) + [f"{sim.value:.6f}"]) for row, _, _, sim in results), out)


@cli.group()
def context():
    """Context dictionaries from wordnet gloss/example exports."""


@context.command("build")
@click.argument("wordnet_export", type=click.Path(dir_okay=False))
@click.option("--stopwords", type=click.Path(dir_okay=False), default=None)
@click.option("--language", default="")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@handles_errors
def context_build(wordnet_export, stopwords, language, out):
    """Write a context dictionary as JSON."""
    save_context(build_context(wordnet_export, stopwords, language=language), out)


@context.command("stats")
@click.argument("wordnet_export", type=click.Path(dir_okay=False))
@click.option("--dataset", type=click.Path(dir_okay=False), default=None)
@click.option("--side", type=click.Choice(["s", "t"]), default="s", help="Dataset side the export belongs to.")
@click.option("--stopwords", type=click.Path(dir_okay=False), default=None)
@handles_errors
def context_stats(wordnet_export, dataset, side, stopwords):
    """Coverage of a context dictionary over a dataset's words."""
    dictionary = _load_context_file(wordnet_export, stopwords, "")
    result: Dict[str, Any] = {"entries": len(dictionary), "skipped_records": dictionary.skipped_records}
    if dataset:
        pairs = load_dataset(dataset)
        words = [p.word_s if side == "s" else p.word_t for p in pairs]
        stats = coverage(dictionary, words)
        result.update(
            words=stats.words,
            with_context=stats.with_context,
            missing=stats.missing,
            empty=stats.empty,
            coverage=stats.coverage,
            mean_tokens=stats.mean_tokens,
        )
        summary = summarize(pairs)
        result["language_pairs"] = summary.language_pairs
        result["matches_published"] = summary.matches_published()
    click.echo(json.dumps(result, ensure_ascii=False, indent=2))


def experiment_options(func: Callable) -> Callable:
    """Options shared by evaluate, ablate and predict"""
    options = [
        click.option("--dataset", type=click.Path(dir_okay=False), default=None, help="Labelled pairs TSV."),
        click.option("--features", default=None, help="Comma-separated feature sets, e.g. WLS,XL:MUSE+WLS."),
        click.option("--emb-src", type=click.Path(dir_okay=False), default=None),
        click.option("--emb-tgt", type=click.Path(dir_okay=False), default=None),
        click.option("--emb-tag", default=None, help="Tag of --emb-src/--emb-tgt (default MUSE)."),
        click.option("--xl", "xl", multiple=True, help="Extra embeddings: TAG=SRC_FILE,TGT_FILE."),
        click.option("--context-src", type=click.Path(dir_okay=False), default=None),
        click.option("--context-tgt", type=click.Path(dir_okay=False), default=None),
        click.option("--stopwords-src", type=click.Path(dir_okay=False), default=None),
        click.option("--stopwords-tgt", type=click.Path(dir_okay=False), default=None),
        click.option("--phonetic-table", type=click.Path(dir_okay=False), default=None),
        click.option("--skip-oov-context", is_flag=True, default=None),
        click.option("--classifier", type=click.Choice(["ffnn", "logreg"]), default=None),
        click.option("--hidden-dims", default=None, help="Comma-separated widths (default 30,50,100,150)."),
        click.option("--activations", default=None, help="Comma-separated (default tanh,hardtanh,sigmoid,relu)."),
        click.option("--max-epochs", type=click.IntRange(min=1), default=None),
        click.option("--seed", type=int, default=None),
        click.option("--out", type=click.Path(dir_okay=False), default=None),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _experiment_config(ctx, subcommand: str, **kw) -> RunConfig:
    return _run_config(
        ctx,
        subcommand,
        dataset=kw.get("dataset"),
        feature_sets=_split_list(kw.get("features")),
        emb_src=kw.get("emb_src"),
        emb_tgt=kw.get("emb_tgt"),
        emb_tag=kw.get("emb_tag"),
        xl_sources=_parse_xl_sources(kw.get("xl") or ()),
        context_src=kw.get("context_src"),
        context_tgt=kw.get("context_tgt"),
        stopwords_src=kw.get("stopwords_src"),
        stopwords_tgt=kw.get("stopwords_tgt"),
        phonetic_table=kw.get("phonetic_table"),
        skip_oov_context=kw.get("skip_oov_context"),
        classifier=kw.get("classifier"),
        hidden_dims=_split_list(kw.get("hidden_dims"), int),
        activations=_split_list(kw.get("activations")),
        max_epochs=kw.get("max_epochs"),
        seed=kw.get("seed"),
        k=kw.get("k"),
        out=kw.get("out"),
        format=kw.get("fmt"),
        candidates=kw.get("candidates"),
        model_path=kw.get("model_path"),
    )


def _report_output(rc: RunConfig, reports: Sequence[ExperimentReport]) -> str:
    if rc.format == "json":
        payload = {"run_config": rc.model_dump(), "reports": [r.model_dump() for r in reports]}
        return json.dumps(payload, indent=2, ensure_ascii=False)
    return render_table(reports, rc.format)


def _load_experiment(ctx, rc: RunConfig):
    pairs = load_dataset(rc.dataset)
    language_pair = pairs[0].language_pair if pairs else ""
    resources, digests = build_resources(rc, rc.feature_sets, language_pair)
    provenance = {"run_config": rc.model_dump(), "resource_digests": digests}
    return pairs, resources, provenance


@cli.command()
@experiment_options
@click.option("--k", type=click.IntRange(min=2), default=None, help="Number of folds.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "markdown"]), default=None)
@click.pass_context
@handles_errors
def evaluate(ctx, **kw):
    """Stratified k-fold evaluation of one or more feature sets."""
    rc = _experiment_config(ctx, "evaluate", **kw)
    _require(rc.dataset, "--dataset")
    pairs, resources, provenance = _load_experiment(ctx, rc)
    grid = build_grid(rc)
    reports = [
        run_experiment(
            pairs, resources, name, grid, k=rc.k, seed=rc.seed, threads=rc.threads,
            provenance=provenance, progress=_progress(ctx),
        )
        for name in rc.feature_sets
    ]
    _emit(_report_output(rc, reports), rc.out)


@cli.command()
@experiment_options
@click.option("--k", type=click.IntRange(min=2), default=None, help="Number of folds.")
@click.option("--format", "fmt", type=click.Choice(["json", "csv", "markdown"]), default=None)
@click.pass_context
@handles_errors
def ablate(ctx, **kw):
    """Compare feature sets on shared folds."""
    rc = _experiment_config(ctx, "ablate", **kw)
    if kw.get("features") is None and len(rc.feature_sets) < 2:
        rc = rc.merged({"feature_sets": list(DEFAULT_EXPERIMENT_MATRIX)})
    _require(rc.dataset, "--dataset")
    pairs, resources, provenance = _load_experiment(ctx, rc)
    result = run_ablation(
        pairs, resources, rc.feature_sets, build_grid(rc), k=rc.k, seed=rc.seed,
        threads=rc.threads, provenance=provenance, progress=_progress(ctx),
    )
    _emit(_report_output(rc, result.reports), rc.out)


@cli.command()
@experiment_options
@click.option("--candidates", type=click.Path(dir_okay=False), default=None, help="Pairs TSV to classify.")
@click.option("--model", "model_path", type=click.Path(dir_okay=False), default=None,
              help="Use a saved model instead of training.")
@click.option("--save-model", "save_model_path", type=click.Path(dir_okay=False), default=None)
@click.option("--all", "write_all", is_flag=True, help="Write every candidate with its predicted label.")
@click.option("--features-csv", type=click.Path(dir_okay=False), default=None,
              help="Also export the candidate feature matrix.")
@click.pass_context
@handles_errors
def predict(ctx, save_model_path, write_all, features_csv, **kw):
    """Train (or load) a classifier and write the predicted cognates as a dataset TSV."""
    rc = _experiment_config(ctx, "predict", **kw)
    _require(rc.candidates, "--candidates")
    if not rc.model_path:
        _require(rc.dataset, "--dataset")
    feature_set = rc.feature_sets[0]
    if len(rc.feature_sets) > 1:
        raise ConfigurationError("predict takes a single feature set")

    candidates = load_dataset(rc.candidates)
    language_pair = candidates[0].language_pair if candidates else ""
    resources, digests = build_resources(rc, [feature_set], language_pair)

    if rc.model_path:
        model = load_model(rc.model_path)
    else:
        train_vectors, _ = assemble_dataset(load_dataset(rc.dataset), resources, feature_set, threads=rc.threads)
        X, y = to_matrix(train_vectors)
        model = grid_search(X, y, build_grid(rc), threads=rc.threads).model
    if save_model_path:
        save_model(model, save_model_path, metadata={"feature_set": feature_set, "run_config": rc.model_dump()})

    vectors, _ = assemble_dataset(candidates, resources, feature_set, threads=rc.threads)
    if features_csv:
        export_csv(vectors, resources, feature_set, features_csv)
    labels, _ = predict_batch(model, to_matrix(vectors)[0])
    predicted = [
        pair.model_copy(update={"label": int(label)})
        for pair, label in zip(candidates, labels)
        if write_all or label == COGNATE
    ]
    logger.info(f"🔎 {int(labels.sum())} of {len(candidates)} candidates predicted as cognates")
    if rc.out:
        write_dataset(predicted, rc.out)
    else:
        for pair in predicted:
            click.echo(f"{pair.language_pair}\t{pair.word_s}\t{pair.word_t}\t{pair.label}")


@cli.group("augment")
def augment_group():
    """Parallel-corpus augmentation."""


@augment_group.command("inject")
@click.option("--src", "src_path", type=click.Path(dir_okay=False), required=True)
@click.option("--tgt", "tgt_path", type=click.Path(dir_okay=False), required=True)
@click.option("--cognates", type=click.Path(dir_okay=False), required=True, help="Pairs TSV (e.g. predict output).")
@click.option("--out-src", type=click.Path(dir_okay=False), required=True)
@click.option("--out-tgt", type=click.Path(dir_okay=False), required=True)
@click.option("--devanagari", "keep_devanagari", is_flag=True,
              help="Inject the standardized Devanagari forms instead of each language's own script.")
@handles_errors
def augment_inject(src_path, tgt_path, cognates, out_src, out_tgt, keep_devanagari):
    """Append cognate pairs to a parallel corpus as single-word sentences."""
    corpus = augment_ops.load_corpus(src_path, tgt_path)
    pairs: List[WordPair] = load_dataset(cognates)
    augmented = augment_ops.inject_cognates(corpus, pairs, native_script=not keep_devanagari)
    augment_ops.write_corpus(augmented, out_src, out_tgt)


@cli.group()
def bpe():
    """Byte-pair encoding."""


@bpe.command("learn")
@click.option("--input", "input_file", type=click.File("r", encoding="utf-8"), default="-")
@click.option("--merges", type=click.IntRange(min=0), default=None, help="Merge operations (default 2500).")
@click.option("--out", type=click.Path(dir_okay=False), required=True)
@click.pass_context
@handles_errors
def bpe_learn(ctx, input_file, merges, out):
    """Learn BPE merges from one corpus side."""
    rc = _run_config(ctx, "bpe learn", merge_count=merges)
    model = augment_ops.bpe_learn([line.rstrip("\n") for line in input_file], rc.merge_count)
    augment_ops.save_merges(model, out)


@bpe.command("apply")
@click.option("--model", "merges_file", type=click.Path(dir_okay=False), required=True)
@click.option("--input", "input_file", type=click.File("r", encoding="utf-8"), default="-")
@click.option("--out", type=click.Path(dir_okay=False), default=None)
@handles_errors
def bpe_apply(merges_file, input_file, out):
    """Segment text with learned merges."""
    model = augment_ops.load_merges(merges_file)
    _emit("\n".join(augment_ops.bpe_apply(model, line.rstrip("\n")) for line in input_file), out)


@cli.command("make-fixture")
@click.argument("out_dir", type=click.Path(file_okay=False))
@click.option("--pairs", "n_pairs", type=click.IntRange(min=20), default=400)
@click.option("--dim", type=click.IntRange(min=2), default=8)
@click.option("--seed", type=int, default=None)
@click.pass_context
@handles_errors
def make_fixture(ctx, out_dir, n_pairs, dim, seed):
    """Write the deterministic synthetic dataset and its resources."""
    rc = _run_config(ctx, "make-fixture", seed=seed)
    paths = build_fixture(out_dir, n_pairs=n_pairs, dim=dim, seed=rc.seed)
    click.echo(json.dumps({key: str(value) for key, value in paths.__dict__.items()}, indent=2))


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code"""
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="sajatiya",
                          standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        click.echo("Aborted!", err=True)
        return 1
    return result if isinstance(result, int) else 0


if __name__ == "__main__":
    sys.exit(main())
