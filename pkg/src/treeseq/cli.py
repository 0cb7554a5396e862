"""Command-line front end.

Exit codes are uniform across subcommands: 0 success, 1 usage error,
2 input-format error, 3 semantic error (illegal sequences, unsupported
system/tree combinations, misaligned corpora).  All commands are
deterministic given their inputs, flags and seed, including under
``--jobs N``, which fans sentences out to worker processes and merges
results back in input order.
"""

from __future__ import annotations

import json
import os
import statistics
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Iterable

import click

from . import evaluation, linearization, synth, treebank, trees
from .linearization import (CorpusFormatError, CorpusRecord,
                            LinearizationSpec, TokenError)
from .oracles import UnsupportedSystem, oracle
from .transitions import SystemSpec, TransitionError, execute
from .treebank import TreebankFormatError
from .trees import ConstituentTree, PunctuationPolicy, sort_children

EXIT_USAGE = 1
EXIT_FORMAT = 2
EXIT_SEMANTIC = 3


def _punct_policy(value: str) -> PunctuationPolicy:
    if value == "default":
        return PunctuationPolicy.default()
    if value == "none":
        return PunctuationPolicy.none()
    if value.startswith("file:"):
        path = value[5:]
        with open(path, encoding="utf-8") as fh:
            tokens = [line.strip() for line in fh if line.strip()]
        return PunctuationPolicy.from_tokens(tokens)
    raise click.UsageError(
        "--punct must be 'default', 'none' or 'file:PATH', got %r" % value)


format_option = click.option(
    "--format", "fmt", type=click.Choice(treebank.FORMATS),
    default="discbracket", show_default=True, help="Treebank file format.")


def _spec_options(f):
    from .transitions import Base, Disc
    f = click.option("--system", "base", type=click.Choice([b.value for b in Base]),
                     default="inorder", show_default=True,
                     help="Base transition system.")(f)
    f = click.option("--disc", type=click.Choice([d.value for d in Disc]),
                     default="none", show_default=True,
                     help="Mechanism for discontinuities.")(f)
    f = click.option("--lexicalized", is_flag=True,
                     help="Render shifts as the words they transfer.")(f)
    return f


def _policy_options(f):
    f = click.option("--punct", default="default", show_default=True,
                     help="Punctuation policy: default, none or file:PATH.")(f)
    f = click.option("--keep-root", is_flag=True,
                     help="Score the root bracket too.")(f)
    return f


def _jobs_option(f):
    return click.option("--jobs", type=int, default=1, show_default=True,
                        help="Worker processes for sentence-parallel steps.")(f)


def _make_spec(base: str, disc: str, lexicalized: bool) -> LinearizationSpec:
    return LinearizationSpec(SystemSpec.parse(base, disc), lexicalized)


def _read_trees(path: str, fmt: str, strip: bool) -> list[tuple[str, ConstituentTree]]:
    return treebank.read_treebank(path, fmt, strip=strip)


def _pmap(func, items, jobs: int, chunksize: int = 16) -> Iterable:
    if jobs <= 1:
        return map(func, items)
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


@click.group()
@click.version_option(package_name="treeseq")
def cli() -> None:
    """Constituent trees as transition-token sequences, and back."""


# --- synth -------------------------------------------------------------------

@cli.command("synth")
@click.option("--seed", type=int, required=True)
@click.option("--count", type=int, required=True)
@click.option("--min-words", type=int, default=1, show_default=True)
@click.option("--max-words", type=int, default=40, show_default=True)
@click.option("--max-arity", type=int, default=4, show_default=True)
@click.option("--disc-rate", type=float, default=0.0, show_default=True)
@click.option("--max-gap-degree", type=int, default=1, show_default=True)
@click.option("--format", "fmt", type=click.Choice(("ptb", "discbracket")),
              default="discbracket", show_default=True)
@click.option("-o", "--output", type=click.File("w"), default="-")
def synth_cmd(seed, count, min_words, max_words, max_arity, disc_rate,
              max_gap_degree, fmt, output):
    """Write a seeded synthetic treebank (deterministic per seed)."""
    corpus = synth.random_corpus(
        seed, count, min_words=min_words, max_words=max_words,
        max_arity=max_arity, discontinuity_rate=disc_rate,
        max_gap_degree=max_gap_degree)
    treebank.write_treebank(corpus, output, fmt)


# --- linearize ---------------------------------------------------------------

def _linearize_one(args) -> CorpusRecord:
    sent_id, tree, spec = args
    tokens = linearization.tree_to_tokens(tree, spec)
    return CorpusRecord(id=sent_id, words=tree.words, tokens=tuple(tokens))


@cli.command()
@click.argument("treebank_file", type=click.Path(exists=True, dir_okay=False))
@format_option
@_spec_options
@click.option("--strip-preterminals", "strip", is_flag=True,
              help="Drop the part-of-speech layer at ingestion.")
@_jobs_option
@click.option("-o", "--output", type=click.File("w"), default="-")
def linearize(treebank_file, fmt, base, disc, lexicalized, strip, jobs, output):
    """Encode a treebank as a linearized corpus file (JSON lines)."""
    spec = _make_spec(base, disc, lexicalized)
    pairs = _read_trees(treebank_file, fmt, strip)
    records = _pmap(_linearize_one,
                    [(sid, tree, spec) for sid, tree in pairs], jobs)
    linearization.write_corpus(records, output)


# --- delinearize -------------------------------------------------------------

def _delinearize_one(args):
    rec_id, words, tokens, spec, mode, out_fmt = args
    sentence = trees.Sentence(words)
    try:
        tree = linearization.tokens_to_tree(tokens, sentence, spec, mode=mode)
        out = tree if out_fmt != "ptb" else ConstituentTree(
            tree.sentence, sort_children(tree.root))
        return rec_id, treebank.write_bracketed(out, out_fmt), None
    except (TokenError, TransitionError, ValueError) as exc:
        return rec_id, None, str(exc)


@cli.command()
@click.argument("predictions", type=click.Path(exists=True, dir_okay=False))
@click.option("--sentences", "sentences_file", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Corpus file supplying id + words for every prediction.")
@_spec_options
@click.option("--mode", type=click.Choice(("strict", "repair")),
              default="repair", show_default=True)
@click.option("--format", "out_fmt", type=click.Choice(("ptb", "discbracket")),
              default="discbracket", show_default=True,
              help="Output treebank format.")
@_jobs_option
@click.option("-o", "--output", type=click.File("w"), default="-")
def delinearize(predictions, sentences_file, base, disc, lexicalized, mode,
                out_fmt, jobs, output):
    """Decode predicted token sequences back into a treebank."""
    spec = _make_spec(base, disc, lexicalized)
    sentences = {rec.id: rec for rec in
                 linearization.read_corpus_file(sentences_file)}
    tasks = []
    for rec in linearization.read_corpus_file(predictions):
        if rec.id not in sentences:
            raise evaluation.CorpusMismatch(
                "prediction id %r missing from sentences file" % rec.id)
        words = sentences[rec.id].words
        if words is None:
            raise CorpusFormatError("record %s has no words field" % rec.id)
        tasks.append((rec.id, words, rec.tokens or (), spec, mode, out_fmt))
    failures = []
    for rec_id, line, error in _pmap(_delinearize_one, tasks, jobs):
        if error is None:
            output.write(line + "\n")
        else:
            failures.append((rec_id, error))
    if failures:
        for rec_id, error in failures:
            click.echo("record %s: %s" % (rec_id, error), err=True)
        raise SemanticError("%d record(s) failed to decode" % len(failures))


# --- roundtrip ---------------------------------------------------------------

def _roundtrip_one(args):
    sent_id, tree, spec = args
    try:
        back = linearization.reproduce(tree, spec)
    except (TokenError, TransitionError) as exc:
        return sent_id, False, str(exc)
    ok = (sort_children(tree.root) == back.root
          and tree.sentence == back.sentence)
    return sent_id, ok, None


@cli.command()
@click.argument("treebank_file", type=click.Path(exists=True, dir_okay=False))
@format_option
@_spec_options
@click.option("--strip-preterminals", "strip", is_flag=True)
@_jobs_option
def roundtrip(treebank_file, fmt, base, disc, lexicalized, strip, jobs):
    """Check encode->decode->execute equality for every tree."""
    spec = _make_spec(base, disc, lexicalized)
    pairs = _read_trees(treebank_file, fmt, strip)
    results = list(_pmap(_roundtrip_one,
                         [(sid, t, spec) for sid, t in pairs], jobs))
    ok_count = 0
    for sent_id, ok, error in results:
        verdict = "ok" if ok else ("error: %s" % error if error else "mismatch")
        click.echo("%s\t%s" % (sent_id, verdict))
        ok_count += ok
    total = len(results)
    pct = 100.0 * ok_count / total if total else 100.0
    click.echo("roundtrip %d/%d (%.2f%%) under %s" % (ok_count, total, pct, spec))
    lossy = lexicalized and disc == "shiftk"
    if not lossy and ok_count != total:
        raise SemanticError("lossless system failed to round-trip %d tree(s)"
                            % (total - ok_count))


# --- eval / lossiness / analyze ------------------------------------------------

def _load_aligned(gold_path, pred_path, fmt, strip):
    gold = _read_trees(gold_path, fmt, strip)
    pred = _read_trees(pred_path, fmt, strip)
    by_id = {sid: tree for sid, tree in pred}
    missing = [sid for sid, _ in gold if sid not in by_id]
    if missing or len(gold) != len(pred):
        raise evaluation.CorpusMismatch(
            "gold and prediction ids do not align (first missing: %s)"
            % (missing[:3] or "extra predictions"))
    return [t for _, t in gold], [by_id[sid] for sid, _ in gold]


@cli.command("eval")
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@format_option
@click.option("--strip-preterminals", "strip", is_flag=True)
@_policy_options
@click.option("--json", "json_path", type=click.Path(dir_okay=False),
              help="Also write the report as JSON.")
def eval_cmd(gold, pred, fmt, strip, punct, keep_root, json_path):
    """Score a predicted treebank against gold (F1, DF1, exact match)."""
    gold_trees, pred_trees = _load_aligned(gold, pred, fmt, strip)
    report = evaluation.score(gold_trees, pred_trees,
                              policy=_punct_policy(punct),
                              exclude_root=not keep_root)
    click.echo(report.format_text())
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report.as_dict(), fh, indent=2)
            fh.write("\n")


@cli.command()
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@format_option
@_spec_options
@click.option("--strip-preterminals", "strip", is_flag=True)
@_policy_options
@click.option("--json", "json_path", type=click.Path(dir_okay=False))
def lossiness(gold, fmt, base, disc, lexicalized, strip, punct, keep_root,
              json_path):
    """Reproduction ceiling of an encoding over a gold treebank."""
    spec = _make_spec(base, disc, lexicalized)
    pairs = _read_trees(gold, fmt, strip)
    report = linearization.lossiness_report(
        [t for _, t in pairs], spec, policy=_punct_policy(punct),
        exclude_root=not keep_root)
    click.echo(report.format_text())
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            json.dump(report.as_dict(), fh, indent=2)
            fh.write("\n")


@cli.command()
@click.argument("gold", type=click.Path(exists=True, dir_okay=False))
@click.argument("pred", type=click.Path(exists=True, dir_okay=False))
@format_option
@click.option("--strip-preterminals", "strip", is_flag=True)
@_policy_options
@click.option("--span-buckets", default="1-2,3-4,5-9,10-19,20+",
              show_default=True)
@click.option("--sentence-buckets", default="1-10,11-20,21-30,31-40,41-50,51+",
              show_default=True)
@click.option("--top-labels", type=int, default=12, show_default=True)
@click.option("--out-dir", type=click.Path(file_okay=False),
              help="Write TSV tables and figures here.")
@click.option("--figures/--no-figures", "with_figures", default=True,
              show_default=True, help="Render charts when --out-dir is set.")
def analyze(gold, pred, fmt, strip, punct, keep_root, span_buckets,
            sentence_buckets, top_labels, out_dir, with_figures):
    """Structural error breakdowns (span length, sentence length, labels)."""
    gold_trees, pred_trees = _load_aligned(gold, pred, fmt, strip)
    report = evaluation.breakdown(
        gold_trees, pred_trees, policy=_punct_policy(punct),
        exclude_root=not keep_root,
        span_buckets=evaluation.parse_buckets(span_buckets),
        sentence_buckets=evaluation.parse_buckets(sentence_buckets))
    click.echo(evaluation.format_breakdown_table(report.span, "span"))
    click.echo("")
    click.echo(evaluation.format_breakdown_table(report.sentence, "sentence"))
    click.echo("")
    click.echo(evaluation.format_breakdown_table(
        report.labels[:top_labels], "label", with_span=True))
    if out_dir:
        os.makedirs(out_dir, exist_ok=True)
        tables = (("span_length.tsv", report.span, False),
                  ("sentence_length.tsv", report.sentence, False),
                  ("labels.tsv", report.labels, True))
        for name, rows, with_span in tables:
            with open(os.path.join(out_dir, name), "w", encoding="utf-8") as fh:
                fh.write(evaluation.breakdown_tsv(rows, with_span=with_span))
        with open(os.path.join(out_dir, "breakdown.json"), "w",
                  encoding="utf-8") as fh:
            json.dump(report.as_dict(), fh, indent=2)
            fh.write("\n")
        if with_figures:
            from . import figures  # defers the matplotlib import
            figures.save_breakdown_figures(report, out_dir,
                                           max_labels=top_labels)


# --- vocab -------------------------------------------------------------------

@cli.command()
@click.argument("corpus", type=click.Path(exists=True, dir_okay=False))
@click.option("--json", "as_json", is_flag=True,
              help="Emit {'action_tokens': [...], 'counts': {...}}.")
def vocab(corpus, as_json):
    """List the action tokens of a linearized corpus with frequencies."""
    records = linearization.read_corpus_file(corpus)
    built = linearization.build_vocab(
        [rec.tokens or () for rec in records])
    if as_json:
        click.echo(json.dumps(
            {"action_tokens": list(built.action_tokens),
             "counts": {t: built.counts[t] for t in built.action_tokens}},
            indent=2))
    else:
        for token in built.action_tokens:
            click.echo("%s\t%d" % (token, built.counts[token]))


# --- merge-reports -----------------------------------------------------------

@cli.command("merge-reports")
@click.argument("reports", nargs=-1, required=True,
                type=click.Path(exists=True, dir_okay=False))
def merge_reports(reports):
    """Mean and standard deviation across several eval JSON reports."""
    data = []
    for path in reports:
        with open(path, encoding="utf-8") as fh:
            data.append(json.load(fh))
    keys = ["precision", "recall", "f1", "disco_precision", "disco_recall",
            "disco_f1", "exact_match"]
    for key in keys:
        values = [d[key] for d in data if d.get(key) is not None]
        if not values:
            click.echo("%-16s %8s" % (key, "-"))
            continue
        mean = statistics.fmean(values)
        sd = statistics.stdev(values) if len(values) > 1 else 0.0
        click.echo("%-16s %8.2f ±%.2f (n=%d)" % (key, mean, sd, len(values)))


# --- error mapping -----------------------------------------------------------

class SemanticError(Exception):
    pass


def main(argv=None) -> int:
    try:
        cli.main(args=argv, standalone_mode=False)
    except click.exceptions.Exit as exc:
        sys.exit(exc.exit_code)
    except click.UsageError as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.ClickException as exc:
        exc.show()
        sys.exit(EXIT_USAGE)
    except click.Abort:
        sys.exit(EXIT_USAGE)
    except (TreebankFormatError, CorpusFormatError) as exc:
        click.echo("format error: %s" % exc, err=True)
        sys.exit(EXIT_FORMAT)
    except (TokenError, TransitionError, UnsupportedSystem,
            evaluation.CorpusMismatch, SemanticError, ValueError) as exc:
        click.echo("error: %s" % exc, err=True)
        sys.exit(EXIT_SEMANTIC)
    return 0


if __name__ == "__main__":
    sys.exit(main())
