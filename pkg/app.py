import json
import logging
import sys
from functools import wraps
from pathlib import Path
from typing import List, Optional, Sequence

import click

from config import load_settings
from services import __version__
from services.corpus import COLLECTION_NAMES, CollectionSpec, build_collections, parse_records, select_records
from services.dominance import corpus_counts, dominance_table
from services.errors import AnalysisError, EmptyControlError, InsufficientDataError, RecordParseError, TextError
from services.lexicon import load_lexicon
from services.profile import ViralityProfile, profile_score
from services.readability import compare_to_control, readability_summary, score_document
from services.reports import FORMATS, build_metadata, dominance_report, file_digest, profile_report, readability_report, render
from utils.files import read_utf8
from utils.text_segmenter import tokenize, tokenize_text

logger = logging.getLogger("virality")

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


# -------------------------------
# Helpers
# -------------------------------
def analysis_errors(command):
    """Turn data errors into a clean message and exit code 1."""

    @wraps(command)
    def wrapper(*args, **kwargs):
        try:
            return command(*args, **kwargs)
        except AnalysisError as exc:
            raise click.ClickException(str(exc)) from exc

    return wrapper


def _records_format(path: Path, csv_flag: bool) -> str:
    return "csv" if csv_flag or path.suffix.lower() == ".csv" else "jsonl"


def load_records(path, csv_flag: bool = False):
    path = Path(path)
    return parse_records(read_utf8(path, RecordParseError, "records file"), _records_format(path, csv_flag))


def read_id_file(path) -> List[str]:
    lines = read_utf8(path, RecordParseError, "id file").splitlines()
    return [line.strip() for line in lines if line.strip()]


def collection_name(path) -> str:
    return Path(path).stem


def _unique_names(paths: Sequence[str]) -> List[str]:
    names = [collection_name(path) for path in paths]
    seen = set()
    for name in names:
        if name in seen:
            raise click.BadParameter(f"two collections are named '{name}'", param_hint="collection files")
        seen.add(name)
    return names


class DocumentStore:
    """Records by id, tokenized once on first use."""

    def __init__(self, records):
        self.records = records
        self._tokens = {}

    def documents(self, ids: Sequence[str], source: str):
        docs = []
        for record in select_records(self.records, ids, source):
            doc = self._tokens.get(record.id)
            if doc is None:
                doc = self._tokens[record.id] = tokenize(record.to_document())
            docs.append(doc)
        return docs


def _control_ids(path) -> List[str]:
    ids = read_id_file(path)
    if not ids:
        raise EmptyControlError(f"control collection {collection_name(path)} is empty")
    return ids


def _target_ids(path) -> List[str]:
    ids = read_id_file(path)
    if not ids:
        raise InsufficientDataError(f"collection {collection_name(path)} is empty")
    return ids


def emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
        logger.info("wrote %s", output)
    else:
        click.echo(text, nl=False)


def output_options(command):
    command = click.option("--output", "-o", type=click.Path(dir_okay=False), help="Write the report here instead of stdout.")(command)
    command = click.option("--format", "fmt", type=click.Choice(FORMATS), default=None, help="Report format (default md).")(command)
    command = click.option("--csv", "csv_flag", is_flag=True, help="Records file is CSV (implied by a .csv suffix).")(command)
    command = click.option("--control", "control_path", type=click.Path(exists=True, dir_okay=False), required=True, help="Control collection id file.")(command)
    command = click.option("--records", "records_path", type=click.Path(exists=True, dir_okay=False), required=True, help="Records file (JSON lines or CSV).")(command)
    return command


# -------------------------------
# Commands
# -------------------------------
@click.group()
@click.version_option(__version__, prog_name="virality")
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr.")
@click.pass_context
def cli(ctx, verbose):
    """Word-class dominance and readability analysis of scientific abstracts."""
    try:
        settings = load_settings()
    except AnalysisError as exc:
        raise click.ClickException(str(exc)) from exc
    level = logging.DEBUG if verbose else getattr(logging, settings.log_level)
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)
    ctx.obj = settings


@cli.command()
@click.argument("input_path", metavar="INPUT", type=click.Path(exists=True, dir_okay=False))
@click.option("--csv", "csv_flag", is_flag=True, help="Input is CSV (implied by a .csv suffix).")
@click.option("--out-dir", type=click.Path(file_okay=False), default="collections", show_default=True)
@click.option("--seed", type=int, default=None, help="Sampling seed (default 13).")
@click.option("--cite-min", type=int, default=350, show_default=True)
@click.option("--download-min", type=int, default=330, show_default=True)
@click.option("--bookmark-min", type=int, default=8, show_default=True)
@click.option("--control-size", type=int, default=3000, show_default=True)
@click.option("--viral-cap", type=int, default=None, help="Sample each viral collection down to this size.")
@click.pass_obj
@analysis_errors
def collections(settings, input_path, csv_flag, out_dir, seed, cite_min, download_min, bookmark_min, control_size, viral_cap):
    """Split INPUT into cited, downloaded, bookmarked and control id lists."""
    try:
        spec = CollectionSpec(
            cite_min=cite_min,
            download_min=download_min,
            bookmark_min=bookmark_min,
            control_size=control_size,
            seed=settings.seed if seed is None else seed,
            viral_cap=viral_cap,
        )
    except ValueError as exc:
        raise click.UsageError(str(exc)) from exc

    records = load_records(input_path, csv_flag)
    result = build_collections(records, spec)
    manifest = {
        "tool_version": __version__,
        "input": file_digest(input_path),
        "spec": spec.model_dump(),
        "sizes": {name: len(ids) for name, ids in result.items()},
    }

    # everything is computed before the first file is written
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, ids in result.items():
        (out / f"{name}.ids").write_text("".join(f"{record_id}\n" for record_id in ids), encoding="utf-8")
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    click.echo(" ".join(f"{name}={manifest['sizes'][name]}" for name in COLLECTION_NAMES))


@cli.command()
@click.argument("target_paths", metavar="TARGET_IDS...", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@output_options
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None)
@click.pass_obj
@analysis_errors
def dominance(settings, target_paths, records_path, control_path, csv_flag, fmt, output, lexicon_path):
    """Class dominance of each target collection against the control."""
    names = _unique_names(target_paths)
    lex = load_lexicon(lexicon_path or settings.lexicon_path)
    store = DocumentStore(load_records(records_path, csv_flag))

    control = corpus_counts(store.documents(_control_ids(control_path), "control"), lex)
    targets = {
        name: corpus_counts(store.documents(_target_ids(path), name), lex)
        for name, path in zip(names, target_paths)
    }
    table = dominance_table(targets, control, lex.labels)

    metadata = build_metadata(
        inputs=[file_digest(records_path), file_digest(control_path)] + [file_digest(path) for path in target_paths],
        lexicon=lex,
        settings={"control": collection_name(control_path), "targets": names},
    )
    emit(render(dominance_report(table, names, metadata), fmt or settings.report_format), output)


@cli.command()
@click.argument("collection_paths", metavar="COLLECTION_IDS...", nargs=-1, required=True, type=click.Path(exists=True, dir_okay=False))
@output_options
@click.pass_obj
@analysis_errors
def readability(settings, collection_paths, records_path, control_path, csv_flag, fmt, output):
    """Fog and Flesch per collection, tested against the control."""
    names = _unique_names(collection_paths)
    control_name = collection_name(control_path)
    if control_name in names:
        raise click.BadParameter(f"'{control_name}' is already the control", param_hint="collection files")
    exclude_inflected = settings.fog_exclude_inflected
    store = DocumentStore(load_records(records_path, csv_flag))

    control = readability_summary(store.documents(_control_ids(control_path), "control"), exclude_inflected)
    comparisons = {control_name: compare_to_control(control, control)}
    for name, path in zip(names, collection_paths):
        try:
            summary = readability_summary(store.documents(read_id_file(path), name), exclude_inflected)
        except InsufficientDataError as exc:
            logger.warning("omitting collection %s: %s", name, exc)
            continue
        comparisons[name] = compare_to_control(summary, control)

    metadata = build_metadata(
        inputs=[file_digest(records_path), file_digest(control_path)] + [file_digest(path) for path in collection_paths],
        settings={"control": control_name, "fog_exclude_inflected": exclude_inflected},
    )
    emit(render(readability_report(comparisons, metadata), fmt or settings.report_format), output)


def _read_abstract(path) -> str:
    text = read_utf8(path, TextError, "abstract")
    if not text.strip():
        raise TextError(f"abstract {Path(path).name} is empty")
    return text


@cli.command()
@click.argument("abstract_path", metavar="ABSTRACT", type=click.Path(exists=True, dir_okay=False))
@output_options
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Defaults to the shipped profile lexicon.")
@click.option("--profile", "profile_path", type=click.Path(exists=True, dir_okay=False), default=None, help="JSON object of label -> Dominant|Avoided.")
@click.option("--baseline", "baseline_path", type=click.Path(exists=True, dir_okay=False), default=None, help="Earlier version of the abstract to compare with.")
@click.pass_obj
@analysis_errors
def coach(settings, abstract_path, records_path, control_path, csv_flag, fmt, output, lexicon_path, profile_path, baseline_path):
    """Score ABSTRACT against the virality profile and report its readability."""
    lex = load_lexicon(lexicon_path or settings.profile_lexicon_path)
    profile = ViralityProfile.load(profile_path) if profile_path else ViralityProfile.default()
    store = DocumentStore(load_records(records_path, csv_flag))
    control = corpus_counts(store.documents(_control_ids(control_path), "control"), lex)

    doc = tokenize_text(_read_abstract(abstract_path), doc_id=collection_name(abstract_path))
    result = profile_score(doc, control, profile, lex)
    scores = score_document(doc, settings.fog_exclude_inflected)
    baseline = None
    if baseline_path:
        before = tokenize_text(_read_abstract(baseline_path), doc_id=collection_name(baseline_path))
        baseline = profile_score(before, control, profile, lex)

    inputs = [file_digest(abstract_path), file_digest(records_path), file_digest(control_path)]
    inputs += [file_digest(path) for path in (baseline_path, profile_path) if path]
    metadata = build_metadata(
        inputs=inputs,
        lexicon=lex,
        settings={
            "control": collection_name(control_path),
            "profile": Path(profile_path).name if profile_path else "default",
            "fog_exclude_inflected": settings.fog_exclude_inflected,
        },
    )
    emit(render(profile_report(result, scores, baseline, metadata), fmt or settings.report_format), output)


if __name__ == "__main__":
    cli()
