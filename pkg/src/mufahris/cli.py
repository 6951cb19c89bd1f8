"""Command-line front door: ingest, analyze, search, gen, grade, serve, export-lom.

Exit codes: 0 success, 1 domain error (single line ``error: <code>: <message>``
on stderr), 2 usage error.  All I/O is UTF-8; output for fixed inputs and
seeds is byte-stable.
"""

import functools
import json
import sys
from pathlib import Path

import click

from .analyzer import analyze_text, bundled_lexicon, dump_profile, dump_tokens
from .api import lom_fields_to_record
from .config import load_config
from .errors import MufahrisError
from .exercises import (
    exercise_from_json,
    exercise_to_json,
    grade as grade_exercise,
    generate_cloze_bank,
    generate_cloze_select,
    generate_mcq,
    generate_qa,
    CLOZE_BANK,
    CLOZE_SELECT,
    MULTIPLE_CHOICE,
    QUESTION_ANSWER,
)
from .index import FeatureSelector, PedagogicalContext, search
from .lom import serialize_xml
from .store import CorpusStore


def engine_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except MufahrisError as exc:
            click.echo(f"error: {exc.code}: {exc}", err=True)
            sys.exit(1)

    return wrapper


def parse_feature(text: str) -> FeatureSelector:
    conditions = []
    for part in text.split("&"):
        kind, sep, value = part.partition("=")
        if not sep or not kind or not value:
            raise click.UsageError(f"feature must be kind=value, got {part!r}")
        conditions.append((kind.strip(), value.strip()))
    return FeatureSelector(tuple(conditions))


@click.group()
@click.option("--store", "store_dir", type=click.Path(), default=None, help="Corpus directory.")
@click.option("--config", "config_path", type=click.Path(exists=True), default=None, help="JSON config file.")
@click.pass_context
def main(ctx, store_dir, config_path):
    """Pedagogical indexing engine for Arabic texts."""
    config = load_config(config_path)
    if store_dir is None:
        store_dir = config.store_dir
    ctx.obj = {
        "config": config,
        "store": CorpusStore(store_dir, lexicon=bundled_lexicon(), config=config),
    }


def _read_text_file(path) -> bytes:
    return Path(path).read_bytes()


@main.command()
@click.option("--title", required=True)
@click.option("--file", "file_path", required=True, type=click.Path(exists=True))
@click.option("--lom-field", "lom_fields", multiple=True, help="k=v pairs, e.g. context=school")
@click.pass_obj
@engine_errors
def ingest(obj, title, file_path, lom_fields):
    """Add a text to the corpus and print its id and profile summary."""
    fields = {}
    for pair in lom_fields:
        key, sep, value = pair.partition("=")
        if not sep:
            raise click.UsageError(f"--lom-field needs k=v, got {pair!r}")
        fields[key] = value
    manual = lom_fields_to_record(fields)
    store = obj["store"]
    text_id = store.add_text(title, _read_text_file(file_path), manual_fields=manual)
    profile = store.load_lom(text_id).educational.description
    click.echo(f"{text_id} lines={profile.line_count} verbs={profile.verb_count}")


@main.command()
@click.option("--file", "file_path", required=True, type=click.Path(exists=True))
@click.option("--dump", "what", type=click.Choice(["tokens", "profile"]), default="profile")
@click.option("--format", "fmt", type=click.Choice(["table", "tsv"]), default="table")
@click.pass_obj
@engine_errors
def analyze(obj, file_path, what, fmt):
    """Analyze a file and dump token records or the grammatical profile."""
    annotated = analyze_text("-", _read_text_file(file_path), obj["store"].lexicon)
    if what == "profile":
        dump = dump_profile(annotated.profile)
        if fmt == "tsv":
            click.echo(dump, nl=False)
        else:
            for line in dump.splitlines():
                key, value = line.split("\t")
                click.echo(f"{key:32} {value}")
    else:
        dump = dump_tokens(annotated)
        if fmt == "tsv":
            click.echo(dump, nl=False)
        else:
            header = ("idx", "surface", "class", "subclass", "clitics|stem", "features")
            click.echo("  ".join(header))
            for line in dump.splitlines():
                cols = line.split("\t")
                clitics = f"{cols[7]}|{cols[8]}|{cols[9]}"
                click.echo("  ".join((cols[0], cols[1], cols[5], cols[6], clitics, cols[10])))


@main.command()
@click.option("--level", type=int, required=True)
@click.option("--category", required=True)
@click.option("--feature", "feature_text", required=True, help="kind=value, e.g. verb-tense=past")
@click.option("--difficulty-max", default=None)
@click.option("--format", "fmt", type=click.Choice(["table", "tsv"]), default="table")
@click.pass_obj
@engine_errors
def search_cmd(obj, level, category, feature_text, difficulty_max, fmt):
    """Rank corpus texts for a pedagogical context."""
    cp = PedagogicalContext(
        level=level,
        category=category,
        target_feature=parse_feature(feature_text),
        role="teacher",
        difficulty_max=difficulty_max,
    )
    results = search(cp, obj["store"].models(), obj["config"])
    for r in results:
        ratio = f"{r.verb_count}/{r.line_count}"
        if fmt == "tsv":
            click.echo(f"{r.rank}\t{r.text_id}\t{r.title}\t{r.line_count}\t{r.verb_count}\t{ratio}")
        else:
            click.echo(
                f"{r.rank}/ {r.title} ({r.text_id})  lines={r.line_count} verbs={r.verb_count} ratio={ratio}"
            )


main.add_command(search_cmd, name="search")


@main.command()
@click.option("--text", "text_id", required=True)
@click.option(
    "--type",
    "exercise_type",
    required=True,
    type=click.Choice([CLOZE_BANK, CLOZE_SELECT, MULTIPLE_CHOICE, QUESTION_ANSWER]),
)
@click.option("--feature", "feature_text", default="token-class=verb")
@click.option("--targets", default="pronoun,adverbial,demonstrative", help="QA subclasses, comma-separated")
@click.option("--seed", type=int, default=0)
@click.option("--max-blanks", type=int, default=5)
@click.option("--options-per-blank", type=int, default=4)
@click.option("--with-keys", is_flag=True, default=False)
@click.pass_obj
@engine_errors
def gen(obj, text_id, exercise_type, feature_text, targets, seed, max_blanks, options_per_blank, with_keys):
    """Generate an exercise from a stored text; JSON on stdout."""
    store = obj["store"]
    annotated = store.annotated(text_id)
    selector = parse_feature(feature_text)
    if exercise_type == CLOZE_BANK:
        exercise = generate_cloze_bank(annotated, store.lexicon, selector, max_blanks=max_blanks, seed=seed)
    elif exercise_type == CLOZE_SELECT:
        exercise = generate_cloze_select(
            annotated, store.lexicon, selector,
            options_per_blank=options_per_blank, max_blanks=max_blanks, seed=seed,
        )
    elif exercise_type == MULTIPLE_CHOICE:
        exercise = generate_mcq(annotated, seed=seed)
    else:
        exercise = generate_qa(annotated, [t.strip() for t in targets.split(",") if t.strip()], seed=seed)
    click.echo(json.dumps(exercise_to_json(exercise, with_keys=with_keys), ensure_ascii=False, indent=2, sort_keys=True))


@main.command(name="grade")
@click.option("--exercise", "exercise_path", required=True, type=click.Path(exists=True))
@click.option("--answers", "answers_path", required=True, type=click.Path(exists=True))
@click.pass_obj
@engine_errors
def grade_cmd(obj, exercise_path, answers_path):
    """Grade answers against an exercise JSON (generated with --with-keys)."""
    exercise = exercise_from_json(json.loads(Path(exercise_path).read_text(encoding="utf-8")))
    responses = json.loads(Path(answers_path).read_text(encoding="utf-8"))
    report = grade_exercise(exercise, responses)
    for verdict in report.per_item:
        click.echo(
            f"{verdict.item_id}\t{verdict.color_hint}\tgiven={verdict.given}\texpected={verdict.expected}"
        )
    click.echo(f"{report.score[0]}/{report.score[1]}")


@main.command(name="export-lom")
@click.option("--text", "text_id", required=True)
@click.pass_obj
@engine_errors
def export_lom(obj, text_id):
    """Write a text's LOM XML document to stdout."""
    record = obj["store"].load_lom(text_id)
    sys.stdout.buffer.write(serialize_xml(record))
    sys.stdout.buffer.flush()


@main.command()
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
@click.pass_obj
@engine_errors
def serve(obj, host, port):
    """Run the HTTP service over the corpus store."""
    from .api import serve as run_service
    from dataclasses import replace

    config = obj["config"]
    if host is not None:
        config = replace(config, host=host)
    if port is not None:
        config = replace(config, port=port)
    run_service(obj["store"], config)


if __name__ == "__main__":
    main()
