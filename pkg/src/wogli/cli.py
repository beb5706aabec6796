"""Command-line interface.

Exit codes: 0 on success, 1 for usage problems, 2 for domain errors
(lexicon, generation, format, joining). run() is the testable entry point;
main() is the console script.
"""

from __future__ import annotations

import json
import sys

import click

from .analysis import build_report
from .augment import (
    AugmentationPlan,
    merge_training,
    plan_102,
    plan_1037,
    sample_augmentation,
    write_training_rows,
)
from .dataset_io import read_pairs, read_predictions, write_pairs
from .errors import LexiconError, WogliError
from .generator import GenerationSet, derive_os_hard, generate_set
from .lexicon import ValidationProfile, default_lexicon_path, load_lexicon, validate_lexicon

_DEFAULT_PER_PATTERN = {
    GenerationSet.WOGLI: 1000,
    GenerationSet.P_SUBJECT: 1000,
    GenerationSet.OS_HARD: 1000,
    GenerationSet.DATIVE: 150,
    GenerationSet.DITRANSITIVE: 500,
}


def _load_checked_lexicon(path):
    lex = load_lexicon(path if path is not None else default_lexicon_path())
    problems = validate_lexicon(lex, ValidationProfile.TOY)
    if problems:
        head = "; ".join(problems[:3])
        more = f" (+{len(problems) - 3} more)" if len(problems) > 3 else ""
        raise LexiconError(f"lexicon rejected: {head}{more}")
    return lex


@click.group()
def cli():
    """Generate and analyze German word-order NLI challenge sets."""


@cli.command()
@click.argument("setname", type=click.Choice([s.value for s in GenerationSet]))
@click.option("--seed", type=int, required=True,
              help="Generation is replayable; there is no implicit entropy.")
@click.option("--per-pattern", type=int, default=None,
              help="Premises per pattern (default depends on the set).")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False),
              envvar="WOGLI_LEXICON", default=None,
              help="Lexicon file (JSON or TSV); defaults to the bundled one.")
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--format", "fmt", type=click.Choice(["rows", "tsv"]), default="rows",
              show_default=True)
@click.option("--with-replacement-dedup", is_flag=True,
              help="Sample with replacement, then drop duplicate premises.")
@click.option("--spaced-period", is_flag=True,
              help="Emit the final period as its own token.")
@click.option("--workers", type=int, default=1, show_default=True)
def generate(setname, seed, per_pattern, lexicon_path, out, fmt,
             with_replacement_dedup, spaced_period, workers):
    """Generate one challenge set and write it to a pair file."""
    name = GenerationSet(setname)
    if per_pattern is None:
        per_pattern = _DEFAULT_PER_PATTERN[name]
    if per_pattern < 1:
        raise click.UsageError("--per-pattern must be positive")
    if workers < 1:
        raise click.UsageError("--workers must be positive")
    lex = _load_checked_lexicon(lexicon_path)
    records = generate_set(
        name, lex, seed, per_pattern,
        with_replacement=with_replacement_dedup,
        spaced_period=spaced_period,
        workers=workers,
    )
    size = write_pairs(records, out, fmt)
    click.echo(f"wrote {len(records)} pairs ({size} bytes) to {out}")


@cli.command()
@click.argument("target", type=click.Choice(["os-hard"]))
@click.option("--from", "source", required=True,
              type=click.Path(exists=True, dir_okay=False),
              help="Pair file of accusative premises (row format).")
@click.option("--lexicon", "lexicon_path", type=click.Path(exists=True, dir_okay=False),
              envvar="WOGLI_LEXICON", default=None)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--format", "fmt", type=click.Choice(["rows", "tsv"]), default="rows",
              show_default=True)
@click.option("--spaced-period", is_flag=True)
def derive(target, source, lexicon_path, out, fmt, spaced_period):
    """Derive the hard reorder set from an existing pair file."""
    lex = _load_checked_lexicon(lexicon_path)
    records = read_pairs(source)
    derived = derive_os_hard(records, lex, spaced_period)
    size = write_pairs(derived, out, fmt)
    click.echo(f"wrote {len(derived)} pairs ({size} bytes) to {out}")


@cli.command(name="sample-augmentation")
@click.option("--plan", "plan_name", type=click.Choice(["1037", "102", "custom"]),
              required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--in", "source", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--out-aug", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--out-rest", required=True, type=click.Path(dir_okay=False, writable=True))
@click.option("--format", "fmt", type=click.Choice(["rows", "tsv"]), default="rows",
              show_default=True)
@click.option("--per-pattern", type=int, default=None, help="custom plan only")
@click.option("--verb-min", type=int, default=None, help="custom plan only")
@click.option("--verb-max", type=int, default=None, help="custom plan only")
@click.option("--require-all-nouns", is_flag=True, help="custom plan only")
def sample_augmentation_cmd(plan_name, seed, source, out_aug, out_rest, fmt,
                            per_pattern, verb_min, verb_max, require_all_nouns):
    """Split a pair file into a balanced augmentation subset and the rest."""
    if plan_name == "custom":
        if per_pattern is None or verb_min is None or verb_max is None:
            raise click.UsageError(
                "custom plans need --per-pattern, --verb-min and --verb-max"
            )
        try:
            plan = AugmentationPlan(per_pattern, verb_min, verb_max, require_all_nouns, seed)
        except ValueError as exc:
            raise click.UsageError(str(exc)) from None
    else:
        if any(v is not None for v in (per_pattern, verb_min, verb_max)) or require_all_nouns:
            raise click.UsageError("plan sizing options apply to --plan custom only")
        plan = plan_1037(seed) if plan_name == "1037" else plan_102(seed)
    records = read_pairs(source)
    aug, rest = sample_augmentation(records, plan)
    size_aug = write_pairs(aug, out_aug, fmt)
    size_rest = write_pairs(rest, out_rest, fmt)
    click.echo(
        f"wrote {len(aug)} pairs ({size_aug} bytes) to {out_aug}, "
        f"{len(rest)} pairs ({size_rest} bytes) to {out_rest}"
    )


@cli.command()
@click.option("--base", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Headerless premise/hypothesis/label TSV.")
@click.option("--aug", required=True, type=click.Path(exists=True, dir_okay=False),
              help="Pair file to mix in.")
@click.option("--ne-label", type=click.Choice(["neutral", "contradiction"]),
              default="neutral", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False, writable=True))
def merge(base, aug, ne_label, seed, out):
    """Mix a pair file into a training TSV and shuffle."""
    records = read_pairs(aug)
    rows = merge_training(base, records, ne_label, seed)
    size = write_training_rows(rows, out)
    click.echo(f"wrote {len(rows)} rows ({size} bytes) to {out}")


@cli.command()
@click.option("--gold", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--predictions", required=True, type=click.Path(exists=True, dir_okay=False))
@click.option("--runs", type=int, required=True)
@click.option("--groups", type=click.Choice(["all", "gender", "definiteness", "number"]),
              default="all", show_default=True)
@click.option("--out", type=click.Path(dir_okay=False, writable=True), default=None,
              help="Also write machine-readable report rows here.")
@click.option("--tie-break-ne", is_flag=True,
              help="Let even majority-vote ties fall to not-entailed.")
@click.option("--sample-sd", is_flag=True,
              help="Sample standard deviation instead of population.")
def analyze(gold, predictions, runs, groups, out, tie_break_ne, sample_sd):
    """Score predictions against a gold pair file, group-wise."""
    if runs < 1:
        raise click.UsageError("--runs must be positive")
    gold_records = read_pairs(gold)
    preds = read_predictions(predictions, runs)
    text, rows = build_report(gold_records, preds, groups, tie_break_ne, sample_sd)
    click.echo(text, nl=False)
    if out is not None:
        payload = "".join(json.dumps(row, ensure_ascii=False) + "\n" for row in rows)
        with open(out, "w", encoding="utf-8", newline="") as handle:
            handle.write(payload)


@cli.command(name="validate-lexicon")
@click.option("--in", "source", required=True,
              type=click.Path(exists=True, dir_okay=False))
@click.option("--profile", type=click.Choice(["full", "toy"]), default="full",
              show_default=True)
def validate_lexicon_cmd(source, profile):
    """Check a lexicon file; any finding is reported and fails the command."""
    lex = load_lexicon(source)
    problems = validate_lexicon(
        lex, ValidationProfile.FULL if profile == "full" else ValidationProfile.TOY
    )
    for problem in problems:
        click.echo(problem)
    if problems:
        raise LexiconError(f"{len(problems)} finding(s) in {source}")
    click.echo("lexicon ok")


def run(argv) -> int:
    """Run the CLI on an argument list; returns the exit code."""
    try:
        cli.main(args=list(argv), standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        click.echo(f"wogli: {exc.format_message()}", err=True)
        return 1
    except click.exceptions.Abort:
        click.echo("wogli: aborted", err=True)
        return 1
    except WogliError as exc:
        click.echo(f"wogli: error[{exc.code}] {exc}", err=True)
        return 2
    return 0


def main() -> None:
    sys.exit(run(sys.argv[1:]))
