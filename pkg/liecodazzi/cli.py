import logging
from contextlib import contextmanager

import click

from liecodazzi.audit.audit import etas_for, verify_paper_theorems
from liecodazzi.classify.classify import (
    UNRESTRICTED,
    build_system,
    check_on_family,
    connection_for,
    parse_solution,
    sample_necessity,
)
from liecodazzi.config import DEFAULT_SEED, DEFAULT_TRIALS, LOGGING_FILE, SEED_ENV_VAR
from liecodazzi.connection.connection import connection_kind
from liecodazzi.data_classes.data_classes import Status, Structure
from liecodazzi.exceptions import LieCodazziError, SamplerStarvation
from liecodazzi.liealg.liealg import FAMILIES, make_group, normalize_family
from liecodazzi.report.report import (
    OBJECTS,
    audit_json,
    audit_table,
    dumps,
    family_listing,
    family_listing_json,
    object_json,
    object_text,
    system_json,
    system_text,
    verdict_json,
    verdict_text,
)

ETA_CHOICES = {"+1": 1, "1": 1, "-1": -1}
HOLDING = (Status.HOLDS_ALWAYS, Status.HOLDS_ON_FAMILY)


@click.group()
def cli():
    """
    Exact Codazzi and quasi-statistical classification on the seven
    three-dimensional Lorentzian Lie group families G1..G7.

    Parameters are written in ASCII: a=alpha, b=beta, g=gamma, d=delta and
    e=eta (the sign of G4).
    """
    logging.basicConfig(filename=LOGGING_FILE, level=logging.INFO)


@contextmanager
def domain_errors():
    """Map engine errors to click exits: usage problems exit 2, starvation exits 3."""
    try:
        yield
    except SamplerStarvation as error:
        click.echo(f"Error: {error}", err=True)
        click.get_current_context().exit(3)
    except LieCodazziError as error:
        raise click.UsageError(str(error))


def _eta(value):
    return None if value is None else ETA_CHOICES[value]


def _unicode(flag):
    if flag is not None:
        return flag
    stream = click.get_text_stream("stdout")
    encoding = (getattr(stream, "encoding", None) or "").lower()
    return stream.isatty() and "utf" in encoding


def case_options(function):
    """--group, --eta and --connection, shared by every per-case command."""
    function = click.option(
        "--connection",
        required=True,
        help="bott, canonical, kn (kobayashi_nomizu) or lc (levi_civita)",
    )(function)
    function = click.option(
        "--eta",
        type=click.Choice(list(ETA_CHOICES)),
        default=None,
        help="Sign of G4 (+1 or -1); required for G4 only",
    )(function)
    function = click.option(
        "--group", required=True, help="Family name, G1..G7"
    )(function)
    return function


def output_options(function):
    function = click.option(
        "--unicode/--ascii",
        "unicode",
        default=None,
        help="Greek parameter names in text output (default: when the terminal supports it)",
    )(function)
    function = click.option(
        "--json", "as_json", is_flag=True, help="Print JSON instead of text"
    )(function)
    return function


@click.command(
    name="list",
    help="Lists the seven families with their brackets and constraints; G4 is shown for both signs of eta",
)
@click.option("--family", default=None, help="Only this family")
@output_options
def list_families(family, as_json, unicode):
    with domain_errors():
        names = [normalize_family(family)] if family else list(FAMILIES)
        algebras = [make_group(name, eta) for name in names for eta in etas_for(name)]
    if as_json:
        click.echo(dumps(family_listing_json(algebras)))
    else:
        click.echo(family_listing(algebras, _unicode(unicode)))


@click.command(
    name="compute",
    help="Prints a symbolic table for one family and connection",
)
@case_options
@click.option(
    "--object",
    "object_name",
    type=click.Choice(OBJECTS),
    default="connection",
    show_default=True,
)
@output_options
def compute(group, eta, connection, object_name, as_json, unicode):
    with domain_errors():
        algebra = make_group(group, _eta(eta))
        built = connection_for(algebra, connection_kind(connection))
        if as_json:
            output = dumps(object_json(built, object_name))
        else:
            output = object_text(built, object_name, _unicode(unicode))
    click.echo(output)


@click.command(
    name="check",
    help='Checks the Codazzi or quasi-statistical system on a solution family such as "a=0, b=0" or "a=2*b, g!=0"; '
    "without --solution the system is printed and checked for all parameters",
)
@case_options
@click.option(
    "--structure", type=click.Choice([s.value for s in Structure]), required=True
)
@click.option("--solution", default=None, help="Solution family text")
@output_options
@click.pass_context
def check(ctx, group, eta, connection, structure, solution, as_json, unicode):
    with domain_errors():
        algebra = make_group(group, _eta(eta))
        system = build_system(algebra, connection_kind(connection), Structure(structure))
        family = UNRESTRICTED if solution is None else parse_solution(solution, algebra.eta)
        verdict = check_on_family(system, family)

    if as_json:
        document = {"verdict": verdict_json(verdict)}
        if solution is None:
            document["system"] = system_json(system)
        click.echo(dumps(document))
    else:
        if solution is None:
            click.echo(system_text(system, _unicode(unicode)))
        click.echo(verdict_text(verdict, _unicode(unicode)))
    ctx.exit(0 if verdict.status in HOLDING else 1)


@click.command(
    name="sample",
    help="Evaluates the system at seeded random admissible points outside the excluded solution families",
)
@case_options
@click.option(
    "--structure", type=click.Choice([s.value for s in Structure]), required=True
)
@click.option("--exclude", multiple=True, help="Solution family to stay outside of (repeatable)")
@click.option(
    "--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS, show_default=True
)
@click.option(
    "--seed", type=int, default=DEFAULT_SEED, envvar=SEED_ENV_VAR, show_default=True
)
@output_options
def sample(group, eta, connection, structure, exclude, trials, seed, as_json, unicode):
    with domain_errors():
        algebra = make_group(group, _eta(eta))
        system = build_system(algebra, connection_kind(connection), Structure(structure))
        excluded = [parse_solution(text, algebra.eta) for text in exclude]
        verdict = sample_necessity(system, excluded, trials, seed)
    if as_json:
        click.echo(dumps(verdict_json(verdict)))
    else:
        click.echo(verdict_text(verdict, _unicode(unicode)))


@click.command(
    name="audit",
    help="Re-derives every encoded classification claim and compares the printed tables with recomputation; "
    "exits 1 when a claim conflicts with recomputation",
)
@click.option(
    "--trials", type=click.IntRange(min=1), default=DEFAULT_TRIALS, show_default=True
)
@click.option(
    "--seed", type=int, default=DEFAULT_SEED, envvar=SEED_ENV_VAR, show_default=True
)
@click.option("--out", default=None, help="Write the JSON report to this file")
@click.option("--json", "as_json", is_flag=True, help="Print JSON instead of the table")
@click.pass_context
def audit(ctx, trials, seed, out, as_json):
    with domain_errors():
        report = verify_paper_theorems(trials_per_case=trials, seed=seed)
    document = dumps(audit_json(report))
    if out is not None:
        try:
            with open(out, "w", encoding="utf-8") as file:
                file.write(document + "\n")
        except OSError as error:
            raise click.BadParameter(str(error), param_hint="--out")
    click.echo(document if as_json else audit_table(report))
    ctx.exit(1 if report.has_discrepancies else 0)


cli.add_command(list_families)
cli.add_command(compute)
cli.add_command(check)
cli.add_command(sample)
cli.add_command(audit)


if __name__ == "__main__":
    cli()
