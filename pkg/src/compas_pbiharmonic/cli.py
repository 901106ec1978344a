"""
Console script for compas_pbiharmonic.
"""

import functools
import os
import sys

import click
import dotenv
import numpy as np
from compas.data import json_dumps

import compas_pbiharmonic
from compas_pbiharmonic import HERE
from compas_pbiharmonic import init_pbiharmonic
from compas_pbiharmonic import set_verbose
from compas_pbiharmonic.errors import SchemaError
from compas_pbiharmonic.errors import error_code
from compas_pbiharmonic.job import RunConfig
from compas_pbiharmonic.job import csv_rows_from_oracle
from compas_pbiharmonic.job import csv_rows_from_sweep
from compas_pbiharmonic.job import csv_rows_from_table
from compas_pbiharmonic.job import dump_csv
from compas_pbiharmonic.job import dump_document
from compas_pbiharmonic.job import load_document
from compas_pbiharmonic.results import SpectrumDatabase
from compas_pbiharmonic.results import SpectrumTable
from compas_pbiharmonic.solvers import DiscreteProblem
from compas_pbiharmonic.solvers import mu1_curve
from compas_pbiharmonic.solvers import oracle_p2
from compas_pbiharmonic.spectrum import build_verify_report
from compas_pbiharmonic.spectrum import enumerate_spectrum
from compas_pbiharmonic.spectrum import mu1_concavity_check
from compas_pbiharmonic.spectrum import p_sweep


def _reporting_errors(func):
    """Turn library errors into one JSON record on stderr and exit code 2."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (ValueError, ArithmeticError, RuntimeError, OSError, KeyError) as e:
            click.echo(json_dumps({"error": error_code(e), "message": str(e)}), err=True)
            sys.exit(2)

    return wrapper


def _common(func):
    func = click.option("--verbose", is_flag=True, help="Print progress messages.")(func)
    func = click.option("--seed", type=int, default=None, help="Seed of the random probes.")(func)
    func = click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output path, stdout by default.")(func)
    func = click.option("--config", "config_path", type=click.Path(dir_okay=False), required=True, help="JSON run configuration.")(func)
    return func


def _load(config_path, seed, verbose):
    if verbose:
        set_verbose(True)
    config = RunConfig.from_file(config_path)
    if seed is not None:
        config.seed = seed
    return config


def _emit(text, out):
    if out:
        with open(out, "w", newline="") as f:
            f.write(text)
    else:
        click.echo(text, nl=False)


def _run_name(config_path, run):
    return run or os.path.splitext(os.path.basename(config_path))[0]


# -------------------------------- MAIN ----------------------------------#
@click.group()
def main():
    """pbiharmonic main.

    Eigenvalues of the weighted Navier p-biharmonic problem on [0, 1].
    Run `pbiharmonic COMMAND --help` for the options of every command.
    """
    pass


@main.command()
@_common
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Also write the flat sign,k,p,lambda table.")
@click.option("--db", "db_path", type=click.Path(dir_okay=False), default=None, help="Also store the eigenvalues in a SQLite database.")
@click.option("--run", default=None, help="Run name in the database, by default the configuration name.")
@_reporting_errors
def solve(config_path, out, seed, verbose, csv_path, db_path, run):
    """Enumerate both eigenvalue sequences and verify them."""
    config = _load(config_path, seed, verbose)
    if config.p is None:
        raise SchemaError("'solve' needs a single exponent 'p'.")
    table = enumerate_spectrum(config.problem(), config.kmax, config.branches, seed=config.seed)
    _emit(dump_document(table), out)
    if csv_path:
        dump_csv(csv_rows_from_table(table), csv_path)
    if db_path:
        db = SpectrumDatabase(db_path)
        db.insert_table(_run_name(config_path, run), table)
        db.close()
    sys.exit(0 if table.verify.passed else 1)


@main.command("sweep-p")
@_common
@click.option("--csv", "csv_path", type=click.Path(dir_okay=False), default=None, help="Also write the flat sign,k,p,lambda table.")
@click.option("--db", "db_path", type=click.Path(dir_okay=False), default=None, help="Also store the curves in a SQLite database.")
@click.option("--run", default=None, help="Run name in the database, by default the configuration name.")
@_reporting_errors
def sweep_p(config_path, out, seed, verbose, csv_path, db_path, run):
    """Continuity tables p -> lambda_k(p) for k = 1..kmax."""
    config = _load(config_path, seed, verbose)
    if config.p_grid is None:
        raise SchemaError("'sweep-p' needs an exponent grid 'p_grid'.")
    sweep = p_sweep(config.problem(), list(range(1, config.kmax + 1)), config.p_grid, config.branches, raise_errors=False)
    _emit(dump_document(sweep), out)
    if csv_path:
        dump_csv(csv_rows_from_sweep(sweep), csv_path)
    if db_path:
        db = SpectrumDatabase(db_path)
        db.insert_sweep(_run_name(config_path, run), sweep)
        db.close()
    sys.exit(0 if sweep.passed else 1)


@main.command("oracle-p2")
@_common
@click.option("--format", "fmt", type=click.Choice(["csv", "json"]), default="csv", help="Output format.")
@_reporting_errors
def oracle(config_path, out, seed, verbose, fmt):
    """Dense p=2 spectrum of the discrete problem."""
    config = _load(config_path, seed, verbose)
    plus, minus = oracle_p2(DiscreteProblem(config.grid_n, config.weight, 2.0))
    plus, minus = plus[: config.kmax], minus[: config.kmax]
    if fmt == "csv":
        _emit(dump_csv(csv_rows_from_oracle(plus, minus)), out)
    else:
        document = {
            "format": "compas_pbiharmonic.oracle",
            "version": 1,
            "grid_n": config.grid_n,
            "weight": config.weight.to_config(),
            "plus": [lam for lam, _ in plus],
            "minus": [lam for lam, _ in minus],
        }
        _emit(dump_document(document), out)


@main.command()
@click.option("--input", "input_path", type=click.Path(dir_okay=False), required=True, help="A table written by 'solve'.")
@click.option("--out", type=click.Path(dir_okay=False), default=None, help="Output path, stdout by default.")
@click.option("--seed", type=int, default=None, help="Seed of the random probes.")
@click.option("--verbose", is_flag=True, help="Print progress messages.")
@_reporting_errors
def verify(input_path, out, seed, verbose):
    """Re-run every check on a previously emitted table."""
    if verbose:
        set_verbose(True)
    table = SpectrumTable.__from_data__(load_document(input_path))
    report = build_verify_report(table, seed=seed)
    _emit(dump_document(report), out)
    sys.exit(0 if report.passed else 1)


@main.command("mu-curve")
@_common
@_reporting_errors
def mu_curve(config_path, out, seed, verbose):
    """Samples of the curve lambda -> mu_1(lambda)."""
    config = _load(config_path, seed, verbose)
    if not config.lambdas:
        raise SchemaError("'mu-curve' needs the abscissae 'lambdas'.")
    problem = config.problem()
    points = mu1_curve(DiscreteProblem.from_problem(problem), config.lambdas)
    check = mu1_concavity_check(points)
    document = {
        "format": "compas_pbiharmonic.mu1",
        "version": 1,
        "problem": problem.__data__,
        "points": [point.__data__ for point in points],
        "concavity": check.__data__,
    }
    _emit(dump_document(document), out)
    sys.exit(0 if check.passed else 1)


@main.command("init-env")
@click.option("--path", type=click.Path(dir_okay=False), default=None, help="Where to write the .env file, by default the package folder.")
@click.option("--set", "settings", multiple=True, help="KEY=VALUE pair replacing a default, e.g. STEP_COUNT=8192.")
@_reporting_errors
def init_env(path, settings):
    """Write a default .env file and change settings in it.

    Example usage:\n
        pbiharmonic init-env --set STEP_COUNT=8192 --set VERBOSE=True
    """
    env = path or os.path.join(HERE, ".env")
    init_pbiharmonic(env)
    for setting in settings:
        key, sep, value = setting.partition("=")
        if not sep or key.upper() not in compas_pbiharmonic.DEFAULTS:
            raise SchemaError("Unknown setting {!r}; known: {}".format(setting, ", ".join(compas_pbiharmonic.DEFAULTS)))
        dotenv.set_key(env, key.upper(), value, quote_mode="never")
        click.echo("{} set to {}".format(key.upper(), value))


# -------------------------------- DEBUG ----------------------------------#
if __name__ == "__main__":
    np.seterr(all="ignore")
    sys.exit(main())
