"""Command-line front end.

Usage:
    permstat stat 321654 foze2          # 4
    permstat stat 321654 lrmax          # {(1,3),(4,6)}
    permstat map 7653124 theta          # 7163254
    permstat dist 231 3 inv             # distribution table
    permstat dist 231 8 maj,makl --compare
    permstat verify thm1 9
    permstat scan inv,foze2 8

Exit codes: 0 ok, 1 verification failure, 2 parse error, 3 unknown name,
4 precondition violation, 5 bound exceeded.
"""

from __future__ import annotations

import functools
import json
import sys
from dataclasses import dataclass, field

import click

from .bijections import BIJECTIONS
from .claims import DEFAULT_N_MAX, SUITES, verify as run_verify
from .distributions import (
    CLASSICAL_3,
    check_bound,
    distribution,
    equidistributed,
    parse_class,
    scan_quadruples,
)
from .errors import BoundExceededError, ContainmentError, PermutationError, UnknownStatisticError
from .patterns import INTEGER_STATISTICS, evaluate, get_statistic
from .perm import parse_perm
from .setstats import get_set_statistic, render

__all__ = ["RunConfig", "main"]

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_PARSE = 2
EXIT_UNKNOWN = 3
EXIT_PRECONDITION = 4
EXIT_BOUND = 5

FORMATS = ("plain", "csv", "json")


@dataclass
class RunConfig:
    n_max: int = 8
    patterns: tuple[str, ...] = CLASSICAL_3
    statistics: tuple[str, ...] = INTEGER_STATISTICS
    output_format: str = "plain"
    worker_count: int = 1
    deterministic: bool = field(default=True, init=False)

    def __post_init__(self):
        if self.output_format not in FORMATS:
            raise ValueError(f"unknown format {self.output_format!r}")
        if self.worker_count < 1:
            raise ValueError("worker_count must be at least 1")
        check_bound(self.n_max)


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _guard(fn):
    """Translate library exceptions into the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ContainmentError as exc:
            _fail(EXIT_PRECONDITION, f"precondition violated: {exc}")
        except UnknownStatisticError as exc:
            _fail(EXIT_UNKNOWN, str(exc))
        except BoundExceededError as exc:
            _fail(EXIT_BOUND, str(exc))
        except PermutationError as exc:
            _fail(EXIT_PARSE, str(exc))

    return wrapper


def _split_names(text: str) -> list[str]:
    return [t for t in (s.strip() for s in text.split(",")) if t]


format_option = click.option(
    "--format", "output_format", type=click.Choice(FORMATS), default="plain", show_default=True
)
workers_option = click.option("--workers", type=click.IntRange(min=1), default=1, show_default=True)


@click.group()
@click.version_option(package_name="artifact", prog_name="permstat")
def main():
    """Permutation statistics, bijections and equidistribution checks."""


@main.command()
@click.argument("perm")
@click.argument("name")
@_guard
def stat(perm, name):
    """Evaluate an integer or set statistic on PERM."""
    p = parse_perm(perm)
    try:
        click.echo(evaluate(get_statistic(name), p))
    except UnknownStatisticError:
        _, fn = get_set_statistic(name)
        click.echo(render(fn(p)))


@main.command(name="map")
@click.argument("perm")
@click.argument("bijection")
@_guard
def map_cmd(perm, bijection):
    """Apply a bijection (phi, phi-inv, psi, psi-inv, theta, theta-inv, cr-conjugate, ...)."""
    p = parse_perm(perm)
    fn = BIJECTIONS.get(bijection)
    if fn is None:
        raise UnknownStatisticError(f"unknown bijection {bijection!r}; choose from {', '.join(BIJECTIONS)}")
    click.echo(str(fn(p)))


def _emit(obj, output_format: str):
    text = {"plain": obj.to_plain, "csv": obj.to_csv, "json": obj.to_json}[output_format]()
    click.echo(text, nl=False)


@main.command()
@click.argument("pattern")
@click.argument("n", type=int)
@click.argument("stats")
@click.option("--compare", is_flag=True, help="Compare two sides separated by a comma; join with '+'.")
@click.option("--vs", "vs_pattern", default=None, help="Class for the second side of --compare.")
@format_option
@workers_option
@_guard
def dist(pattern, n, stats, compare, vs_pattern, output_format, workers):
    """Distribution of STATS over Av_N(PATTERN).

    PATTERN may be a classical pattern (231), a primed one (231') for the
    members starting with N, or 'all'.  Without --compare, comma-separated
    STATS form one joint key.
    """
    check_bound(n)
    if not compare:
        cls = parse_class(pattern, n)
        _emit(distribution(cls, _split_names(stats), workers=workers), output_format)
        return
    sides = _split_names(stats)
    if len(sides) != 2:
        raise UnknownStatisticError("--compare needs exactly two sides, e.g. maj,makl")
    first = distribution(parse_class(pattern, n), sides[0].split("+"), workers=workers)
    second = distribution(parse_class(vs_pattern or pattern, n), sides[1].split("+"), workers=workers)
    same = equidistributed(first, second)
    verdict = "EQUIDISTRIBUTED" if same else "NOT EQUIDISTRIBUTED"
    if output_format == "json":
        payload = {"equidistributed": same, "left": first.to_dict(), "right": second.to_dict()}
        click.echo(json.dumps(payload, ensure_ascii=False, sort_keys=True))
    else:
        click.echo(verdict)
    if not same:
        sys.exit(EXIT_VERIFY_FAILED)


@main.command()
@click.argument("suite", default="all")
@click.argument("n_max", required=False, type=int)
@click.option("--n-max", "n_max_opt", type=int, default=None, help=f"Largest length (default {DEFAULT_N_MAX}).")
@_guard
def verify(suite, n_max, n_max_opt):
    """Exhaustively check the claims of SUITE for every length up to N_MAX.

    SUITE is one of thm1, thm2, cor1, cor-mad, cor-other, thm4, prop5, prop6,
    cor-maj-makl, table1, table2, negative-controls or all.
    """
    if suite not in SUITES:
        raise UnknownStatisticError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    bound = n_max if n_max is not None else (n_max_opt if n_max_opt is not None else DEFAULT_N_MAX)
    check_bound(bound)
    results = run_verify(suite, bound)
    failed = [r for r in results if not r.passed]
    for r in results:
        click.echo(r.line())
    click.echo(f"# {len(results) - len(failed)}/{len(results)} claims hold for n <= {bound}")
    if failed:
        first = failed[0]
        if first.counterexample is not None:
            click.echo(f"counterexample: {first.counterexample}")
        sys.exit(EXIT_VERIFY_FAILED)


@main.command()
@click.argument("stats", default="all")
@click.argument("n_max", required=False, type=int)
@click.option("--n-max", "n_max_opt", type=int, default=None, help="Largest length (default 8).")
@click.option("--patterns", default=",".join(CLASSICAL_3), show_default=True)
@format_option
@workers_option
@_guard
def scan(stats, n_max, n_max_opt, patterns, output_format, workers):
    """Report every equidistributed quadruple (st1,st2;sigma,tau) up to N_MAX."""
    bound = n_max if n_max is not None else (n_max_opt if n_max_opt is not None else 8)
    names = None if stats == "all" else _split_names(stats)
    pats = [str(parse_perm(p)) for p in _split_names(patterns)]
    cfg = RunConfig(bound, tuple(pats), tuple(names or INTEGER_STATISTICS), output_format, workers)
    report = scan_quadruples(names, cfg.patterns, cfg.n_max, workers=cfg.worker_count)
    _emit(report, cfg.output_format)


if __name__ == "__main__":
    main()
