"""
Module: cli
Description: Command Line Interface for the stratification engines: reads
             weight systems, configurations, types and cell graphs, prints
             deterministic JSON reports and manages the result cache

Author: pmac
Created: 2026-10-19
Modified: 2026-10-19

Dependencies:
- click: 8.1.7+ - Command line interface framework
- rich: 13.7.0+ - Table output for cache listings

Usage:
    # Index set of a weight system
    gitstrata index-set --input data/examples/weight_systems/sym4.json

    # Points on the projective line
    gitstrata p1 --n 5 --points "inf,inf,inf,0,1" --i 3

    # Cache maintenance
    gitstrata cache list

Notes:
    - Reports go to stdout as sorted-key JSON; logs and errors go to stderr
    - Input errors exit with status 2; success exits 0
    - Settings are re-read from the environment on every invocation
"""

import functools
import sys
from typing import Any, Callable, Dict, Optional, TypeVar

import click
from rich.console import Console
from rich.table import Table

from .blowup import run
from .config import Settings
from .data_loader import load_cell_graph, load_sheaves, load_weight_system
from .errors import GitStrataError, InputError
from .hilbert import HilbertPolynomial, HNType, beta_of_type, validate_hn_type
from .hkkn import (
    Cocharacter,
    PointSupport,
    index_set,
    limit_support,
    mu,
    parabolic_blocks,
    stratum_assignment,
    stratum_of,
    sym_n_weight_system,
)
from .logging_config import configure_logging
from .p1_config import (
    Configuration,
    classify,
    membership_ts,
    membership_YZ,
    optimal_frame,
    quotient_hypotheses,
    to_support,
)
from .rational import format_rational
from .schemas import Report
from .sheaf import (
    Length2Sheaf,
    SplitBundle,
    end_dim,
    hilbert_poly,
    hn_filtration,
    is_coprime_on_p1,
    is_indecomposable,
    is_tau_stable,
    stab_dims,
    to_blowup_cells,
)
from .utils import (
    cache_key,
    cache_lookup,
    cache_store,
    canonical_json,
    cleanup_old_cache_entries,
    clear_cache,
    content_hash,
    format_bytes,
    list_cache_entries,
)

F = TypeVar("F", bound=Callable[..., Any])

EXIT_ERROR = 2


def handles_errors(command: F) -> F:
    """Map GitStrataError to a ✗ line on stderr and exit status 2."""

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return command(*args, **kwargs)
        except GitStrataError as e:
            click.echo(f"✗ {e}", err=True)
            sys.exit(EXIT_ERROR)

    return wrapper  # type: ignore[return-value]


def emit_report(
    ctx: click.Context,
    command: str,
    inputs: Dict[str, Any],
    outputs: Dict[str, Any],
    raw_input: str = "",
) -> None:
    settings: Settings = ctx.obj["settings"]
    report = Report(
        command=command,
        inputs=inputs,
        inputs_hash=content_hash(canonical_json(inputs), raw_input),
        outputs=outputs,
        engine_version=settings.engine_version,
    )
    click.echo(canonical_json(report.model_dump()), nl=False)


def _raw_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError:
        raise InputError(f"file not found: {path}", field="input")


@click.group()
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Override GITSTRATA_LOGGING_LEVEL for this run",
)
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str]) -> None:
    """gitstrata: exact instability stratifications"""
    current = Settings()
    configure_logging(log_level or current.logging_level, current.log_format)
    ctx.ensure_object(dict)
    ctx.obj["settings"] = current


@cli.command("index-set")
@click.option("--input", "input_path", required=True, help="Weight system JSON file")
@click.option("--no-cache", is_flag=True, help="Recompute even when cached")
@click.option("--workers", type=int, default=None, help="Process pool size")
@click.pass_context
@handles_errors
def index_set_cmd(
    ctx: click.Context, input_path: str, no_cache: bool, workers: Optional[int]
) -> None:
    """List the index set of strata of a weight system"""
    settings: Settings = ctx.obj["settings"]
    raw = _raw_text(input_path)
    ws = load_weight_system(input_path)
    key = cache_key("index-set", raw, settings.engine_version)

    outputs = None if no_cache else cache_lookup(key, settings)
    if outputs is None:
        betas = index_set(ws, workers=workers or settings.index_set_workers)
        outputs = {"betas": sorted(b.to_text() for b in betas)}
        if not no_cache:
            cache_store(key, "index-set", outputs, settings)
    emit_report(ctx, "index-set", {"input": input_path}, outputs, raw)


@cli.command()
@click.option("--input", "input_path", required=True, help="Weight system JSON file")
@click.option("--support", required=True, help='Support indices, e.g. "0,1,3"')
@click.pass_context
@handles_errors
def stratify(ctx: click.Context, input_path: str, support: str) -> None:
    """Assign a point support to its stratum"""
    raw = _raw_text(input_path)
    ws = load_weight_system(input_path)
    x = PointSupport.parse(support)
    assignment = stratum_assignment(x, ws)
    outputs: Dict[str, Any] = assignment.to_json()
    if assignment.translated is not None:
        lam = Cocharacter(assignment.beta)
        outputs["limit_support"] = limit_support(assignment.translated, lam, ws).to_json()
        outputs["mu"] = format_rational(mu(assignment.translated, lam, ws))
    else:
        outputs["limit_support"] = None
        outputs["mu"] = None
    emit_report(ctx, "stratify", {"input": input_path, "support": x.to_json()}, outputs, raw)


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Number of points")
@click.option("--points", required=True, help='Points, e.g. "inf,inf,inf,0,1"')
@click.option("--i", "i", type=int, default=None, help="Points at infinity for Y/Z tests")
@click.pass_context
@handles_errors
def p1(ctx: click.Context, n: int, points: str, i: Optional[int]) -> None:
    """Classify n points on the projective line"""
    c = Configuration.parse(points)
    if c.n != n:
        raise InputError(f"expected {n} points, got {c.n}", field="points")
    framed = optimal_frame(c)
    outputs: Dict[str, Any] = {
        "points": c.to_text(),
        "beta": format_rational(classify(c)),
        "support": to_support(c).to_json(),
        "framed": framed.to_text(),
        "engine_beta": stratum_of(to_support(framed), sym_n_weight_system(n)).to_text(),
    }
    if i is not None:
        outputs["yz"] = membership_YZ(c, i).value
        outputs["ts"] = membership_ts(c, i)
        outputs["quotient_hypotheses"] = quotient_hypotheses(n, i).to_json()
    emit_report(ctx, "p1", {"n": n, "points": points, "i": i}, outputs)


@cli.command("beta-type")
@click.option("--tau", required=True, help='HN type, e.g. "t+2;t+1"')
@click.option("--P", "total", default=None, help="Expected total polynomial")
@click.option("--n", "n", type=int, required=True)
@click.option("--m", "m", type=int, required=True)
@click.pass_context
@handles_errors
def beta_type(ctx: click.Context, tau: str, total: Optional[str], n: int, m: int) -> None:
    """Compute beta(n, m, tau) and its parabolic block data"""
    hn_type = HNType.parse(tau)
    if total is not None:
        verdict = validate_hn_type(hn_type.entries, HilbertPolynomial.parse(total, field="P"))
        if not verdict:
            raise InputError(verdict.diagnostics[0], field="P")
    vector = beta_of_type(hn_type, n, m)
    blocks = parabolic_blocks(vector.expanded())
    outputs = {
        "tau": hn_type.to_json(),
        "P": str(hn_type.total),
        "beta_vector": vector.to_json(),
        "trace_check": format_rational(vector.trace),
        "blocks": blocks.to_json(),
    }
    emit_report(ctx, "beta-type", {"tau": tau, "P": total, "n": n, "m": m}, outputs)


@cli.command()
@click.option("--splitting", required=True, help='Splitting type, e.g. "2,0,0"')
@click.pass_context
@handles_errors
def hn(ctx: click.Context, splitting: str) -> None:
    """HN filtration of a split bundle on the projective line"""
    bundle = SplitBundle.parse(splitting)
    filtration = hn_filtration(bundle)
    outputs: Dict[str, Any] = filtration.to_json()
    outputs["P"] = str(hilbert_poly(bundle))
    outputs["end_dim"] = end_dim(bundle)
    if filtration.length == 2:
        record = Length2Sheaf.from_split_bundle(bundle)
        ustab, end_claim = stab_dims(record)
        outputs["length2"] = {
            "hom_dim": record.hom_dim,
            "tau_stable": is_tau_stable(record),
            "ustab_dim": ustab,
            "end_dim_claim": end_claim,
        }
    emit_report(ctx, "hn", {"splitting": bundle.to_text()}, outputs)


@cli.command()
@click.option("--input", "input_path", required=True, help="Cell graph JSON file")
@click.pass_context
@handles_errors
def blowup(ctx: click.Context, input_path: str) -> None:
    """Run the blow-up simulator on a cell graph"""
    raw = _raw_text(input_path)
    state = load_cell_graph(input_path)
    final, trace = run(state)
    outputs = {
        "initial": {"d_min": state.d_min, "d_max": state.d_max, "zmin": list(state.zmin_ids)},
        "steps": len(trace),
        "trace": [record.to_json() for record in trace],
        "final": final.to_json(),
    }
    emit_report(ctx, "blowup", {"input": input_path}, outputs, raw)


@cli.command()
@click.option("--input", "input_path", required=True, help="Length-2 sheaf records JSON")
@click.pass_context
@handles_errors
def sheaf(ctx: click.Context, input_path: str) -> None:
    """tau-stability, stabiliser dimensions and the blow-up of sheaf records"""
    raw = _raw_text(input_path)
    records = load_sheaves(input_path)
    rows = []
    for record in records:
        ustab, end_claim = stab_dims(record) if record.hom_dim is not None else (None, None)
        rows.append(
            {
                "label": record.label,
                "tau": record.tau.to_json(),
                "tau_stable": is_tau_stable(record),
                "indecomposable": is_indecomposable(record),
                "coprime": is_coprime_on_p1(record.tau),
                "ustab_dim": ustab,
                "end_dim_claim": end_claim,
            }
        )
    state = to_blowup_cells(records)
    final, trace = run(state)
    outputs = {
        "sheaves": rows,
        "blowup": {
            "steps": len(trace),
            "trace": [r.to_json() for r in trace],
            "survivors": list(final.survivor_ids),
        },
    }
    emit_report(ctx, "sheaf", {"input": input_path}, outputs, raw)


@cli.group()
def cache() -> None:
    """Result cache management commands"""
    pass


@cache.command("list")
@click.pass_context
def cache_list(ctx: click.Context) -> None:
    """List cached results"""
    settings: Settings = ctx.obj["settings"]
    entries = list_cache_entries(settings)
    if not entries:
        click.echo("No cache entries found")
        return

    table = Table(title=f"Cache: {settings.resolved_cache_dir()}")
    table.add_column("Key")
    table.add_column("Command")
    table.add_column("Size", justify="right")
    table.add_column("Created")
    for entry in entries:
        table.add_row(
            entry.key[:16],
            entry.command,
            format_bytes(entry.size_bytes),
            entry.created_at.strftime("%Y-%m-%d %H:%M:%S"),
        )
    Console().print(table)


@cache.command()
@click.pass_context
def cleanup(ctx: click.Context) -> None:
    """Clean up cache entries past the retention window"""
    result = cleanup_old_cache_entries(ctx.obj["settings"])
    if result["error"]:
        click.echo(f"✗ Cleanup failed: {result['error']}", err=True)
        sys.exit(EXIT_ERROR)
    click.echo(f"✓ Removed {result['deleted_count']} old cache entries")


@cache.command()
@click.option("--yes", is_flag=True, help="Do not ask for confirmation")
@click.pass_context
def clear(ctx: click.Context, yes: bool) -> None:
    """Remove every cached result"""
    if not yes and not click.confirm("This will delete every cached result. Continue?"):
        return
    removed = clear_cache(ctx.obj["settings"])
    click.echo(f"✓ Cleared {removed} cache entries")


if __name__ == "__main__":
    cli()
