"""
Command line interface (cli) for cutpath.

The ``cutpath`` console script is declared in pyproject.toml and calls `main`.
Exit status is 0 on success, 1 on invalid input or usage and 2 on any
other cutpath error.
"""
from __future__ import annotations

from pathlib import Path
import sys
from typing import Optional, Sequence

import click
from pandas import DataFrame
import pydantic

from .analysis.oracle import bound_sweep
from .common.exceptions import CutpathError, ValidationError
from .common.log import CUTPATH_LOGGER, configure_logging
from .electrical.solvers import solve_voltage
from .generators.lattice import build_grid_disk, build_horn
from .generators.layered import build_layered_graph, layer_schedule
from .helpers import replica_rng
from .parsers import read_network, write_csv, write_metadata, write_network, write_trace_binary
from .schemas.experiment import PRESETS, load_experiment_config
from .schemas.generators import GridDiskSpec, HornSpec, LayeredGraphSpec, StopCondition
from .walks.simulation import simulate_walk
from .walks.statistics import cut_times, cutpoints

LOGGER = CUTPATH_LOGGER.getChild("cli")

METADATA_SUFFIX = ".meta"


def _int_grid(text: str) -> list[int]:
    """Parse ``1,2,5`` and inclusive ranges ``0:2000`` (mixed freely)."""
    values = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        low, sep, high = item.partition(":")
        try:
            values.extend(range(int(low), int(high) + 1) if sep else [int(low)])
        except ValueError as err:
            raise click.BadParameter(f"'{item}' is neither an integer nor a range lo:hi") from err
    if not values:
        raise click.BadParameter("empty grid")
    return values


@click.group()
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
def cli(verbose):
    """Random walk paths, cut-times and electrical networks."""
    configure_logging(verbose)


@cli.command()
@click.option(
    "--family",
    type=click.Choice(["layered", "disk", "horn"]),
    default="layered",
    show_default=True,
    help="Graph family.",
)
@click.option("--alpha", type=float, default=2.0, show_default=True, help="Growth exponent (layered, horn).")
@click.option("--d", "degree", type=int, default=3, show_default=True, help="Expander degree (layered).")
@click.option("--jmax", type=int, default=80, show_default=True, help="Last layer (layered).")
@click.option("--radius", type=int, default=30, show_default=True, help="Disk radius (disk).")
@click.option("--dimension", type=int, default=3, show_default=True, help="Lattice dimension (horn).")
@click.option("--x1-max", type=int, default=40, show_default=True, help="Horn length (horn).")
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")
@click.option(
    "--out",
    "-o",
    type=click.Path(dir_okay=False),
    required=True,
    help=f"Graph file (ugraph v1); metadata goes to OUT{METADATA_SUFFIX}.",
)
def generate(family, alpha, degree, jmax, radius, dimension, x1_max, seed, out):
    """Generate a graph and write it with its metadata sidecar."""
    if family == "layered":
        graph = build_layered_graph(LayeredGraphSpec(alpha=alpha, d=degree, j_max=jmax, seed=seed))
        net = graph.network
        _, j0 = layer_schedule(alpha, 0)
        metadata = {"family": family, "alpha": alpha, "d": degree, "seed": seed, "j0": j0, "jmax": jmax}
    elif family == "disk":
        net = build_grid_disk(GridDiskSpec(radius=radius))
        metadata = {"family": family, "radius": radius, "origin": 0, "sink": net.terminals["sink"]}
    else:
        net = build_horn(HornSpec(dimension=dimension, alpha=alpha, x1_max=x1_max))
        metadata = {"family": family, "dimension": dimension, "alpha": alpha, "x1_max": x1_max, "origin": 0}

    write_network(net, out)
    write_metadata(f"{out}{METADATA_SUFFIX}", metadata)
    click.echo(f"wrote {net} to {out}")


@cli.command()
@click.option("--graph", type=click.Path(exists=True, dir_okay=False), required=True, help="Graph file (ugraph v1).")
@click.option("--start", type=int, default=0, show_default=True, help="Start vertex.")
@click.option(
    "--stop",
    default="budget",
    show_default=True,
    help="Stop condition: vertex:V[,V...], layer:L or budget.",
)
@click.option("--seed", type=int, default=0, show_default=True, help="Master seed.")
@click.option("--budget", type=int, default=1_000_000, show_default=True, help="Step budget per replica.")
@click.option("--replicas", type=int, default=1, show_default=True, help="Number of walks.")
@click.option(
    "--lookahead",
    type=int,
    default=None,
    help="Cut-time censoring window W (default T // 10).",
)
@click.option("--trace/--no-trace", default=False, help="Also write every vertex sequence as a binary trace.")
@click.option("--out", "-o", required=True, help="Output prefix: PREFIX_summary.csv, PREFIX_r<replica>.trace.")
def walk(graph, start, stop, seed, budget, replicas, lookahead, trace, out):
    """Simulate walks on a graph and summarize their cut-times and cutpoints."""
    net = read_network(graph)
    condition = StopCondition.parse(stop, budget)

    rows = []
    for replica in range(replicas):
        record = simulate_walk(net, start, condition, replica_rng(seed, 0, replica))
        if record.vertices is None:
            n_cut_times = n_cutpoints = None
        else:
            n_cut_times = cut_times(record, lookahead).n_cut_times if record.steps else 0
            n_cutpoints = len(cutpoints(record)) if record.start != record.end else 0
        rows.append({
            "replica": replica,
            "steps": record.steps,
            "stop_reason": record.stop_reason.value,
            "n_cut_times": n_cut_times,
            "n_cutpoints": n_cutpoints,
        })
        if trace and record.vertices is not None:
            write_trace_binary(f"{out}_r{replica}.trace", record.vertices)

    header = {"graph": graph, "start": start, "stop": stop, "seed": seed, "budget": budget}
    write_csv(DataFrame(rows), f"{out}_summary.csv", header)
    click.echo(f"wrote {replicas} walk summaries to {out}_summary.csv")


@cli.command()
@click.option("--graph", type=click.Path(exists=True, dir_okay=False), required=True, help="Graph file (ugraph v1).")
@click.option("--source", type=int, required=True, help="Source vertex (potential 1).")
@click.option("--sink", type=int, required=True, help="Sink vertex (potential 0).")
def resist(graph, source, sink):
    """Print the effective conductance, resistance and s between two vertices."""
    solution = solve_voltage(read_network(graph), source, sink)
    click.echo(f"C_eff={solution.conductance:.12g}")
    click.echo(f"R_eff={solution.resistance:.12g}")
    click.echo(f"s={solution.s:.12g}")


@cli.command()
@click.option("--a", "a_grid", default="8,16,32", show_default=True, help="Even targets, e.g. 8,16 or 4:8.")
@click.option("--t", "t_grid", default="0:2000", show_default=True, help="Times of the hitting bound.")
@click.option("--m", "m_grid", default="0:80", show_default=True, help="Visit counts of the visits bound.")
@click.option("--laziness", type=float, default=0.0, show_default=True, help="Stay probability after the first step.")
@click.option("--out", "-o", type=click.Path(dir_okay=False), default=None, help="CSV file (default: stdout).")
def bounds(a_grid, t_grid, m_grid, laziness, out):
    """Sweep the exact conditioned walk laws against their bounds."""
    sweep = bound_sweep(_int_grid(a_grid), _int_grid(t_grid), _int_grid(m_grid), laziness=laziness)
    violations = int((~sweep["satisfied"]).sum())

    if out:
        write_csv(sweep, out, {"a": a_grid, "t": t_grid, "m": m_grid, "laziness": laziness})
        click.echo(f"wrote {len(sweep)} rows to {out}, {violations} violations")
    else:
        click.echo(sweep.to_csv(index=False, float_format="%.12g", lineterminator="\n"), nl=False)


@cli.group()
def experiment():
    """Packaged experiments E1 to E6."""


@experiment.command("run")
@click.argument("experiment_id", metavar="ID", type=click.Choice(sorted(PRESETS)))
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="Config file.")
@click.option("--seed", type=int, default=None, help="Master seed (overrides the config).")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory (overrides the config).")
@click.option("--workers", type=int, default=None, help="Worker processes (overrides the config).")
@click.option("-v", "--verbose", is_flag=True, help="Log at DEBUG level.")
def run(experiment_id, config_path, seed, out, workers, verbose):
    """Run experiment ID and write its CSV files and summary."""
    from .workflows.experiment import run_experiment

    if verbose:
        configure_logging(True)

    overrides = {"experiment": {"seed": seed, "out": out}, "run": {"workers": workers}}
    config = load_experiment_config(experiment_id, config_path, overrides)
    report = run_experiment(config)
    click.echo(f"{experiment_id}: {len(report.bounds)} checks, {len(report.violations)} violated; "
               f"wrote {len(report.files)} files to {Path(config.experiment.out)}")


def cli_dispatch(argv: Optional[Sequence[str]] = None) -> int:
    """Run the command line and return its exit status.

    0 on success, 1 on invalid input or usage, 2 on any other cutpath error.
    """
    try:
        result = cli.main(args=list(argv) if argv is not None else None, prog_name="cutpath", standalone_mode=False)
    except click.ClickException as err:
        err.show()
        return 1
    except click.Abort:
        click.echo("Aborted!", err=True)
        return 1
    except (ValidationError, pydantic.ValidationError, ValueError) as err:
        click.echo(f"Error: {err}", err=True)
        return 1
    except CutpathError as err:
        click.echo(f"Error: {err}", err=True)
        return 2
    return result if isinstance(result, int) else 0


def main() -> None:
    sys.exit(cli_dispatch())
