"""
Run a packaged experiment end to end: replicas, aggregation, bound checks
and output files.
"""
from __future__ import annotations

from collections import defaultdict
from pathlib import Path
import time
from typing import Optional, Union

from pandas import DataFrame

from cutpath.calculations import ExperimentFactory
from cutpath.common.log import CUTPATH_LOGGER, LOG_LEVEL_REPORT
from cutpath.data.experiment import ExperimentReport
from cutpath.monitors import summarize
from cutpath.parsers import write_csv, write_summary
from cutpath.scheduler import ReplicaScheduler
from cutpath.schemas.experiment import ExperimentConfig

LOGGER = CUTPATH_LOGGER.getChild("workflows")


def _collect(results: list[dict[str, list[dict]]]) -> dict[str, DataFrame]:
    """Concatenate per-replica rows table by table, in replica order."""
    rows = defaultdict(list)
    for result in results:
        for name, table in result.items():
            rows[name].extend(table)
    return {name: DataFrame(table) for name, table in rows.items()}


def _plain(value):
    """Convert numpy scalars for YAML."""
    if hasattr(value, "item"):
        return value.item()
    return value


def run_experiment(
    config: ExperimentConfig,
    out: Optional[Union[str, Path]] = None,
    write: bool = True,
) -> ExperimentReport:
    """Run the experiment named by `config`.

    Replicas are spread over `config.run.workers` processes (or
    `CUTPATH_THREADS`); tables are assembled in replica order, so every
    CSV is the same for any worker count.

    Parameters
    ----------
    `config` : `ExperimentConfig`
        The resolved configuration.
    `out` : `Optional[str | Path]`
        Output directory, `config.experiment.out` by default.
    `write` : `bool`
        Write the CSV files and the summary.

    Returns
    -------
    `ExperimentReport`
        Tables, aggregates, bound verdicts and the written paths.

    Raises
    ------
    `ValidationError`
        If the experiment cannot be set up from `config`.
    `OutputError`
        If an output file cannot be written.
    """
    experiment = ExperimentFactory(config.experiment.id)(config)
    LOGGER.log(LOG_LEVEL_REPORT, f"running {experiment} (seed {experiment.seed}, {experiment.replicas} replicas)")

    start = time.perf_counter()
    experiment.prepare()

    scheduler = ReplicaScheduler(config.run.workers, config.run.batch)
    tables = _collect(scheduler.map(experiment.replica, range(experiment.replicas)))
    aggregates = experiment.aggregate(tables)
    bounds = experiment.check(tables, aggregates)

    report = ExperimentReport(
        experiment=experiment.ID,
        tables=tables,
        aggregates=aggregates,
        bounds=bounds,
        config=config.echo(),
        runtime=time.perf_counter() - start,
    )

    if write:
        _write_outputs(report, Path(out if out is not None else config.experiment.out))

    counts = summarize(bounds)
    verdict = "all satisfied" if report.satisfied else f"{len(report.violations)} violated"
    LOGGER.log(LOG_LEVEL_REPORT, f"{experiment.ID} done in {report.runtime:.1f} s: {len(bounds)} checks, {verdict}")
    for quantity, tally in counts.items():
        LOGGER.log(LOG_LEVEL_REPORT, f"  {quantity}: {tally['satisfied']} satisfied, {tally['violated']} violated")

    return report


def _write_outputs(report: ExperimentReport, directory: Path) -> None:
    prefix = report.experiment
    written = []

    for name, frame in report.tables.items():
        path = directory / f"{prefix}_{name}.csv"
        write_csv(frame, path, report.config)
        written.append(path)

    for name, frame in report.aggregates.items():
        path = directory / f"{prefix}_aggregate_{name}.csv"
        write_csv(frame, path, report.config)
        written.append(path)

    path = directory / f"{prefix}_bounds.csv"
    write_csv(report.bounds_frame(), path, report.config)
    written.append(path)

    report.files = [str(path) for path in written]

    summary_path = directory / f"{prefix}_summary.yaml"
    write_summary(
        summary_path, {
            "experiment": report.experiment,
            "satisfied": report.satisfied,
            "checks": summarize(report.bounds),
            "violations": [{key: _plain(value) for key, value in violation.as_row().items()}
                           for violation in report.violations],
            "files": [path.name for path in written],
            "config": report.config,
        })
    report.files.append(str(summary_path))
