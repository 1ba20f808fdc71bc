import csv
import os
from hashlib import blake2b
from os.path import join
from typing import Any
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence

import attr
import simplejson
from attr import dataclass

from pyrwre.errors import ConfigurationError
from pyrwre.logging import logger
from pyrwre.walk.trajectory import AugmentedTrajectory
from pyrwre.walk.trajectory import dump_trajectory

SUMMARY_FILE = 'summary.json'
RUN_FILE = 'run.json'
FORMATS = ('csv', 'json')


@dataclass(kw_only=True, frozen=True)
class Table:
    """One CSV body: stable column order, one list per row."""

    name: str
    columns: List[str]
    rows: List[List[Any]] = attr.Factory(list)


@dataclass(kw_only=True)
class ExperimentResult:
    kind: str
    tables: List[Table] = attr.Factory(list)
    summary: Dict[str, Any] = attr.Factory(dict)
    trajectories: Dict[str, AugmentedTrajectory] = attr.Factory(dict)
    streams: List[str] = attr.Factory(list)


@dataclass(kw_only=True, frozen=True)
class RunReport:
    config_digest: str
    out: str
    csv_paths: List[str]
    summary_path: Optional[str]
    run_path: Optional[str]
    wall_clock: float
    seed: int
    streams: List[str]


def format_value(value: Any) -> str:
    """CSV cell text; floats keep 17 significant digits so that float(text) recovers them exactly."""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, float):
        return format(value, '.17g')
    return str(value)


def inputs_digest(inputs: Any) -> str:
    canonical = simplejson.dumps(inputs, sort_keys=True, separators=(',', ':'), ignore_nan=True)
    return blake2b(canonical.encode(), digest_size=16).hexdigest()


def write_table(table: Table, directory: str) -> str:
    path = join(directory, f'{table.name}.csv')
    with open(path, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(table.columns)
        for row in table.rows:
            writer.writerow([format_value(x) for x in row])
    return path


def read_table(path: str) -> Table:
    with open(path, newline='') as file:
        rows = list(csv.reader(file))
    name = os.path.splitext(os.path.basename(path))[0]
    return Table(name=name, columns=rows[0] if rows else [], rows=[list(r) for r in rows[1:]])


def _write_json(data: Dict[str, Any], path: str) -> None:
    with open(path, 'w') as file:
        simplejson.dump(data, file, sort_keys=True, indent=2, ignore_nan=True)
        file.write('\n')


def emit_report(
    result: ExperimentResult,
    out: str,
    config_digest: str,
    seed: int,
    formats: Sequence[str] = FORMATS,
    run_info: Optional[Dict[str, Any]] = None,
) -> RunReport:
    """Write CSV tables, the deterministic summary.json and the run.json provenance file.

    :param result: tables and summary produced by an experiment
    :param out: output directory, created if missing
    :param formats: any of `csv` and `json`
    :param run_info: wall clock, worker count and other provenance kept out of summary.json
    """
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise ConfigurationError('format', f'unknown formats {sorted(unknown)}')
    try:
        os.makedirs(out, exist_ok=True)
    except OSError as e:
        raise ConfigurationError('out', f'cannot create {out}: {e}') from e

    csv_paths: List[str] = []
    if 'csv' in formats:
        for table in result.tables:
            csv_paths.append(write_table(table, out))
        for name, traj in result.trajectories.items():
            path = join(out, f'{name}.csv')
            dump_trajectory(traj, path)
            csv_paths.append(path)

    summary_path = run_path = None
    run_info = dict(run_info or {})
    if 'json' in formats:
        summary = {
            'schema_version': 1,
            'kind': result.kind,
            'config_digest': config_digest,
            'seed': seed,
            'streams': result.streams,
            'entries': [
                {'name': t.name, 'csv': f'{t.name}.csv', 'columns': t.columns, 'rows': len(t.rows)}
                for t in result.tables
            ],
            'results': result.summary,
        }
        summary_path = join(out, SUMMARY_FILE)
        _write_json(summary, summary_path)
        run_path = join(out, RUN_FILE)
        _write_json({'config_digest': config_digest, **run_info}, run_path)

    for path in csv_paths:
        logger.info('Wrote %s', path)
    if summary_path:
        logger.info('Wrote %s', summary_path)
    return RunReport(
        config_digest=config_digest,
        out=out,
        csv_paths=csv_paths,
        summary_path=summary_path,
        run_path=run_path,
        wall_clock=float(run_info.get('wall_clock', 0.0)),
        seed=seed,
        streams=list(result.streams),
    )


def load_summary(out: str) -> Dict[str, Any]:
    path = join(out, SUMMARY_FILE)
    try:
        with open(path) as file:
            return simplejson.load(file)
    except (OSError, simplejson.JSONDecodeError) as e:
        raise ConfigurationError('out', f'no readable {SUMMARY_FILE} in {out}: {e}') from e
