import logging
import sys
from glob import glob
from os.path import join
from typing import Optional

import click
from tabulate import tabulate

from pyrwre import __version__
from pyrwre.errors import ConfigurationError
from pyrwre.errors import LabError
from pyrwre.experiment.config import ExperimentConfig
from pyrwre.experiment.report import load_summary
from pyrwre.experiment.report import read_table
from pyrwre.experiment.runner import run_experiment
from pyrwre.logging import DEFAULT_LOGGING_CONFIG
from pyrwre.logging import logger


def load_config(path: str, seed: Optional[int], workers: Optional[int], out: Optional[str]) -> ExperimentConfig:
    config = ExperimentConfig.from_file(path)
    return config.override(seed=seed, workers=workers, out=out)


def run_verb(verb: str, path: str, seed: Optional[int], workers: Optional[int], out: Optional[str], progress: bool):
    """Load, check and run one experiment, exiting with the error's code on failure"""
    try:
        config = load_config(path, seed, workers, out)
        if config.experiment.verb != verb:
            raise ConfigurationError('kind', f'`{config.kind}` runs under `pyrwre {config.experiment.verb}`')
        report = run_experiment(config, progress=progress)
    except LabError as e:
        logger.critical('%s: %s', e.error_id, e)
        sys.exit(e.exit_code)
    logger.info('Config digest %s', report.config_digest)
    logger.info('Finished in %.1fs', report.wall_clock)


def experiment_options(func):
    func = click.option('--verbose', '-v', is_flag=True, help='Log per-replica detail')(func)
    func = click.option('--out', '-o', type=str, default=None, help='Output directory, overrides the config')(func)
    func = click.option('--workers', '-w', type=click.IntRange(min=1), default=None, help='Worker processes')(func)
    func = click.option('--seed', '-s', type=click.IntRange(0, 2**64 - 1), default=None, help='Master seed')(func)
    func = click.option('--config', '-c', 'path', type=str, required=True, help='Path to the experiment JSON')(func)
    return func


def set_verbosity(verbose: bool) -> None:
    if verbose:
        logger.setLevel(logging.DEBUG)


@click.group()
@click.version_option(__version__)
@click.pass_context
def cli(*_args, **_kwargs):
    if not logging.getLogger().hasHandlers():
        logging.config.dictConfig(DEFAULT_LOGGING_CONFIG)


@cli.command(help='Simulate and dump a single trajectory')
@experiment_options
@click.pass_context
def simulate(_ctx, path: str, seed: Optional[int], workers: Optional[int], out: Optional[str], verbose: bool) -> None:
    set_verbosity(verbose)
    run_verb('simulate', path, seed, workers, out, progress=False)


@cli.command(help='Run a Monte Carlo estimator: box-decay, direction, survival, regeneration, mixing')
@experiment_options
@click.pass_context
def estimate(_ctx, path: str, seed: Optional[int], workers: Optional[int], out: Optional[str], verbose: bool) -> None:
    set_verbosity(verbose)
    run_verb('estimate', path, seed, workers, out, progress=sys.stderr.isatty())


@cli.command(help='Compute an exact oracle: oracle-enumerate, oracle-pattern, oracle-chung, oracle-kalikow')
@experiment_options
@click.pass_context
def oracle(_ctx, path: str, seed: Optional[int], workers: Optional[int], out: Optional[str], verbose: bool) -> None:
    set_verbosity(verbose)
    run_verb('oracle', path, seed, workers, out, progress=False)


@cli.command(help='Print the tables of an output directory')
@click.option('--out', '-o', type=str, required=True, help='Output directory of a previous run')
@click.option('--max-rows', type=int, default=50, help='Rows shown per table')
@click.pass_context
def report(_ctx, out: str, max_rows: int) -> None:
    try:
        summary = load_summary(out)
    except LabError as e:
        logger.critical('%s: %s', e.error_id, e)
        sys.exit(e.exit_code)
    logger.info('%s, config digest %s, seed %s', summary['kind'], summary['config_digest'], summary['seed'])
    for path in sorted(glob(join(out, '*.csv'))):
        table = read_table(path)
        logger.info('\n%s (%s rows)', table.name, len(table.rows))
        logger.info(tabulate(table.rows[:max_rows], headers=table.columns))
    for key, value in sorted(summary['results'].items()):
        logger.info('%s: %s', key, value)


if __name__ == '__main__':
    cli(prog_name='pyrwre')
