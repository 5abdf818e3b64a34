# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Command line interface.

Settings are applied in this order, later ones win: built-in defaults,
--preset, --config, individual flags.
"""

import os
import sys
import logging
import argparse

from . import const
from .error import PomapfError, ConfigError
from .policy import list_policies
from .hybrid import LOOP_VARIANTS
from .bench import config as config_mod
from .bench.config import Regime, ScenarioConfig, get_preset, PRESETS
from .bench.batch import run_batch, run_sweep, run_ablation_suite, \
    compute_deltas
from .bench.results import emit_results, load_table, FORMATS, RESULTS_NAME

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s - %(levelname)s - %(message)s"


def _agent_list(value):
    try:
        counts = [int(v) for v in value.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError("expected N or N,N,..., got %r" %
                                         value)
    if not counts or min(counts) < 1:
        raise argparse.ArgumentTypeError("agent counts must be positive")
    return counts


def _map_size(value):
    try:
        return config_mod.parse_map_size(value)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e))


def _scenario_options():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("scenario")
    group.add_argument("--preset", choices=sorted(PRESETS),
                       help="start from a named scenario")
    group.add_argument("--config", metavar="FILE",
                       help="key = value scenario file")
    group.add_argument("--map-size", type=_map_size, metavar="WxH")
    group.add_argument("--density", type=float)
    group.add_argument("--agents", type=_agent_list, metavar="N[,N...]")
    group.add_argument("--max-steps", type=int)
    group.add_argument("--instances", type=int)
    group.add_argument("--seed", type=int)
    group.add_argument("--regime", choices=[r.value for r in Regime])
    group.add_argument("--no-loop-detection", action="store_true")
    group.add_argument("--loop-variant", choices=LOOP_VARIANTS)
    group.add_argument("--switch-threshold", type=int)
    group.add_argument("--latency", type=int)
    group.add_argument("--drop-rate", type=float)
    group.add_argument("--policy", choices=list_policies())
    group.add_argument("--epsilon", type=float)
    group.add_argument("--workers", type=int)
    return parser


def _output_options():
    parser = argparse.ArgumentParser(add_help=False)
    group = parser.add_argument_group("output")
    group.add_argument("--out", default="results", metavar="DIR")
    group.add_argument("--format", dest="formats", action="append",
                       choices=FORMATS,
                       help="can be given more than once (default: table)")
    return parser


def _log_options():
    parser = argparse.ArgumentParser(add_help=False)
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="store_true")
    verbosity.add_argument("-q", "--quiet", action="store_true")
    return parser


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pomapf",
        description="Multi-agent pathfinding under partial observability")
    parser.add_argument("--version", action="version",
                        version="%(prog)s " + ".".join(map(str, const.VERSION)))
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    common = [_scenario_options(), _output_options(), _log_options()]

    run = sub.add_parser("run", parents=common,
                         help="run one scenario configuration")
    run.add_argument("--trace", metavar="FILE",
                     help="write one decision record per agent and step")
    sub.add_parser("sweep", parents=common,
                   help="run a scenario over several agent counts")
    sub.add_parser("ablate", parents=common,
                   help="information regimes x loop detection")

    plot = sub.add_parser("plot", parents=[_log_options()],
                          help="plot a results table")
    plot.add_argument("table", nargs="?",
                      help="results table (default: OUT/%s)" % RESULTS_NAME)
    plot.add_argument("--out", default="results", metavar="DIR")
    return parser


def setup_logging(args):
    level = logging.INFO
    if args.verbose:
        level = logging.DEBUG
    elif args.quiet:
        level = logging.WARNING
    logging.basicConfig(level=level, format=LOG_FORMAT)


_FLAG_FIELDS = (
    ("density", "density"),
    ("max_steps", "max_steps"),
    ("instances", "n_instances"),
    ("seed", "seed"),
    ("regime", "regime"),
    ("loop_variant", "loop_variant"),
    ("switch_threshold", "switch_threshold"),
    ("latency", "latency"),
    ("drop_rate", "drop_rate"),
    ("policy", "policy"),
    ("epsilon", "epsilon"),
    ("workers", "workers"),
)


def build_config(args):
    """Returns (ScenarioConfig, agent counts), raises ConfigError"""

    config = ScenarioConfig()
    agent_counts = None
    if args.preset:
        preset = get_preset(args.preset)
        config, agent_counts = preset.config, list(preset.agent_counts)
    if args.config:
        config = config_mod.load_config(args.config, base=config)

    changes = {}
    if args.map_size is not None:
        changes["width"], changes["height"] = args.map_size
        if args.max_steps is None:
            changes["max_steps"] = const.STEP_CAPS.get(
                args.map_size, config.max_steps)
    for attr, field in _FLAG_FIELDS:
        value = getattr(args, attr)
        if value is not None:
            changes[field] = value
    if args.no_loop_detection:
        changes["loop_detection"] = False
    if args.agents:
        agent_counts = args.agents
        changes["n_agents"] = agent_counts[0]
    if changes.get("n_instances") and config.seeds and \
            changes["n_instances"] != len(config.seeds):
        changes["seeds"] = ()
    config = config.replace(**changes)

    if agent_counts is None:
        agent_counts = [config.n_agents]
    return config, agent_counts


def _summary(reports):
    for report in reports:
        print("%-40s SR=%.3f EL=%7.2f ICR=%.3f collisions=%.2f" % (
            report.config.label(), report.sr, report.el, report.icr,
            report.collisions))


def _run(args):
    config, agent_counts = build_config(args)
    formats = args.formats or ["table"]

    if args.command == "run":
        # a preset's agent counts are for sweeps, run keeps its n_agents
        if args.agents and len(args.agents) > 1:
            raise ConfigError("run takes a single agent count, use sweep")
        if args.trace:
            with open(args.trace, "w") as h:
                reports = [run_batch(config, trace=h)]
        else:
            reports = [run_batch(config)]
        deltas = None
    elif args.command == "sweep":
        reports = run_sweep(config, agent_counts)
        deltas = None
    else:
        reports = run_ablation_suite(config, agent_counts)
        deltas = compute_deltas(reports)

    _summary(reports)
    emit_results(reports, args.out, formats, deltas)


def _plot(args):
    from .bench.plot import plot_metric

    table = args.table or os.path.join(args.out, RESULTS_NAME)
    rows = load_table(table)
    out = os.path.dirname(table) if args.table else args.out
    for metric in ("sr", "el"):
        path = plot_metric(rows, metric, os.path.join(out, "%s.png" % metric))
        if path is not None:
            logger.info("wrote %s", path)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    setup_logging(args)

    try:
        if args.command == "plot":
            _plot(args)
        else:
            _run(args)
    except (PomapfError, OSError) as e:
        print("%s: error: %s" % (parser.prog, e), file=sys.stderr)
        return 1
    return 0
