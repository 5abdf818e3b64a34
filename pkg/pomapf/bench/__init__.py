# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Experiment harness: scenario configs, episodes, batches, reports."""

from .config import Regime, ScenarioConfig, Preset, PRESETS, get_preset, \
    parse_config, dump_config, load_config
from .episode import EpisodeRecord, run_episode
from .batch import AggregateReport, run_batch, run_sweep, \
    run_ablation_suite, compute_deltas
from .results import emit_results, load_table


__all__ = ["Regime", "ScenarioConfig", "Preset", "PRESETS", "get_preset",
           "parse_config", "dump_config", "load_config", "EpisodeRecord",
           "run_episode", "AggregateReport", "run_batch", "run_sweep",
           "run_ablation_suite", "compute_deltas", "emit_results",
           "load_table"]
