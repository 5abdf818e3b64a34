# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Batches of episodes and what is reported about them."""

import logging
from concurrent.futures import ProcessPoolExecutor

from ..error import InstanceInfeasible
from .config import Regime, warn_unused_knobs
from .episode import EpisodeRecord, run_episode

logger = logging.getLogger(__name__)


def _mean(values):
    values = list(values)
    if not values:
        return 0.0
    return sum(values) / float(len(values))


class AggregateReport(object):
    """Means over the episodes of one configuration.

    sr: fraction of episodes where every agent arrived
    el: mean makespan, failures count as max_steps
    icr: mean fraction of agents that arrived
    """

    COLUMNS = ("width", "height", "density", "regime", "loop_detection",
               "n_agents", "max_steps", "instances", "sr", "el", "icr",
               "collisions", "obstacle_collisions", "loop_events",
               "oscillations", "infeasible")

    def __init__(self, config, records):
        self.config = config
        self.records = list(records)
        self.n_instances = len(self.records)
        self.sr = _mean(1.0 if r.success else 0.0 for r in self.records)
        self.el = _mean(r.makespan for r in self.records)
        self.icr = _mean(r.icr for r in self.records)
        self.collisions = _mean(r.collisions for r in self.records)
        self.obstacle_collisions = _mean(
            r.obstacle_collisions for r in self.records)
        self.loop_events = _mean(
            _mean(r.loop_events) for r in self.records)
        self.oscillations = _mean(
            _mean(r.oscillations) for r in self.records)
        self.failures = {}
        for r in self.records:
            if r.failure_reason is not None:
                self.failures[r.failure_reason] = \
                    self.failures.get(r.failure_reason, 0) + 1

    def __repr__(self):
        return "<AggregateReport %s SR=%.3f EL=%.2f ICR=%.3f>" % (
            self.config.label(), self.sr, self.el, self.icr)

    def row(self):
        """Values for COLUMNS"""

        c = self.config
        return {
            "width": c.width,
            "height": c.height,
            "density": c.density,
            "regime": c.regime.value,
            "loop_detection": c.loop_detection,
            "n_agents": c.n_agents,
            "max_steps": c.max_steps,
            "instances": self.n_instances,
            "sr": self.sr,
            "el": self.el,
            "icr": self.icr,
            "collisions": self.collisions,
            "obstacle_collisions": self.obstacle_collisions,
            "loop_events": self.loop_events,
            "oscillations": self.oscillations,
            "infeasible": self.failures.get("infeasible", 0),
        }


def run_instance(config, seed, trace=None, on_step=None):
    """run_episode(), with an infeasible instance recorded as a failure"""

    try:
        return run_episode(config, seed, trace=trace, on_step=on_step)
    except InstanceInfeasible as e:
        logger.warning("seed %d: %s", seed, e)
        return EpisodeRecord.failed(seed, config.n_agents, config.max_steps,
                                    "infeasible")


def run_batch(config, workers=None, trace=None, on_step=None):
    """Runs all instances of `config`; the report only depends on the seed
    list, not on how episodes are scheduled.

    :param trace: file-like for decision records, runs in this process
    :param on_step: passed to run_episode(), runs in this process
    """

    warn_unused_knobs(config)
    workers = config.workers if workers is None else workers
    seeds = config.instance_seeds()

    local = trace is not None or on_step is not None
    if workers > 1 and len(seeds) > 1 and not local:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            records = list(executor.map(
                run_instance, [config] * len(seeds), seeds))
    else:
        records = [run_instance(config, s, trace, on_step) for s in seeds]

    report = AggregateReport(config, records)
    logger.info("%s: SR=%.3f EL=%.2f ICR=%.3f", config.label(), report.sr,
                report.el, report.icr)
    return report


def run_sweep(config, agent_counts, workers=None):
    """One report per agent count"""

    return [run_batch(config.replace(n_agents=n), workers)
            for n in agent_counts]


ABLATION_CELLS = tuple(
    (regime, loop) for regime in (Regime.FULL, Regime.SHARED, Regime.LOCAL)
    for loop in (True, False))


def run_ablation_suite(base, agent_counts=None, workers=None):
    """Every information regime with loop detection on and off, over the
    agent counts (default: base.n_agents).
    """

    if agent_counts is None:
        agent_counts = [base.n_agents]

    reports = []
    for regime, loop in ABLATION_CELLS:
        logger.info("ablation cell: regime=%s loop_detection=%s",
                    regime.value, loop)
        # comm settings only matter for the shared map
        changes = {"regime": regime, "loop_detection": loop}
        if regime is not Regime.SHARED:
            changes.update(latency=0, drop_rate=0.0, broadcast_period=1)
        reports.extend(run_sweep(base.replace(**changes), agent_counts,
                                 workers))
    return reports


def compute_deltas(reports):
    """Differences of every report against the shared map with loop
    detection at the same agent count.

    :returns: list of dicts with the report's cell and d_sr, d_el, d_icr
    """

    reference = {}
    for report in reports:
        c = report.config
        if c.regime is Regime.SHARED and c.loop_detection:
            reference[c.n_agents] = report

    deltas = []
    for report in reports:
        ref = reference.get(report.config.n_agents)
        if ref is None:
            continue
        c = report.config
        deltas.append({
            "regime": c.regime.value,
            "loop_detection": c.loop_detection,
            "n_agents": c.n_agents,
            "d_sr": report.sr - ref.sr,
            "d_el": report.el - ref.el,
            "d_icr": report.icr - ref.icr,
        })
    return deltas
