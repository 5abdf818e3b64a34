# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import logging

import numpy as np

from ..gridworld import Action, generate_map, generate_instance, \
    make_agents, observe, occupancy_map, apply_joint_action
from ..sharedmap import BeliefMap, MapDelta, CommChannel, GridMemory, \
    extract_delta, fuse
from ..dstar import DStarLite
from ..hybrid import decide
from ..policy import make_policy
from ..util import derive_seeds
from .config import Regime

logger = logging.getLogger(__name__)


class EpisodeRecord(object):
    """The outcome of one episode.

    Per-agent lists are indexed by agent id. `arrival_times` holds None for
    agents that never arrived, `makespan` is max_steps on failure.
    """

    def __init__(self, seed, n_agents, max_steps):
        self.seed = seed
        self.n_agents = n_agents
        self.max_steps = max_steps
        self.success = False
        self.failure_reason = None
        self.makespan = max_steps
        self.steps = 0
        self.arrival_times = [None] * n_agents
        self.collisions = 0
        self.obstacle_collisions = 0
        self.mode_switches = [0] * n_agents
        self.loop_events = [0] * n_agents
        self.oscillations = [0] * n_agents
        self.rewards = [0.0] * n_agents
        self.completion_curve = []

    @classmethod
    def failed(cls, seed, n_agents, max_steps, reason):
        record = cls(seed, n_agents, max_steps)
        record.failure_reason = reason
        return record

    def __repr__(self):
        return "<EpisodeRecord seed=%d success=%r makespan=%d icr=%.3f>" % (
            self.seed, self.success, self.makespan, self.icr)

    @property
    def n_arrived(self):
        return sum(1 for t in self.arrival_times if t is not None)

    @property
    def icr(self):
        return self.n_arrived / float(self.n_agents)


def _episode_map(config, seed):
    density = config.density
    if config.density_range is not None:
        lo, hi = config.density_range
        density = float(np.random.default_rng(seed).uniform(lo, hi))
    return generate_map(config.width, config.height, density, seed)


def run_episode(config, seed, grid=None, tasks=None, on_step=None,
                trace=None, on_fused=None):
    """Runs one episode and returns its EpisodeRecord.

    :param grid: a GridMap to use instead of a generated one
    :param tasks: (start, goal) pairs to use instead of sampled ones
    :param on_step: called as on_step(step, agents, outcome, previous)
        after every joint action, `previous` being the positions before it
    :param trace: file-like receiving one DecisionTrace record per line
    :param on_fused: called as on_fused(step, agents, beliefs) once this
        step's observations and deliveries are in the beliefs
    :raises InstanceInfeasible:
    """

    map_seed, task_seed, channel_seed, policy_seed = derive_seeds(seed, 4)
    if grid is None:
        grid = _episode_map(config, map_seed)
    if tasks is None:
        tasks = generate_instance(grid, config.n_agents, task_seed)

    n = len(tasks)
    agents = make_agents(tasks, config.history_len)
    record = EpisodeRecord(seed, n, config.max_steps)
    radius = config.obs_radius
    regime = config.regime

    for agent in agents:
        if agent.pos == agent.goal:
            agent.exit(0)
            record.arrival_times[agent.id] = 0

    if regime is Regime.FULL:
        truth = BeliefMap.from_grid(grid)
        beliefs = [truth] * n
    else:
        beliefs = [BeliefMap(grid.width, grid.height) for _ in range(n)]
    memories = [GridMemory() for _ in range(n)]
    planners = [DStarLite(beliefs[a.id], a.pos, a.goal) if a.active else None
                for a in agents]
    policies = [make_policy(config.policy, seed=s, epsilon=config.epsilon)
                for s in derive_seeds(policy_seed, n)]

    channel = None
    if regime is Regime.SHARED:
        channel = CommChannel(n, config.latency, config.drop_rate,
                              channel_seed)
    pending = [[] for _ in range(n)]

    for step in range(1, config.max_steps + 1):
        active = [a for a in agents if a.active]
        if not active:
            break

        occupancy = occupancy_map(grid, agents, radius)
        observations = {}
        changed = dict((a.id, set()) for a in active)
        for agent in active:
            i = agent.id
            obs = observe(grid, agents, i, radius, occupancy)
            observations[i] = obs
            memories[i].update(obs)
            if regime is Regime.FULL:
                continue
            delta = extract_delta(obs, beliefs[i], i, step)
            changed[i] |= fuse(beliefs[i], delta)
            if channel is not None:
                pending[i].append(delta)
                if step % config.broadcast_period == 0:
                    channel.broadcast(MapDelta.merge(pending[i], i, step),
                                      step)
                    pending[i] = []

        due = channel.pop_due(step) if channel is not None else []
        if due and not config.drop_rate:
            # everyone got everything; an agent's own deltas are already
            # in its belief so fusing them again changes nothing
            batch = MapDelta.merge(delta for delta, _ in due)
            for agent in active:
                changed[agent.id] |= fuse(beliefs[agent.id], batch)
        elif due:
            for agent in active:
                received = [delta for delta, recipients in due
                            if agent.id in recipients]
                if received:
                    changed[agent.id] |= fuse(beliefs[agent.id],
                                              MapDelta.merge(received))
        if on_fused is not None:
            on_fused(step, agents, beliefs)

        for agent in active:
            if changed[agent.id]:
                planners[agent.id].apply_belief_delta(
                    changed[agent.id], agent.pos)

        actions = [Action.WAIT] * n
        for agent in active:
            i = agent.id
            previous_mode = agent.mode
            action, decision = decide(
                agent, observations[i], beliefs[i], planners[i], policies[i],
                memories[i], config.switch_threshold, config.loop_detection,
                config.loop_variant, step)
            actions[i] = action
            if previous_mode is not None and previous_mode is not agent.mode:
                record.mode_switches[i] += 1
            if decision.loop_detected:
                record.loop_events[i] += 1
            if trace is not None:
                trace.write(decision.to_record() + "\n")

        previous = [a.pos if a.active else None for a in agents]
        outcome = apply_joint_action(grid, agents, actions, step)
        record.steps = step
        record.collisions += len(outcome.collisions)
        record.obstacle_collisions += len(outcome.obstacle_collisions)

        for agent in active:
            i = agent.id
            record.rewards[i] += outcome.rewards[i]
            history = agent.history
            if len(history) >= 3 and history[-1] == history[-3]:
                record.oscillations[i] += 1
        for i in outcome.newly_arrived:
            record.arrival_times[i] = step
        record.completion_curve.append(record.n_arrived / float(n))

        if on_step is not None:
            on_step(step, agents, outcome, previous)

    if all(not a.active for a in agents):
        record.success = True
        record.makespan = max(t for t in record.arrival_times)
    else:
        record.failure_reason = "timeout"

    logger.debug("episode %d: success=%r makespan=%d icr=%.3f collisions=%d",
                 seed, record.success, record.makespan, record.icr,
                 record.collisions)
    return record

