# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import time

import numpy as np


def repair_vs_replan(size, density, seed):
    """Walks one agent to its goal on a belief that is revealed as it goes.

    Returns (incremental expansions, full replan expansions) per step in
    which the belief changed.
    """

    from pomapf.gridworld import generate_map, generate_instance, \
        make_agents, observe, step_coord
    from pomapf.sharedmap import BeliefMap, extract_delta, fuse
    from pomapf.dstar import DStarLite

    grid = generate_map(size, size, density, seed)
    (start, goal), = generate_instance(grid, 1, seed)
    agents = make_agents([(start, goal)])
    agent = agents[0]
    belief = BeliefMap(size, size)
    planner = DStarLite(belief, start, goal)
    planner.compute_shortest_path(belief, start)

    samples = []
    for step in range(1, 4 * size * size):
        if agent.pos == agent.goal:
            break
        changed = fuse(belief, extract_delta(observe(grid, agents, 0), belief))
        before = planner.expansions
        if changed:
            planner.apply_belief_delta(changed, agent.pos)
        action = planner.compute_shortest_path(belief, agent.pos).next_action
        if changed:
            fresh = DStarLite(belief, agent.pos, goal)
            fresh.compute_shortest_path(belief)
            samples.append((planner.expansions - before, fresh.expansions))
        if action is None:
            break
        agent.move_to(step_coord(agent.pos, action))
    return samples


def run(quick=False):
    from pomapf.bench.config import get_preset
    from pomapf.bench.batch import run_batch

    print(("### pomapf " + "#" * 80)[:80])

    size = 32 if quick else 64
    t = time.time()
    samples = []
    for seed in range(3 if quick else 10):
        samples.extend(repair_vs_replan(size, 0.3, seed))
    t = time.time() - t
    repair = np.array([s[0] for s in samples], dtype=float)
    replan = np.array([s[1] for s in samples], dtype=float)
    ratio = np.median(repair / np.maximum(replan, 1.0))
    print("%20s: %6.2f ms" % ("repair walk", t * (10 ** 3)))
    print("%20s: %6.0f" % ("repair expansions", repair.mean()))
    print("%20s: %6.0f" % ("replan expansions", replan.mean()))
    print("%20s: %6.3f" % ("median ratio", ratio))

    config = get_preset("perf-64").config
    if quick:
        config = config.replace(width=32, height=32, n_agents=16,
                                max_steps=256)
    config = config.replace(n_instances=5 if quick else 20)
    t = time.time()
    report = run_batch(config, workers=1)
    t = time.time() - t
    print("%20s: %6.2f ms" % ("episode", t * (10 ** 3) / config.n_instances))
    print("%20s: %6.3f" % ("SR", report.sr))
    return 0
