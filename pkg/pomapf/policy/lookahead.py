# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

from collections import deque

from ..gridworld import Action, Cell, Coord, MOVES, ACTION_DELTAS
from ..util import manhattan, chebyshev
from ._base import LocalPolicy, safe_moves, explore


def _passable(obs, memory, belief, coord):
    dr = coord[0] - obs.center[0]
    dc = coord[1] - obs.center[1]
    if obs.agent_at(dr, dc):
        return False
    if memory is not None and memory.get(coord) == Cell.BLOCKED:
        return False
    if obs.cell_at(dr, dc) in (Cell.BLOCKED, Cell.OUT_OF_BOUNDS):
        return False
    return belief is None or not belief.is_blocked(coord)


def plan_in_window(obs, memory, goal, belief=None):
    """Breadth-first search inside the observation window around visible
    agents, toward the reachable cell closest to `goal`.

    :returns: the first move of that path, WAIT if staying is best
    """

    start = Coord(*obs.center)
    first = {start: None}
    dist = {start: 0}
    queue = deque([start])
    while queue:
        cell = queue.popleft()
        for action in MOVES:
            dr, dc = ACTION_DELTAS[action]
            nxt = Coord(cell[0] + dr, cell[1] + dc)
            if nxt in first or chebyshev(nxt, start) > obs.radius:
                continue
            if not _passable(obs, memory, belief, nxt):
                continue
            first[nxt] = action if cell == start else first[cell]
            dist[nxt] = dist[cell] + 1
            queue.append(nxt)

    best = min(first, key=lambda c: (manhattan(c, goal), dist[c], c))
    if best == start:
        return Action.WAIT
    return first[best]


@LocalPolicy.register
class LookaheadPolicy(LocalPolicy):
    """Short-range search in the agent's grid memory"""

    NAME = "lookahead"

    def act(self, obs, memory, goal, belief=None):
        action = explore(self.rng, self.epsilon, safe_moves(obs, belief))
        if action is not None:
            return action
        return plan_in_window(obs, memory, goal, belief)
