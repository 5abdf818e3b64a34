# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Incremental shortest paths over a BeliefMap (D* Lite).

The search runs backwards from the goal, so when the agent moves or the
belief changes only the affected part of the g/rhs fields is repaired.
Unit edge costs, 4-connected, UNKNOWN cells are traversable, Manhattan
distance as heuristic.
"""

import heapq
import math
import logging

import numpy as np

from .error import GoalBlocked, StalePlanner
from .gridworld import Action, Cell, Coord, ACTION_DELTAS, MOVES
from .util import ResultTuple, manhattan
from . import sharedmap

logger = logging.getLogger(__name__)

INF = math.inf

PlanResult = ResultTuple._new_type(["next_action", "path_cost"])

_NEIGHBOR_TABLES = {}


def _neighbor_table(width, height):
    """Per flat index a tuple of (action, neighbor index), in action order"""

    key = (width, height)
    if key not in _NEIGHBOR_TABLES:
        table = []
        for r in range(height):
            for c in range(width):
                entry = []
                for action in MOVES:
                    dr, dc = ACTION_DELTAS[action]
                    nr, nc = r + dr, c + dc
                    if 0 <= nr < height and 0 <= nc < width:
                        entry.append((action, nr * width + nc))
                table.append(tuple(entry))
        _NEIGHBOR_TABLES[key] = tuple(table)
    return _NEIGHBOR_TABLES[key]


class DStarLite(object):
    """Planner state of one agent.

    :param belief: the agent's BeliefMap
    :param start: current position of the agent
    :param goal: goal cell, must not be BLOCKED in the belief
    :raises GoalBlocked:
    """

    def __init__(self, belief, start, goal):
        if not belief.in_bounds(goal):
            raise ValueError("goal %r is outside the map" % (tuple(goal),))
        self.width = belief.width
        self.height = belief.height
        self.goal = Coord(*goal)
        self.expansions = 0
        self._neighbors = _neighbor_table(self.width, self.height)
        self._init(belief, start)

    def _init(self, belief, start):
        if belief.is_blocked(self.goal):
            raise GoalBlocked(
                "goal %r is blocked in the belief" % (tuple(self.goal),))

        n = self.width * self.height
        self.belief = belief
        self.last_start = Coord(*start)
        self._goal_index = self._index(self.goal)
        self._result = None
        self.km = 0
        self.g = [INF] * n
        self.rhs = [INF] * n
        self._blocked = bytearray(belief.blocked_mask().ravel().tobytes())
        self._heap = []
        self._open = {}
        self.belief_version = belief.version
        self._computed_version = None

        self.rhs[self._goal_index] = 0
        self._push(self._goal_index)

    def reinitialize(self, belief, start):
        """Throws away all search state and starts over on `belief`"""

        self._init(belief, start)

    def __repr__(self):
        return "<DStarLite goal=%r start=%r km=%d open=%d>" % (
            tuple(self.goal), tuple(self.last_start), self.km,
            len(self._open))

    def _index(self, coord):
        return coord[0] * self.width + coord[1]

    def _coord(self, index):
        return Coord(*divmod(index, self.width))

    def _h(self, index):
        r, c = divmod(index, self.width)
        return abs(r - self.last_start[0]) + abs(c - self.last_start[1])

    def _key(self, index):
        m = min(self.g[index], self.rhs[index])
        return (m + self._h(index) + self.km, m)

    def key(self, coord):
        return self._key(self._index(coord))

    def _push(self, index):
        g, rhs = self.g[index], self.rhs[index]
        m = g if g < rhs else rhs
        r, c = divmod(index, self.width)
        start = self.last_start
        k1 = m + abs(r - start[0]) + abs(c - start[1]) + self.km
        self._open[index] = (k1, m)
        # flat (k1, k2, index) entries, stale ones are skipped in _top()
        heapq.heappush(self._heap, (k1, m, index))

    def _top(self):
        heap, open_ = self._heap, self._open
        while heap:
            k1, k2, index = heap[0]
            key = open_.get(index)
            if key is not None and key[0] == k1 and key[1] == k2:
                return key, index
            heapq.heappop(heap)

    def queue_items(self):
        """Sorted (key, coord) pairs currently in the priority queue"""

        return sorted((key, self._coord(i)) for i, key in self._open.items())

    def in_queue(self, coord):
        return self._index(coord) in self._open

    def _update_vertex(self, index):
        g, rhs, blocked = self.g, self.rhs, self._blocked
        if index != self._goal_index:
            if blocked[index]:
                rhs[index] = INF
            else:
                best = INF
                for _, other in self._neighbors[index]:
                    if not blocked[other] and g[other] + 1 < best:
                        best = g[other] + 1
                rhs[index] = best
        if g[index] != rhs[index]:
            self._push(index)
        else:
            self._open.pop(index, None)

    def _set_blocked(self, index, value):
        if self._blocked[index] == value:
            return False
        self._blocked[index] = value
        self._result = None
        self._update_vertex(index)
        for _, other in self._neighbors[index]:
            self._update_vertex(other)
        return True

    def _move_start(self, start):
        start = Coord(*start)
        if start != self.last_start:
            self.km += manhattan(self.last_start, start)
            self.last_start = start

    def _resync(self, belief):
        """Picks up belief changes that were never passed as a delta"""

        self.belief = belief
        if belief.version == self.belief_version:
            return
        current = np.frombuffer(bytes(self._blocked), dtype=np.uint8)
        wanted = belief.blocked_mask().ravel()
        changed = np.nonzero(current.astype(bool) != wanted)[0]
        if len(changed):
            logger.debug("planner for %r resyncing %d cells",
                         tuple(self.goal), len(changed))
        for index in changed:
            self._set_blocked(int(index), int(wanted[index]))
        self.belief_version = belief.version

    def apply_belief_delta(self, delta, current_pos):
        """Repairs the search after cells changed in the belief.

        :param delta: a MapDelta or an iterable of changed coordinates
            (values are then read from the belief)
        :param current_pos: the agent's position now
        """

        if isinstance(delta, sharedmap.MapDelta):
            rows, cols, values = delta.arrays()
        else:
            coords = list(delta)
            rows = np.array([c[0] for c in coords], dtype=np.intp)
            cols = np.array([c[1] for c in coords], dtype=np.intp)
            values = self.belief.cells[rows, cols]
        if not len(rows):
            return self

        self._move_start(current_pos)
        # UNKNOWN and FREE are both traversable
        blocked = (values == Cell.BLOCKED).astype(np.uint8)
        indices = rows * self.width + cols
        for index, value in zip(indices.tolist(), blocked.tolist()):
            self._set_blocked(index, value)
        self.belief_version = self.belief.version
        return self

    def compute_shortest_path(self, belief, start=None):
        """Expands cells until the start cell is locally consistent.

        :returns: PlanResult; next_action is None iff path_cost is inf
        """

        self._resync(belief)
        if start is not None:
            self._move_start(start)
        if self._result is not None and \
                self._computed_version == belief.version and \
                self._result[0] == self.last_start:
            return self._result[1]

        g, rhs = self.g, self.rhs
        s = self._index(self.last_start)
        while True:
            top = self._top()
            if top is None:
                break
            k_old, u = top
            if not (k_old < self._key(s) or rhs[s] != g[s]):
                break
            self.expansions += 1
            k_new = self._key(u)
            if k_old < k_new:
                self._push(u)
            elif g[u] > rhs[u]:
                g[u] = rhs[u]
                del self._open[u]
                for _, other in self._neighbors[u]:
                    self._update_vertex(other)
            else:
                g[u] = INF
                self._update_vertex(u)
                for _, other in self._neighbors[u]:
                    self._update_vertex(other)

        self._computed_version = belief.version
        if rhs[s] == INF:
            result = PlanResult((None, INF))
        else:
            result = PlanResult((self.get_first_action(self.last_start),
                                 int(rhs[s])))
        self._result = (self.last_start, result)
        return result

    def get_first_action(self, pos):
        """The move that descends g from `pos`.

        WAIT at the goal, None if the goal cannot be reached from `pos`.

        :raises StalePlanner: if the belief changed since the last
            compute_shortest_path()
        """

        if self._computed_version is None or \
                self.belief.version != self._computed_version:
            raise StalePlanner(
                "belief is at version %d, last plan was computed at %r" % (
                    self.belief.version, self._computed_version))

        pos = Coord(*pos)
        if pos == self.goal:
            return Action.WAIT
        index = self._index(pos)
        if self.g[index] == INF:
            return None

        best, best_cost = None, INF
        for action, other in self._neighbors[index]:
            if self._blocked[other] or self._blocked[index]:
                continue
            cost = 1 + self.g[other]
            if cost < best_cost:
                best, best_cost = action, cost
        return best

    def path(self, pos, limit=None):
        """Cells visited by following get_first_action() from `pos`"""

        pos = Coord(*pos)
        cells = [pos]
        limit = self.width * self.height if limit is None else limit
        while pos != self.goal and len(cells) <= limit:
            action = self.get_first_action(pos)
            if action is None:
                break
            pos = Coord(pos[0] + ACTION_DELTAS[action][0],
                        pos[1] + ACTION_DELTAS[action][1])
            cells.append(pos)
        return cells

    def waypoint(self, pos, steps):
        """The cell `steps` moves down the path from `pos` (or the goal if
        that is closer), None if the goal can't be reached from `pos`.
        """

        if self.g[self._index(pos)] == INF and Coord(*pos) != self.goal:
            return None
        return self.path(pos, limit=steps)[-1]

    def values(self, which="g"):
        """The g or rhs field as a height x width float array"""

        field = {"g": self.g, "rhs": self.rhs}[which]
        return np.array(field, dtype=float).reshape(self.height, self.width)

    def dump_values(self, which="g"):
        """Text grid of g or rhs, '#' blocked and 'inf' unreachable"""

        field = self.values(which)
        lines = []
        for r in range(self.height):
            row = []
            for c in range(self.width):
                if self._blocked[r * self.width + c]:
                    row.append("#")
                elif field[r, c] == INF:
                    row.append("inf")
                else:
                    row.append("%d" % field[r, c])
            lines.append(" ".join("%3s" % v for v in row))
        return "\n".join(lines) + "\n"


def init_planner(belief, start, goal):
    return DStarLite(belief, start, goal)


def compute_shortest_path(state, belief, start=None):
    return state.compute_shortest_path(belief, start)


def apply_belief_delta(state, delta, current_pos):
    return state.apply_belief_delta(delta, current_pos)


def get_first_action(state, pos):
    return state.get_first_action(pos)
