# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""The ground truth world: static 4-connected grid maps, seeded map and
task generation, local observations and the synchronous joint transition.
"""

import enum
import math
import itertools
from collections import namedtuple, deque, defaultdict

import numpy as np

from . import const
from .error import InstanceInfeasible, ObserverInactive, MalformedActionSet
from .util import cached_property


class Cell(enum.IntEnum):
    """Cell codes shared by maps, beliefs and observation windows"""

    FREE = 0
    BLOCKED = 1
    UNKNOWN = 2
    OUT_OF_BOUNDS = 3


class Action(enum.IntEnum):
    """The five actions, in tie-break order"""

    UP = 0
    DOWN = 1
    LEFT = 2
    RIGHT = 3
    WAIT = 4


ACTION_DELTAS = ((-1, 0), (1, 0), (0, -1), (0, 1), (0, 0))
MOVES = (Action.UP, Action.DOWN, Action.LEFT, Action.RIGHT)


class ConflictKind(enum.Enum):
    VERTEX = "vertex"
    EDGE = "edge"


Coord = namedtuple("Coord", ["row", "col"])


def step_coord(coord, action):
    dr, dc = ACTION_DELTAS[action]
    return Coord(coord[0] + dr, coord[1] + dc)


class GridMap(object):
    """A static occupancy grid, immutable once created.

    :param blocked: 2D array-like, truthy for blocked cells, indexed
        [row][col]
    """

    def __init__(self, blocked):
        blocked = np.array(blocked, dtype=bool)
        if blocked.ndim != 2 or 0 in blocked.shape:
            raise ValueError("a map needs at least one row and one column")
        blocked.setflags(write=False)
        self.blocked = blocked
        self.height, self.width = blocked.shape
        self._padded = {}

    @classmethod
    def empty(cls, width, height):
        return cls(np.zeros((height, width), dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, GridMap):
            return NotImplemented
        return np.array_equal(self.blocked, other.blocked)

    __hash__ = None

    def __repr__(self):
        return "<%s %dx%d, %d blocked>" % (
            type(self).__name__, self.width, self.height, self.n_blocked)

    @property
    def n_blocked(self):
        return int(self.blocked.sum())

    def in_bounds(self, coord):
        return 0 <= coord[0] < self.height and 0 <= coord[1] < self.width

    def is_free(self, coord):
        return self.in_bounds(coord) and not self.blocked[coord[0], coord[1]]

    def free_cells(self):
        """All free cells in row-major order"""

        rows, cols = np.nonzero(~self.blocked)
        return [Coord(int(r), int(c)) for r, c in zip(rows, cols)]

    @cached_property
    def components(self):
        """4-connected component label per cell, -1 for blocked cells"""

        labels = np.full(self.blocked.shape, -1, dtype=np.int32)
        current = 0
        for start in self.free_cells():
            if labels[start.row, start.col] != -1:
                continue
            labels[start.row, start.col] = current
            queue = deque([start])
            while queue:
                r, c = queue.popleft()
                for dr, dc in ACTION_DELTAS[:4]:
                    nr, nc = r + dr, c + dc
                    if 0 <= nr < self.height and 0 <= nc < self.width and \
                            not self.blocked[nr, nc] and labels[nr, nc] == -1:
                        labels[nr, nc] = current
                        queue.append((nr, nc))
            current += 1
        return labels

    def connected(self, a, b):
        labels = self.components
        la = labels[a[0], a[1]]
        return la != -1 and la == labels[b[0], b[1]]

    def padded(self, radius):
        """Cell codes surrounded by `radius` rings of OUT_OF_BOUNDS"""

        if radius not in self._padded:
            codes = np.where(self.blocked, Cell.BLOCKED, Cell.FREE)
            padded = np.pad(codes.astype(np.int8), radius, mode="constant",
                            constant_values=Cell.OUT_OF_BOUNDS)
            padded.setflags(write=False)
            self._padded[radius] = padded
        return self._padded[radius]

    def window(self, center, radius):
        """The (2R+1)x(2R+1) block of cell codes centered on `center`"""

        size = 2 * radius + 1
        r, c = center
        return self.padded(radius)[r:r + size, c:c + size]


class AgentState(object):

    def __init__(self, id_, start, goal, history_len=const.HISTORY_LEN):
        if history_len < 3:
            raise ValueError("history must hold at least 3 positions")
        self.id = id_
        self.start = Coord(*start)
        self.goal = Coord(*goal)
        self.pos = self.start
        self.active = True
        self.history = deque([self.start], maxlen=history_len)
        self.mode = None
        self.arrival_time = None

    def __repr__(self):
        return "<AgentState %d at %r goal=%r%s>" % (
            self.id, tuple(self.pos), tuple(self.goal),
            "" if self.active else " exited")

    def move_to(self, pos):
        self.pos = Coord(*pos)
        self.history.append(self.pos)

    def exit(self, step):
        """Leaves the map; exited agents take part in no conflict checks"""

        self.active = False
        self.arrival_time = step


def make_agents(tasks, history_len=const.HISTORY_LEN):
    return [AgentState(i, s, g, history_len) for i, (s, g) in enumerate(tasks)]


class Observation(object):
    """What one agent sees: obstacles and other active agents inside its
    window, plus its own goal. Nothing about other agents' goals.
    """

    __slots__ = ("center", "radius", "obstacle_window", "agent_window",
                 "own_goal")

    def __init__(self, center, radius, obstacle_window, agent_window,
                 own_goal):
        self.center = center
        self.radius = radius
        self.obstacle_window = obstacle_window
        self.agent_window = agent_window
        self.own_goal = own_goal

    @property
    def size(self):
        return 2 * self.radius + 1

    def to_local(self, coord):
        """Window index of a map coordinate, or None if outside"""

        r = coord[0] - self.center[0] + self.radius
        c = coord[1] - self.center[1] + self.radius
        if 0 <= r < self.size and 0 <= c < self.size:
            return r, c

    def cell_at(self, dr, dc):
        return Cell(self.obstacle_window[self.radius + dr, self.radius + dc])

    def agent_at(self, dr, dc):
        return bool(self.agent_window[self.radius + dr, self.radius + dc])


def occupancy_map(grid, agents, radius):
    """Active agent positions, padded like GridMap.padded(radius)"""

    occ = np.zeros((grid.height + 2 * radius, grid.width + 2 * radius),
                   dtype=bool)
    for agent in agents:
        if agent.active:
            occ[agent.pos[0] + radius, agent.pos[1] + radius] = True
    return occ


def observe(grid, agents, observer, radius=const.OBS_RADIUS, occupancy=None):
    """The local observation of agent `observer`.

    `occupancy` is an optional occupancy_map() shared by all observers of
    the same step.
    """

    agent = agents[observer]
    if not agent.active:
        raise ObserverInactive("agent %d has exited the map" % observer)

    if occupancy is None:
        occupancy = occupancy_map(grid, agents, radius)

    size = 2 * radius + 1
    r, c = agent.pos
    obstacles = grid.window(agent.pos, radius).copy()
    others = occupancy[r:r + size, c:c + size].copy()
    others[radius, radius] = False
    return Observation(agent.pos, radius, obstacles, others, agent.goal)


class StepOutcome(object):

    __slots__ = ("new_positions", "collisions", "rewards", "newly_arrived",
                 "obstacle_collisions", "collided")

    def __init__(self, new_positions, collisions, rewards, newly_arrived,
                 obstacle_collisions, collided):
        self.new_positions = new_positions
        self.collisions = collisions
        self.rewards = rewards
        self.newly_arrived = newly_arrived
        self.obstacle_collisions = obstacle_collisions
        self.collided = collided


def compute_reward(moved, collided, reached_goal):
    """Per-step reward, the terms add up.

    `moved` does not change the value, every step pays the time penalty.
    """

    reward = const.STEP_PENALTY
    if collided:
        reward += const.COLLISION_PENALTY
    if reached_goal:
        reward += const.GOAL_REWARD
    return reward


def _resolve_conflicts(origin, target):
    """Cancels conflicting intents in place, returns (conflicts, cancelled)"""

    conflicts = []
    cancelled = set()

    # swaps are judged on the raw intents
    by_origin = dict((pos, i) for i, pos in origin.items())
    for i in sorted(target):
        dest = target[i]
        if dest == origin[i]:
            continue
        j = by_origin.get(dest)
        if j is not None and j > i and target[j] == origin[i]:
            conflicts.append(((i, j), ConflictKind.EDGE))
            cancelled.update((i, j))
    for i in cancelled:
        target[i] = origin[i]

    # every pass turns movers into stayers, so this terminates
    reported = set()
    while True:
        claims = defaultdict(list)
        for i in sorted(target):
            claims[target[i]].append(i)
        stopped = set()
        for ids in claims.values():
            if len(ids) < 2:
                continue
            for pair in itertools.combinations(ids, 2):
                if pair not in reported:
                    reported.add(pair)
                    conflicts.append((pair, ConflictKind.VERTEX))
            stopped.update(i for i in ids if target[i] != origin[i])
        if not stopped:
            break
        for i in stopped:
            target[i] = origin[i]
        cancelled.update(stopped)

    return conflicts, cancelled


def apply_joint_action(grid, agents, actions, step):
    """Executes one synchronous step for all agents.

    Moves into walls or off the map are cancelled and count as obstacle
    collisions. Vertex and edge conflicts cancel the moves of everyone
    involved, cascading until no conflict is left. Agents standing on
    their goal afterwards exit the map.
    """

    if len(actions) != len(agents):
        raise MalformedActionSet(
            "expected %d actions, got %d" % (len(agents), len(actions)))

    origin = {}
    target = {}
    obstacle_hit = set()
    for agent, action in zip(agents, actions):
        try:
            action = Action(action)
        except ValueError:
            raise MalformedActionSet(
                "invalid action %r for agent %d" % (action, agent.id))
        if not agent.active:
            if action != Action.WAIT:
                raise MalformedActionSet(
                    "agent %d has exited and can only wait" % agent.id)
            continue
        origin[agent.id] = agent.pos
        dest = step_coord(agent.pos, action)
        if not grid.is_free(dest):
            obstacle_hit.add(agent.id)
            dest = agent.pos
        target[agent.id] = dest

    conflicts, cancelled = _resolve_conflicts(origin, target)
    collided = cancelled | obstacle_hit

    new_positions = []
    rewards = []
    arrived = []
    for agent in agents:
        if not agent.active:
            new_positions.append(agent.pos)
            rewards.append(0.0)
            continue
        dest = target[agent.id]
        moved = dest != agent.pos
        agent.move_to(dest)
        reached = agent.pos == agent.goal
        if reached:
            agent.exit(step)
            arrived.append(agent.id)
        new_positions.append(agent.pos)
        rewards.append(compute_reward(moved, agent.id in collided, reached))

    return StepOutcome(new_positions, conflicts, rewards, arrived,
                       sorted(obstacle_hit), collided)


def generate_map(width, height, density, seed):
    """A random map with exactly round(density * width * height) blocked
    cells, the same for the same arguments.
    """

    if width < 1 or height < 1:
        raise ValueError("map size must be positive, got %dx%d" % (
            width, height))
    if not 0 <= density < 1:
        raise ValueError("density must be in [0, 1), got %r" % density)

    n_cells = width * height
    n_blocked = int(round(density * n_cells))
    rng = np.random.default_rng(seed)
    blocked = np.zeros(n_cells, dtype=bool)
    blocked[rng.choice(n_cells, size=n_blocked, replace=False)] = True
    return GridMap(blocked.reshape(height, width))


def generate_instance(grid, n_agents, seed, retries=const.INSTANCE_RETRIES):
    """Samples (start, goal) pairs: distinct starts, distinct goals, every
    goal reachable from its start.

    Raises InstanceInfeasible once `retries` attempts failed.
    """

    if n_agents < 1:
        raise ValueError("need at least one agent")

    free = grid.free_cells()
    if len(free) < 2 * n_agents:
        raise InstanceInfeasible(
            n_agents, 0, "only %d free cells" % len(free))

    labels = grid.components
    members = defaultdict(list)
    for cell in free:
        members[labels[cell.row, cell.col]].append(cell)

    rng = np.random.default_rng(seed)
    for attempt in range(retries):
        order = rng.permutation(len(free))
        starts = [free[k] for k in order[:n_agents]]
        used = set()
        goals = []
        for start in starts:
            pool = [c for c in members[labels[start.row, start.col]]
                    if c != start and c not in used]
            if not pool:
                break
            goal = pool[int(rng.integers(len(pool)))]
            used.add(goal)
            goals.append(goal)
        else:
            return list(zip(starts, goals))

    raise InstanceInfeasible(n_agents, retries)


def bfs_distance(blocked, start, goal):
    """Shortest 4-connected path length avoiding `blocked` cells, from
    scratch. math.inf if there is none.
    """

    blocked = np.asarray(blocked, dtype=bool)
    height, width = blocked.shape
    start = tuple(start)
    goal = tuple(goal)
    if blocked[start] or blocked[goal]:
        return math.inf
    if start == goal:
        return 0

    dist = {start: 0}
    queue = deque([start])
    while queue:
        r, c = cell = queue.popleft()
        for dr, dc in ACTION_DELTAS[:4]:
            nxt = (r + dr, c + dc)
            if nxt in dist or not (0 <= nxt[0] < height and
                                   0 <= nxt[1] < width):
                continue
            if blocked[nxt]:
                continue
            dist[nxt] = dist[cell] + 1
            if nxt == goal:
                return dist[nxt]
            queue.append(nxt)
    return math.inf
