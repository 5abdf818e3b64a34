# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Beliefs about the map and how agents share them.

Every agent owns a BeliefMap. What it learns from its own observations is
cut into MapDelta objects which are fused into its own belief and sent to
the team through a CommChannel; received deltas are fused the same way.
"""

import logging
from collections import deque, defaultdict

import numpy as np

from .error import ConflictingEvidence
from .gridworld import Cell, Coord, ACTION_DELTAS

logger = logging.getLogger(__name__)


class BeliefMap(object):
    """Tri-state knowledge about a map: UNKNOWN, FREE or BLOCKED per cell.

    `version` increases every time a cell changes.
    """

    def __init__(self, width, height):
        if width < 1 or height < 1:
            raise ValueError("invalid belief size %dx%d" % (width, height))
        self.width = width
        self.height = height
        self.cells = np.full((height, width), Cell.UNKNOWN, dtype=np.int8)
        self.version = 0

    @classmethod
    def from_grid(cls, grid):
        """A belief that knows the whole map"""

        belief = cls(grid.width, grid.height)
        belief.cells[:] = np.where(grid.blocked, Cell.BLOCKED, Cell.FREE)
        return belief

    def copy(self):
        other = type(self)(self.width, self.height)
        other.cells[:] = self.cells
        other.version = self.version
        return other

    def __eq__(self, other):
        if not isinstance(other, BeliefMap):
            return NotImplemented
        return np.array_equal(self.cells, other.cells)

    __hash__ = None

    def __repr__(self):
        return "<%s %dx%d, %d unknown, version=%d>" % (
            type(self).__name__, self.width, self.height, self.n_unknown,
            self.version)

    @property
    def n_unknown(self):
        return int((self.cells == Cell.UNKNOWN).sum())

    def in_bounds(self, coord):
        return 0 <= coord[0] < self.height and 0 <= coord[1] < self.width

    def get(self, coord):
        if not self.in_bounds(coord):
            return Cell.OUT_OF_BOUNDS
        return Cell(self.cells[coord[0], coord[1]])

    def is_blocked(self, coord):
        return self.get(coord) == Cell.BLOCKED

    def blocked_mask(self):
        return self.cells == Cell.BLOCKED


def _canonical(rows, cols, values):
    """Sorts entries by (row, col) and drops repeats.

    :returns: (rows, cols, values, None) or, if a cell appears with two
        values, (None, None, None, (coord, first, second))
    """

    if not len(rows):
        return rows, cols, values, None
    order = np.lexsort((cols, rows))
    rows, cols, values = rows[order], cols[order], values[order]
    same = (rows[1:] == rows[:-1]) & (cols[1:] == cols[:-1])
    clash = same & (values[1:] != values[:-1])
    if clash.any():
        i = int(np.argmax(clash))
        return None, None, None, (Coord(int(rows[i]), int(cols[i])),
                                  Cell(int(values[i])),
                                  Cell(int(values[i + 1])))
    keep = np.concatenate(([True], ~same))
    return rows[keep], cols[keep], values[keep], None


class MapDelta(object):
    """Newly learned cells, (coord, value) with value FREE or BLOCKED.

    Entries are kept as row, column and value arrays sorted by coordinate.

    :param entries: iterable of (coord, value)
    :param origin: id of the agent that observed the cells
    :param step: time step of the observation
    :raises ValueError: if a coordinate appears with two values
    """

    __slots__ = ("_rows", "_cols", "_values", "_lookup", "origin", "step")

    def __init__(self, entries=(), origin=None, step=0):
        values = {}
        for coord, value in entries:
            coord = Coord(*coord)
            value = Cell(value)
            if value not in (Cell.FREE, Cell.BLOCKED):
                raise ValueError("a delta can only carry FREE or BLOCKED")
            if values.setdefault(coord, value) != value:
                raise ValueError("two values for %r" % (tuple(coord),))
        items = sorted(values.items())
        self._rows = np.array([c[0] for c, v in items], dtype=np.intp)
        self._cols = np.array([c[1] for c, v in items], dtype=np.intp)
        self._values = np.array([v for c, v in items], dtype=np.int8)
        self._lookup = values
        self.origin = origin
        self.step = step

    @classmethod
    def from_arrays(cls, rows, cols, values, origin=None, step=0):
        """Builds a delta from parallel arrays of FREE/BLOCKED entries.

        :raises ConflictingEvidence: if a cell appears with two values
        """

        rows, cols, values, clash = _canonical(
            np.asarray(rows, dtype=np.intp), np.asarray(cols, dtype=np.intp),
            np.asarray(values, dtype=np.int8))
        if clash is not None:
            raise ConflictingEvidence(*clash)
        delta = cls.__new__(cls)
        delta._rows, delta._cols, delta._values = rows, cols, values
        delta._lookup = None
        delta.origin = origin
        delta.step = step
        return delta

    @classmethod
    def merge(cls, deltas, origin=None, step=None):
        """One delta holding the entries of all `deltas`.

        :raises ConflictingEvidence: if two deltas disagree about a cell
        """

        deltas = list(deltas)
        if origin is None and deltas:
            origin = deltas[-1].origin
        if step is None:
            step = deltas[-1].step if deltas else 0
        if not deltas:
            return cls(origin=origin, step=step)
        return cls.from_arrays(
            np.concatenate([d._rows for d in deltas]),
            np.concatenate([d._cols for d in deltas]),
            np.concatenate([d._values for d in deltas]), origin, step)

    def arrays(self):
        """(rows, cols, values), sorted by coordinate"""

        return self._rows, self._cols, self._values

    @property
    def entries(self):
        return frozenset(self)

    def coords(self):
        return [Coord(r, c) for r, c in
                zip(self._rows.tolist(), self._cols.tolist())]

    def get(self, coord):
        if self._lookup is None:
            self._lookup = dict(self)
        return self._lookup.get(Coord(*coord))

    def __len__(self):
        return len(self._rows)

    def __iter__(self):
        for r, c, v in zip(self._rows.tolist(), self._cols.tolist(),
                           self._values.tolist()):
            yield Coord(r, c), Cell(v)

    def __eq__(self, other):
        if not isinstance(other, MapDelta):
            return NotImplemented
        return np.array_equal(self._rows, other._rows) and \
            np.array_equal(self._cols, other._cols) and \
            np.array_equal(self._values, other._values)

    __hash__ = None

    def __repr__(self):
        return "<MapDelta origin=%r step=%d, %d cells>" % (
            self.origin, self.step, len(self))


def extract_delta(obs, belief, origin=None, step=0):
    """The in-bounds cells of the observation the belief does not know yet.

    :raises ConflictingEvidence: if the observation contradicts a known cell
    """

    radius = obs.radius
    row, col = obs.center
    top, left = row - radius, col - radius
    r0, c0 = max(0, top), max(0, left)
    r1 = min(belief.height, row + radius + 1)
    c1 = min(belief.width, col + radius + 1)

    seen = obs.obstacle_window[r0 - top:r1 - top, c0 - left:c1 - left]
    known = belief.cells[r0:r1, c0:c1]

    conflict = (known != Cell.UNKNOWN) & (known != seen)
    if conflict.any():
        r, c = [int(v[0]) for v in np.nonzero(conflict)]
        raise ConflictingEvidence(Coord(r0 + r, c0 + c), Cell(known[r, c]),
                                  Cell(seen[r, c]))

    rows, cols = np.nonzero(known == Cell.UNKNOWN)
    return MapDelta.from_arrays(rows + r0, cols + c0, seen[rows, cols],
                                origin, step)


def fuse(belief, delta):
    """Writes the delta into the belief, returns the set of changed cells.

    Either every entry is applied or, on ConflictingEvidence, none.
    """

    rows, cols, values = delta.arrays()
    if not len(rows):
        return set()
    current = belief.cells[rows, cols]
    conflict = (current != Cell.UNKNOWN) & (current != values)
    if conflict.any():
        i = int(np.argmax(conflict))
        raise ConflictingEvidence(Coord(int(rows[i]), int(cols[i])),
                                  Cell(int(current[i])), Cell(int(values[i])))

    new = current == Cell.UNKNOWN
    if not new.any():
        return set()
    rows, cols = rows[new], cols[new]
    belief.cells[rows, cols] = values[new]
    belief.version += 1
    return set(Coord(r, c) for r, c in zip(rows.tolist(), cols.tolist()))


def remove_blocked_edges(changed, belief):
    """The 4-neighbor edges touching newly blocked cells.

    Edges are (a, b) coordinate pairs with a < b. The planner keeps no edge
    list; it drops these edges by marking the cell itself blocked, see
    DStarLite.apply_belief_delta().
    """

    removed = set()
    for coord in changed:
        if not belief.is_blocked(coord):
            continue
        for dr, dc in ACTION_DELTAS[:4]:
            other = Coord(coord[0] + dr, coord[1] + dc)
            if belief.in_bounds(other):
                removed.add(tuple(sorted((Coord(*coord), other))))
    return removed


class CommChannel(object):
    """Delivers deltas to all other agents after `latency` steps, dropping
    each copy independently with probability `drop_rate`.
    """

    def __init__(self, n_agents, latency=0, drop_rate=0.0, seed=None):
        if latency < 0:
            raise ValueError("latency must not be negative")
        if not 0.0 <= drop_rate <= 1.0:
            raise ValueError("drop_rate must be in [0, 1], got %r" % drop_rate)
        self.n_agents = n_agents
        self.latency = latency
        self.drop_rate = drop_rate
        self._rng = np.random.default_rng(seed)
        self._in_flight = deque()
        self.sent = 0
        self.dropped = 0
        self.delivered = 0

    def __len__(self):
        return len(self._in_flight)

    def broadcast(self, delta, step):
        if not len(delta):
            return
        recipients = [r for r in range(self.n_agents) if r != delta.origin]
        self.sent += len(recipients)
        if self.drop_rate:
            kept = self._rng.random(len(recipients)) >= self.drop_rate
            self.dropped += len(recipients) - int(kept.sum())
            recipients = [r for r, k in zip(recipients, kept) if k]
        if recipients:
            self._in_flight.append(
                (step + self.latency, delta, frozenset(recipients)))

    def pop_due(self, step):
        """Broadcasts due at `step` as (delta, recipients) pairs in emission
        order, `recipients` a frozenset of agent ids.
        """

        due = []
        # constant latency keeps the queue sorted by due step
        while self._in_flight and self._in_flight[0][0] <= step:
            _, delta, recipients = self._in_flight.popleft()
            due.append((delta, recipients))
            self.delivered += len(recipients)
        if due:
            logger.debug("step %d: delivering %d deltas", step, len(due))
        return due

    def deliver(self, step):
        """Deltas due at `step` as {recipient: [delta, ...]} in emission
        order.
        """

        by_recipient = defaultdict(list)
        for delta, recipients in self.pop_due(step):
            for recipient in sorted(recipients):
                by_recipient[recipient].append(delta)
        return dict(by_recipient)

    @property
    def stats(self):
        return {"sent": self.sent, "dropped": self.dropped,
                "delivered": self.delivered}


def broadcast(channel, delta, step):
    channel.broadcast(delta, step)


class GridMemory(object):
    """Everything one agent has observed, in a rectangle that grows as the
    agent moves.

    `bounds` is (top, left, bottom, right) in map coordinates, bottom and
    right exclusive, or None before the first observation.
    """

    def __init__(self):
        self.bounds = None
        self.cells = np.empty((0, 0), dtype=np.int8)

    def __repr__(self):
        return "<GridMemory bounds=%r>" % (self.bounds,)

    def get(self, coord):
        if self.bounds is None:
            return Cell.UNKNOWN
        top, left, bottom, right = self.bounds
        r, c = coord
        if not (top <= r < bottom and left <= c < right):
            return Cell.UNKNOWN
        return Cell(self.cells[r - top, c - left])

    @property
    def n_known(self):
        return int((self.cells != Cell.UNKNOWN).sum())

    def _grow(self, top, left, bottom, right):
        if self.bounds is not None:
            old = self.bounds
            top, left = min(top, old[0]), min(left, old[1])
            bottom, right = max(bottom, old[2]), max(right, old[3])
            if (top, left, bottom, right) == old:
                return
        cells = np.full((bottom - top, right - left), Cell.UNKNOWN,
                        dtype=np.int8)
        if self.bounds is not None:
            ot, ol, ob, orr = self.bounds
            cells[ot - top:ob - top, ol - left:orr - left] = self.cells
        self.cells = cells
        self.bounds = (top, left, bottom, right)

    def update(self, obs):
        window = obs.obstacle_window
        inside = window != Cell.OUT_OF_BOUNDS
        rows = np.nonzero(inside.any(axis=1))[0]
        cols = np.nonzero(inside.any(axis=0))[0]
        if not len(rows):
            return self

        wr0, wr1 = int(rows[0]), int(rows[-1]) + 1
        wc0, wc1 = int(cols[0]), int(cols[-1]) + 1
        top = obs.center[0] - obs.radius + wr0
        left = obs.center[1] - obs.radius + wc0
        bottom = top + (wr1 - wr0)
        right = left + (wc1 - wc0)

        self._grow(top, left, bottom, right)
        bt, bl = self.bounds[0], self.bounds[1]
        self.cells[top - bt:bottom - bt, left - bl:right - bl] = \
            window[wr0:wr1, wc0:wc1]
        return self


def memory_update(mem, obs):
    return mem.update(obs)
