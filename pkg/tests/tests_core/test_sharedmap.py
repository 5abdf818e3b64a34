# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import itertools
import unittest

import numpy as np
from hypothesis import given, settings, strategies as st

from tests import skipUnlessSlow

from pomapf.error import ConflictingEvidence
from pomapf.gridworld import GridMap, Cell, Coord, make_agents, observe, \
    generate_map
from pomapf.sharedmap import BeliefMap, MapDelta, extract_delta, fuse, \
    remove_blocked_edges, CommChannel, broadcast, GridMemory, memory_update


def observation(grid, pos, radius=4):
    agents = make_agents([(pos, (0, 0) if pos != (0, 0) else (1, 1))])
    return observe(grid, agents, 0, radius)


def deltas_on(width, height):
    """Deltas over a small map with values taken from one hidden map"""

    coords = [(r, c) for r in range(height) for c in range(width)]
    return st.integers(0, 2 ** 16).map(
        lambda seed: generate_map(width, height, 0.3, seed)).flatmap(
        lambda grid: st.lists(
            st.lists(st.sampled_from(coords), max_size=8).map(
                lambda cells: MapDelta(
                    [(c, Cell.BLOCKED if grid.blocked[c] else Cell.FREE)
                     for c in cells])),
            min_size=2, max_size=4))


class TExtractDelta(unittest.TestCase):

    def test_interior(self):
        grid = generate_map(20, 20, 0.3, 3)
        belief = BeliefMap(20, 20)
        delta = extract_delta(observation(grid, (10, 10)), belief, 0, 7)
        self.assertEqual(len(delta), 81)
        self.assertEqual(delta.origin, 0)
        self.assertEqual(delta.step, 7)
        for coord, value in delta:
            self.assertEqual(bool(value == Cell.BLOCKED),
                             bool(grid.blocked[coord.row, coord.col]))

    def test_corner(self):
        grid = GridMap.empty(10, 10)
        delta = extract_delta(observation(grid, (0, 0)), BeliefMap(10, 10))
        self.assertEqual(len(delta), 25)
        self.assertEqual(min(delta.coords()), (0, 0))
        self.assertEqual(max(delta.coords()), (4, 4))

    def test_known_window_is_empty(self):
        grid = generate_map(12, 12, 0.2, 1)
        belief = BeliefMap.from_grid(grid)
        self.assertEqual(len(extract_delta(observation(grid, (6, 6)),
                                           belief)), 0)

    def test_partially_known(self):
        grid = GridMap.empty(10, 10)
        belief = BeliefMap(10, 10)
        belief.cells[5, 5] = Cell.FREE
        delta = extract_delta(observation(grid, (5, 5), 1), belief)
        self.assertEqual(len(delta), 8)
        self.assertEqual(delta.get((5, 5)), None)

    def test_contradiction(self):
        grid = GridMap.empty(6, 6)
        belief = BeliefMap(6, 6)
        belief.cells[2, 3] = Cell.BLOCKED
        with self.assertRaises(ConflictingEvidence) as ctx:
            extract_delta(observation(grid, (2, 2), 1), belief)
        self.assertEqual(ctx.exception.coord, (2, 3))
        self.assertEqual(ctx.exception.known, Cell.BLOCKED)


class TMapDelta(unittest.TestCase):

    def test_values(self):
        self.assertRaises(ValueError, MapDelta, [((0, 0), Cell.UNKNOWN)])
        self.assertRaises(ValueError, MapDelta,
                          [((0, 0), Cell.FREE), ((0, 0), Cell.BLOCKED)])
        delta = MapDelta([((0, 0), Cell.FREE), ((0, 0), Cell.FREE)])
        self.assertEqual(len(delta), 1)

    def test_merge(self):
        a = MapDelta([((0, 0), Cell.FREE)], origin=1, step=2)
        b = MapDelta([((0, 0), Cell.FREE), ((1, 1), Cell.BLOCKED)], 1, 3)
        merged = MapDelta.merge([a, b])
        self.assertEqual(merged.coords(), [(0, 0), (1, 1)])
        self.assertEqual((merged.origin, merged.step), (1, 3))
        self.assertEqual(len(MapDelta.merge([])), 0)

        c = MapDelta([((1, 1), Cell.FREE)])
        self.assertRaises(ConflictingEvidence, MapDelta.merge, [b, c])


class TFuse(unittest.TestCase):

    def test_identity(self):
        belief = BeliefMap.from_grid(generate_map(5, 5, 0.3, 0))
        before = belief.copy()
        self.assertEqual(fuse(belief, MapDelta()), set())
        self.assertEqual(belief, before)
        self.assertEqual(belief.version, before.version)

    def test_idempotent(self):
        belief = BeliefMap(4, 4)
        delta = MapDelta([((1, 1), Cell.BLOCKED), ((2, 2), Cell.FREE)])
        self.assertEqual(fuse(belief, delta), set([(1, 1), (2, 2)]))
        self.assertEqual(belief.version, 1)
        snapshot = belief.copy()
        self.assertEqual(fuse(belief, delta), set())
        self.assertEqual(belief, snapshot)
        self.assertEqual(belief.version, 1)

    def test_atomic(self):
        belief = BeliefMap(4, 4)
        belief.cells[3, 3] = Cell.FREE
        delta = MapDelta([((0, 0), Cell.FREE), ((3, 3), Cell.BLOCKED)])
        self.assertRaises(ConflictingEvidence, fuse, belief, delta)
        self.assertEqual(belief.get((0, 0)), Cell.UNKNOWN)
        self.assertEqual(belief.version, 0)

    def test_commutative_exhaustive(self):
        # every pair of single-cell deltas on a 2x2 corner
        cells = [(0, 0), (0, 1), (1, 0), (1, 1)]
        options = [MapDelta([(c, v)]) for c in cells
                   for v in (Cell.FREE, Cell.BLOCKED)]
        for a, b in itertools.product(options, repeat=2):
            if a.coords() == b.coords() and a != b:
                continue
            one, two = BeliefMap(4, 4), BeliefMap(4, 4)
            fuse(one, a)
            fuse(one, b)
            fuse(two, b)
            fuse(two, a)
            self.assertEqual(one, two)

    def test_truthful_pairs_exhaustive(self):
        # any subset of any 2x2 block, values from one hidden 4x4 map
        for grid in (GridMap([[0, 1, 0, 1], [1, 0, 1, 0],
                              [0, 1, 0, 1], [1, 0, 1, 0]]),
                     generate_map(4, 4, 0.3, 7)):
            options = []
            for top, left in itertools.product((0, 2), repeat=2):
                block = [(top + dr, left + dc) for dr in (0, 1)
                         for dc in (0, 1)]
                for size in range(1, 5):
                    for cells in itertools.combinations(block, size):
                        options.append(MapDelta(
                            [(c, Cell.BLOCKED if grid.blocked[c]
                              else Cell.FREE) for c in cells]))
            self.assertEqual(len(options), 60)

            for a, b in itertools.product(options, repeat=2):
                one, two = BeliefMap(4, 4), BeliefMap(4, 4)
                fuse(one, a)
                fuse(one, b)
                fuse(two, b)
                fuse(two, a)
                self.assertEqual(one, two)
                snapshot = one.copy()
                self.assertEqual(fuse(one, a), set())
                self.assertEqual(fuse(one, b), set())
                self.assertEqual(one, snapshot)
                merged = BeliefMap(4, 4)
                fuse(merged, MapDelta.merge([a, b]))
                self.assertEqual(merged, snapshot)

    @skipUnlessSlow
    def test_order_independent_32(self):
        rng = np.random.default_rng(0)
        coords = [(r, c) for r in range(32) for c in range(32)]
        for _ in range(10000):
            truth = rng.random((32, 32)) < 0.3
            deltas = []
            for _ in range(int(rng.integers(2, 5))):
                picked = rng.choice(len(coords), int(rng.integers(0, 65)),
                                    replace=False)
                deltas.append(MapDelta(
                    [(coords[i], Cell.BLOCKED if truth[coords[i]]
                      else Cell.FREE) for i in picked.tolist()]))
            one, two = BeliefMap(32, 32), BeliefMap(32, 32)
            for delta in deltas:
                fuse(one, delta)
            for i in rng.permutation(len(deltas)).tolist():
                fuse(two, deltas[i])
            self.assertEqual(one, two)
            known = one.cells != Cell.UNKNOWN
            self.assertTrue(np.array_equal(
                one.cells[known] == Cell.BLOCKED, truth[known]))

    @settings(max_examples=80, deadline=None)
    @given(deltas_on(4, 4), st.randoms(use_true_random=False))
    def test_order_independent(self, deltas, random):
        one, two = BeliefMap(4, 4), BeliefMap(4, 4)
        for delta in deltas:
            fuse(one, delta)
        shuffled = list(deltas)
        random.shuffle(shuffled)
        for delta in shuffled:
            fuse(two, delta)
        self.assertEqual(one, two)
        merged = BeliefMap(4, 4)
        fuse(merged, MapDelta.merge(deltas))
        self.assertEqual(one, merged)


class TBlockedEdges(unittest.TestCase):

    def test_counts(self):
        belief = BeliefMap(5, 5)
        belief.cells[2, 2] = Cell.BLOCKED
        belief.cells[0, 0] = Cell.BLOCKED
        belief.cells[4, 4] = Cell.FREE
        self.assertEqual(len(remove_blocked_edges([(2, 2)], belief)), 4)
        self.assertEqual(len(remove_blocked_edges([(0, 0)], belief)), 2)
        self.assertEqual(remove_blocked_edges([(4, 4)], belief), set())
        edges = remove_blocked_edges([(0, 0)], belief)
        self.assertEqual(edges, set([((0, 0), (0, 1)), ((0, 0), (1, 0))]))

    def test_shared_edge(self):
        belief = BeliefMap(3, 1)
        belief.cells[0, :2] = Cell.BLOCKED
        self.assertEqual(len(remove_blocked_edges([(0, 0), (0, 1)], belief)),
                         2)


class TCommChannel(unittest.TestCase):

    def test_latency(self):
        channel = CommChannel(3, latency=2)
        delta = MapDelta([((0, 0), Cell.FREE)], origin=1, step=5)
        broadcast(channel, delta, 5)
        self.assertEqual(len(channel), 2)
        self.assertEqual(channel.deliver(5), {})
        self.assertEqual(channel.deliver(6), {})
        due = channel.deliver(7)
        self.assertEqual(sorted(due), [0, 2])
        self.assertTrue(due[0][0] is delta)
        self.assertEqual(channel.stats,
                         {"sent": 2, "dropped": 0, "delivered": 2})

    def test_fifo(self):
        channel = CommChannel(2)
        first = MapDelta([((0, 0), Cell.FREE)], origin=0)
        second = MapDelta([((0, 1), Cell.FREE)], origin=0)
        channel.broadcast(first, 1)
        channel.broadcast(second, 1)
        self.assertEqual(channel.deliver(1), {1: [first, second]})

    def test_pop_due(self):
        channel = CommChannel(3, latency=1)
        first = MapDelta([((0, 0), Cell.FREE)], origin=0)
        second = MapDelta([((0, 1), Cell.BLOCKED)], origin=2)
        channel.broadcast(first, 1)
        channel.broadcast(second, 1)
        self.assertEqual(channel.pop_due(1), [])
        due = channel.pop_due(2)
        self.assertEqual(len(due), 2)
        self.assertTrue(due[0][0] is first)
        self.assertEqual(due[0][1], frozenset([1, 2]))
        self.assertTrue(due[1][0] is second)
        self.assertEqual(due[1][1], frozenset([0, 1]))
        self.assertEqual(channel.delivered, 4)
        self.assertEqual(len(channel), 0)
        self.assertEqual(channel.pop_due(3), [])

    def test_empty_not_sent(self):
        channel = CommChannel(4)
        channel.broadcast(MapDelta(origin=0), 0)
        self.assertEqual(channel.sent, 0)
        self.assertEqual(len(channel), 0)

    def test_drop(self):
        channel = CommChannel(5, drop_rate=1.0, seed=1)
        channel.broadcast(MapDelta([((0, 0), Cell.FREE)], origin=0), 0)
        self.assertEqual(channel.deliver(10), {})
        self.assertEqual(channel.stats["dropped"], 4)

    def test_drop_seeded(self):
        def run():
            channel = CommChannel(20, drop_rate=0.5, seed=42)
            channel.broadcast(MapDelta([((0, 0), Cell.FREE)], origin=0), 0)
            return sorted(channel.deliver(0))
        self.assertEqual(run(), run())

    def test_invalid(self):
        self.assertRaises(ValueError, CommChannel, 2, latency=-1)
        self.assertRaises(ValueError, CommChannel, 2, drop_rate=1.5)


class TGridMemory(unittest.TestCase):

    def test_bounds(self):
        grid = GridMap.empty(30, 30)
        mem = GridMemory()
        self.assertEqual(mem.bounds, None)
        self.assertEqual(mem.get((0, 0)), Cell.UNKNOWN)

        memory_update(mem, observation(grid, (10, 10)))
        self.assertEqual(mem.bounds, (6, 6, 15, 15))
        self.assertEqual(mem.n_known, 81)

        memory_update(mem, observation(grid, (10, 10)))
        self.assertEqual(mem.bounds, (6, 6, 15, 15))

        memory_update(mem, observation(grid, (20, 25)))
        self.assertEqual(mem.bounds, (6, 6, 25, 30))
        self.assertEqual(mem.n_known, 81 + 9 * 9)
        self.assertEqual(mem.get((5, 5)), Cell.UNKNOWN)
        self.assertEqual(mem.get((24, 29)), Cell.FREE)
        self.assertEqual(mem.get((16, 16)), Cell.UNKNOWN)

    def test_edge_of_map(self):
        grid = GridMap([[0, 1, 0], [0, 0, 0]])
        mem = GridMemory()
        mem.update(observation(grid, (1, 0)))
        self.assertEqual(mem.bounds, (0, 0, 2, 3))
        self.assertEqual(mem.get((0, 1)), Cell.BLOCKED)
        self.assertEqual(mem.get((-1, 0)), Cell.UNKNOWN)
