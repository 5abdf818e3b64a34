# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import numpy as np

from .. import const
from ..gridworld import Cell, MOVES, ACTION_DELTAS


class LocalPolicy(object):
    """The local policy interface.

    A policy maps what one agent sees and remembers to an action. Given the
    same seed it makes the same choices.
    """

    NAME = None

    _POLICIES = {}

    def __init__(self, seed=None, epsilon=const.GREEDY_EPSILON):
        if not 0.0 <= epsilon <= 1.0:
            raise ValueError("epsilon must be in [0, 1], got %r" % epsilon)
        self.seed = seed
        self.epsilon = epsilon
        self.rng = np.random.default_rng(seed)

    def __repr__(self):
        return "<%s epsilon=%r seed=%r>" % (
            type(self).__name__, self.epsilon, self.seed)

    def act(self, obs, memory, goal, belief=None):
        raise NotImplementedError

    @classmethod
    def register(cls, kind):
        """Class decorator"""

        cls._POLICIES[kind.NAME] = kind
        return kind

    @classmethod
    def get(cls, name):
        """Raises KeyError"""

        return cls._POLICIES[name]

    @classmethod
    def names(cls):
        return sorted(cls._POLICIES)


def safe_moves(obs, belief=None):
    """Moves that stay on the map, avoid known obstacles and every visible
    agent, in action order.
    """

    moves = []
    for action in MOVES:
        dr, dc = ACTION_DELTAS[action]
        if obs.cell_at(dr, dc) in (Cell.BLOCKED, Cell.OUT_OF_BOUNDS):
            continue
        if obs.agent_at(dr, dc):
            continue
        if belief is not None:
            target = (obs.center[0] + dr, obs.center[1] + dc)
            if belief.is_blocked(target):
                continue
        moves.append(action)
    return moves


def explore(rng, epsilon, moves):
    """With probability epsilon a uniformly drawn move, else None"""

    if epsilon and moves and rng.random() < epsilon:
        return moves[int(rng.integers(len(moves)))]

