# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import numpy as np

from .. import const
from ..gridworld import Action, step_coord
from ..util import manhattan
from ._base import LocalPolicy, safe_moves, explore


def safe_greedy_act(obs, belief, goal, epsilon=const.GREEDY_EPSILON,
                    seed=None):
    """The safe move closest to `goal`, a random safe move with probability
    `epsilon`, WAIT if nothing is safe.

    :param seed: an int or a numpy Generator
    """

    moves = safe_moves(obs, belief)
    if not moves:
        return Action.WAIT

    if isinstance(seed, np.random.Generator):
        rng = seed
    else:
        rng = np.random.default_rng(seed)

    action = explore(rng, epsilon, moves)
    if action is not None:
        return action
    # min() keeps the first of equal moves
    return min(moves, key=lambda a: manhattan(step_coord(obs.center, a), goal))


@LocalPolicy.register
class SafeGreedyPolicy(LocalPolicy):
    """Walks toward the goal, never into walls or visible agents"""

    NAME = "greedy"

    def act(self, obs, memory, goal, belief=None):
        return safe_greedy_act(obs, belief, goal, self.epsilon, self.rng)
