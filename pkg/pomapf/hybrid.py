# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Per agent decisions.

An agent follows its planner unless too many other agents are in sight,
in which case the local policy decides. While following the planner a
position repeat counts as a loop and the local policy gets one step to
break it.
"""

import enum

from . import const
from .gridworld import Action
from .error import PomapfError


class Mode(enum.Enum):
    DSTAR_LITE = "dstar_lite"
    LOCAL = "local"


class Source(enum.Enum):
    PLANNER = "planner"
    LOCAL_POLICY = "local_policy"
    FALLBACK = "fallback"


LOOP_VARIANTS = ("both", "oscillation")


class DecisionTrace(object):
    """Everything that went into one agent's action at one step"""

    __slots__ = ("agent_id", "step", "n", "mode", "loop_detected", "action",
                 "source")

    def __init__(self, agent_id, step, n, mode, loop_detected, action,
                 source):
        self.agent_id = agent_id
        self.step = step
        self.n = n
        self.mode = mode
        self.loop_detected = loop_detected
        self.action = action
        self.source = source

    def __eq__(self, other):
        if not isinstance(other, DecisionTrace):
            return NotImplemented
        return all(getattr(self, k) == getattr(other, k)
                   for k in self.__slots__)

    __hash__ = None

    def __repr__(self):
        return "<DecisionTrace %s>" % self.to_record()

    def to_record(self):
        """One line of space separated key=value fields"""

        return "step=%d agent=%d n=%d mode=%s loop=%d action=%s source=%s" % (
            self.step, self.agent_id, self.n, self.mode.value,
            int(self.loop_detected), self.action.name, self.source.value)

    @classmethod
    def parse(cls, line):
        """Reverses to_record(), raises ValueError"""

        try:
            fields = dict(f.split("=", 1) for f in line.split())
            return cls(int(fields["agent"]), int(fields["step"]),
                       int(fields["n"]), Mode(fields["mode"]),
                       bool(int(fields["loop"])), Action[fields["action"]],
                       Source(fields["source"]))
        except (KeyError, ValueError) as e:
            raise ValueError("invalid trace record %r: %s" % (line, e))


def count_neighbors(obs):
    """Other active agents inside the observation window"""

    return int(obs.agent_window.sum())


def select_mode(n, threshold=const.SWITCH_THRESHOLD):
    if n > threshold:
        return Mode.LOCAL
    return Mode.DSTAR_LITE


def detect_loop(history, variant="both"):
    """True if the current position (the last one in `history`) equals the
    one before it ("both" only) or the one two steps back.
    """

    if variant not in LOOP_VARIANTS:
        raise ValueError("unknown loop variant %r" % variant)
    history = list(history)
    if len(history) >= 3 and history[-1] == history[-3]:
        return True
    if variant == "both" and len(history) >= 2:
        return history[-1] == history[-2]
    return False


def local_target(planner, obs, goal):
    """Where the local policy should head: the cell the planner's path
    reaches inside the observation window, or `goal` if there is no path.

    Expects compute_shortest_path() to be current.
    """

    target = planner.waypoint(obs.center, obs.radius)
    return goal if target is None else target


def decide(agent, obs, belief, planner, policy, memory=None,
           threshold=const.SWITCH_THRESHOLD, loop_detection=True,
           loop_variant="both", step=0):
    """Picks the action of one active agent for this step.

    The planner is brought up to date with `belief` first. If it finds no
    path it is rebuilt from scratch once before the local policy takes
    over. The local policy steers toward local_target(), so leaving a loop
    does not walk the agent back into the dead end it just turned away
    from.

    :returns: (Action, DecisionTrace)
    """

    if not agent.active:
        raise PomapfError("agent %d has exited the map" % agent.id)

    n = count_neighbors(obs)
    mode = select_mode(n, threshold)
    agent.mode = mode
    loop = False

    action = planner.compute_shortest_path(belief, agent.pos).next_action
    if mode is Mode.LOCAL:
        action = policy.act(obs, memory, local_target(planner, obs,
                                                      agent.goal), belief)
        source = Source.LOCAL_POLICY
    else:
        if action is None:
            planner.reinitialize(belief, agent.pos)
            action = planner.compute_shortest_path(belief).next_action
        if loop_detection and agent.pos != agent.goal:
            loop = detect_loop(agent.history, loop_variant)
        if action is None or loop:
            action = policy.act(obs, memory, local_target(planner, obs,
                                                          agent.goal), belief)
            source = Source.FALLBACK
        else:
            source = Source.PLANNER

    action = Action(action)
    return action, DecisionTrace(agent.id, step, n, mode, loop, action,
                                 source)
