# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Local policies take over from the planner in crowded spots and when an
agent is caught in a loop. They are looked up by name.
"""

from ..error import PolicyError
from ._base import LocalPolicy, safe_moves
from .greedy import SafeGreedyPolicy, safe_greedy_act
from .lookahead import LookaheadPolicy, plan_in_window


DEFAULT_POLICY = SafeGreedyPolicy.NAME


def list_policies():
    """Names of all registered policies"""

    return LocalPolicy.names()


def get_policy(name):
    """Returns the policy class or raises PolicyError"""

    try:
        return LocalPolicy.get(name)
    except KeyError:
        raise PolicyError("Policy %r not available (one of %s)" % (
            name, ", ".join(list_policies())))


def make_policy(name, seed=None, **kwargs):
    return get_policy(name)(seed=seed, **kwargs)


__all__ = ["LocalPolicy", "SafeGreedyPolicy", "LookaheadPolicy",
           "safe_greedy_act", "safe_moves", "plan_in_window",
           "get_policy", "list_policies", "make_policy", "DEFAULT_POLICY"]
