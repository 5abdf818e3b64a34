# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Multi-agent pathfinding under partial observability: incremental
planning, shared exploration maps and a local fallback policy.
"""

from . import const
from .error import PomapfError
from .util import PomapfWarning
from .gridworld import GridMap, Action, Cell, Coord, generate_map, \
    generate_instance
from .sharedmap import BeliefMap, MapDelta, CommChannel, GridMemory
from .dstar import DStarLite, PlanResult
from .hybrid import Mode, decide
from .policy import get_policy, list_policies


PomapfError = PomapfError
PomapfWarning = PomapfWarning

version_info = const.VERSION
__version__ = ".".join(map(str, version_info))


def check_version(version):
    """Takes a version string or tuple and raises ValueError in case
    the passed version is newer than the current version of pomapf.
    """

    if isinstance(version, str):
        version = tuple(map(int, version.split(".")))

    if version > version_info:
        str_version = ".".join(map(str, version))
        raise ValueError("pomapf version '%s' requested, '%s' available" %
                         (str_version, __version__))


__all__ = ["GridMap", "Action", "Cell", "Coord", "generate_map",
           "generate_instance", "BeliefMap", "MapDelta", "CommChannel",
           "GridMemory", "DStarLite", "PlanResult", "Mode", "decide",
           "get_policy", "list_policies", "PomapfError", "PomapfWarning",
           "check_version", "version_info", "__version__"]
