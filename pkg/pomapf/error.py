# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.


class PomapfError(RuntimeError):
    """Base class for all errors raised by pomapf"""


class InstanceInfeasible(PomapfError):
    """Start/goal sampling could not place all agents"""

    def __init__(self, n_agents, budget, reason=""):
        self.n_agents = n_agents
        self.budget = budget
        message = "could not place %d agents within %d attempts" % (
            n_agents, budget)
        if reason:
            message += " (%s)" % reason
        super(InstanceInfeasible, self).__init__(message)


class ObserverInactive(PomapfError):
    pass


class MalformedActionSet(PomapfError):
    pass


class GoalBlocked(PomapfError):
    pass


class StalePlanner(PomapfError):
    """The belief changed after the last compute_shortest_path()"""


class ConflictingEvidence(PomapfError):
    """A delta contradicts a cell that is already known"""

    def __init__(self, coord, known, observed):
        self.coord = coord
        self.known = known
        self.observed = observed
        super(ConflictingEvidence, self).__init__(
            "cell %r is known as %s but was observed as %s" % (
                tuple(coord), known, observed))


class ConfigError(PomapfError, ValueError):
    pass


class MapFormatError(PomapfError, ValueError):

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = "line %d: %s" % (lineno, message)
        super(MapFormatError, self).__init__(message)


class PolicyError(PomapfError, LookupError):
    pass
