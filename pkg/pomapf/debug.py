# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import sys

from .gridworld import Cell


def pprint(obj, file_=None):
    """Prints debug information for maps, beliefs, planners and grid
    memories.
    """

    from .gridworld import GridMap
    from .sharedmap import BeliefMap, GridMemory
    from .dstar import DStarLite
    from . import textio

    if file_ is None:
        file_ = sys.stdout

    if isinstance(obj, GridMap):
        file_.write(textio.dump_map(obj))
        return

    if isinstance(obj, BeliefMap):
        file_.write(textio.dump_belief(obj))
        return

    if isinstance(obj, DStarLite):
        file_.write("%r\n" % obj)
        for which in ("g", "rhs"):
            file_.write("%s:\n" % which)
            file_.write(obj.dump_values(which))
        return

    if isinstance(obj, GridMemory):
        file_.write("%r\n" % obj)
        chars = {Cell.FREE: ".", Cell.BLOCKED: "#", Cell.UNKNOWN: "?"}
        for row in obj.cells:
            file_.write("".join(chars[Cell(v)] for v in row) + "\n")
        return

    raise TypeError("unknown type %r" % type(obj).__name__)
