# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Plain text formats.

Maps: a "W H" header followed by H rows of W characters, '.' free and '#'
blocked. Beliefs use the same layout with '?' for unknown cells.
Instances: one "agent_id sr sc gr gc" line per agent.
"""

import numpy as np

from .error import MapFormatError
from .gridworld import GridMap, Cell, Coord

_CHARS = {Cell.FREE: ".", Cell.BLOCKED: "#", Cell.UNKNOWN: "?"}
_CODES = dict((v, k) for k, v in _CHARS.items())


def _dump_codes(codes):
    height, width = codes.shape
    lines = ["%d %d" % (width, height)]
    for row in codes:
        lines.append("".join(_CHARS[Cell(v)] for v in row))
    return "\n".join(lines) + "\n"


def _parse_codes(text, allowed):
    lines = [l.rstrip("\r") for l in text.splitlines()]
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MapFormatError("empty input")

    try:
        width, height = [int(v) for v in lines[0].split()]
    except ValueError:
        raise MapFormatError("expected 'W H' header, got %r" % lines[0], 1)
    if width < 1 or height < 1:
        raise MapFormatError("invalid map size %dx%d" % (width, height), 1)
    if len(lines) - 1 != height:
        raise MapFormatError(
            "expected %d rows, got %d" % (height, len(lines) - 1))

    codes = np.empty((height, width), dtype=np.int8)
    for r, line in enumerate(lines[1:]):
        lineno = r + 2
        if len(line) != width:
            raise MapFormatError(
                "expected %d columns, got %d" % (width, len(line)), lineno)
        for c, char in enumerate(line):
            if char not in allowed:
                raise MapFormatError("unexpected character %r" % char, lineno)
            codes[r, c] = _CODES[char]
    return codes


def dump_map(grid):
    codes = np.where(grid.blocked, Cell.BLOCKED, Cell.FREE)
    return _dump_codes(codes)


def parse_map(text):
    codes = _parse_codes(text, ".#")
    return GridMap(codes == Cell.BLOCKED)


def dump_belief(belief):
    return _dump_codes(belief.cells)


def parse_belief(text):
    from .sharedmap import BeliefMap

    codes = _parse_codes(text, ".#?")
    height, width = codes.shape
    belief = BeliefMap(width, height)
    belief.cells[:] = codes
    return belief


def dump_instance(tasks):
    lines = []
    for i, (start, goal) in enumerate(tasks):
        lines.append("%d %d %d %d %d" % (i, start[0], start[1],
                                          goal[0], goal[1]))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_instance(text, grid=None):
    """Returns a list of (start, goal) ordered by agent id.

    If `grid` is given all positions have to be free cells of it.
    """

    tasks = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            agent_id, sr, sc, gr, gc = [int(v) for v in line.split()]
        except ValueError:
            raise MapFormatError(
                "expected 'agent_id sr sc gr gc', got %r" % line, lineno)
        if agent_id in tasks:
            raise MapFormatError("duplicate agent %d" % agent_id, lineno)
        start, goal = Coord(sr, sc), Coord(gr, gc)
        if grid is not None:
            for coord in (start, goal):
                if not grid.is_free(coord):
                    raise MapFormatError(
                        "%r is not a free cell" % (tuple(coord),), lineno)
        tasks[agent_id] = (start, goal)

    if sorted(tasks) != list(range(len(tasks))):
        raise MapFormatError("agent ids must be 0..%d" % (len(tasks) - 1))
    return [tasks[i] for i in range(len(tasks))]


def load_map(path):
    with open(path, "r") as h:
        return parse_map(h.read())


def save_map(grid, path):
    with open(path, "w") as h:
        h.write(dump_map(grid))
