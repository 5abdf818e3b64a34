# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Line charts of a metric over the agent count, one line per information
regime and loop detection setting, rendered with cairocffi.
"""

import warnings
from collections import defaultdict

from ..util import cache_return, PomapfWarning

WIDTH, HEIGHT = 640, 420
MARGIN = 60

TITLES = {"sr": "Success rate", "el": "Episode length",
          "icr": "Independent completion rate"}

_COLORS = [
    (0.12, 0.47, 0.71), (1.0, 0.50, 0.05), (0.17, 0.63, 0.17),
    (0.84, 0.15, 0.16), (0.58, 0.40, 0.74), (0.55, 0.34, 0.29),
]


@cache_return
def get_cairo():
    """The cairocffi module or None"""

    try:
        import cairocffi
    except (ImportError, OSError):
        return None
    return cairocffi


def has_cairo():
    return get_cairo() is not None


def series(rows, metric):
    """{label: [(n_agents, value), ...]} sorted by agent count"""

    lines = defaultdict(list)
    for row in rows:
        label = "%s, loop %s" % (
            row["regime"], "on" if row["loop_detection"] else "off")
        lines[label].append((row["n_agents"], row[metric]))
    return dict((k, sorted(v)) for k, v in sorted(lines.items()))


def _y_range(rows, metric):
    if metric in ("sr", "icr"):
        return 0.0, 1.0
    top = max([r["max_steps"] for r in rows] + [r[metric] for r in rows])
    return 0.0, float(max(top, 1))


def render(rows, metric, path):
    cairo = get_cairo()
    surface = cairo.ImageSurface(cairo.FORMAT_ARGB32, WIDTH, HEIGHT)
    ctx = cairo.Context(surface)
    ctx.set_source_rgb(1, 1, 1)
    ctx.paint()
    ctx.select_font_face("sans")
    ctx.set_font_size(11)

    lines = series(rows, metric)
    xs = sorted(set(n for points in lines.values() for n, _ in points))
    y_lo, y_hi = _y_range(rows, metric)
    plot_w = WIDTH - 2 * MARGIN
    plot_h = HEIGHT - 2 * MARGIN

    def to_px(index, value):
        if len(xs) > 1:
            x = MARGIN + plot_w * index / float(len(xs) - 1)
        else:
            x = MARGIN + plot_w / 2.0
        y = HEIGHT - MARGIN - plot_h * (value - y_lo) / (y_hi - y_lo)
        return x, y

    # axes
    ctx.set_source_rgb(0, 0, 0)
    ctx.set_line_width(1)
    ctx.move_to(MARGIN, MARGIN)
    ctx.line_to(MARGIN, HEIGHT - MARGIN)
    ctx.line_to(WIDTH - MARGIN, HEIGHT - MARGIN)
    ctx.stroke()

    for i, n in enumerate(xs):
        x, y = to_px(i, y_lo)
        ctx.move_to(x - 6, y + 16)
        ctx.show_text(str(n))
    for k in range(5):
        value = y_lo + (y_hi - y_lo) * k / 4.0
        x, y = to_px(0, value)
        label = "%.2f" % value if y_hi <= 1 else "%d" % value
        ctx.move_to(MARGIN - 40, y + 4)
        ctx.show_text(label)

    ctx.move_to(MARGIN, MARGIN - 20)
    ctx.set_font_size(14)
    ctx.show_text("%s vs. number of agents" % TITLES.get(metric, metric))
    ctx.set_font_size(11)

    for j, (label, points) in enumerate(lines.items()):
        ctx.set_source_rgb(*_COLORS[j % len(_COLORS)])
        ctx.set_line_width(2)
        for k, (n, value) in enumerate(points):
            x, y = to_px(xs.index(n), value)
            if k == 0:
                ctx.move_to(x, y)
            else:
                ctx.line_to(x, y)
        ctx.stroke()
        for n, value in points:
            x, y = to_px(xs.index(n), value)
            ctx.arc(x, y, 3, 0, 6.2832)
            ctx.fill()

        ly = MARGIN + 16 * j
        ctx.rectangle(WIDTH - MARGIN - 130, ly - 8, 10, 10)
        ctx.fill()
        ctx.set_source_rgb(0, 0, 0)
        ctx.move_to(WIDTH - MARGIN - 115, ly + 1)
        ctx.show_text(label)

    surface.write_to_png(path)
    surface.finish()
    return path


def plot_metric(reports, metric, path):
    """Writes a PNG of `metric` for the reports (AggregateReport or rows
    from load_table()). Returns the path, or None if cairo is missing.
    """

    if not has_cairo():
        warnings.warn("cairocffi not available, skipping %s" % path,
                      PomapfWarning)
        return None

    rows = [r.row() if hasattr(r, "row") else r for r in reports]
    if not rows:
        return None
    try:
        return render(rows, metric, path)
    except (IOError, OSError) as e:
        raise OSError("can't write %r: %s" % (path, e))
