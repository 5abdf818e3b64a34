# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

"""Result tables (CSV) and plots.

Floats are written with a fixed number of digits so the same reports
always give byte-identical files.
"""

import os
import csv
import logging

from .batch import AggregateReport

logger = logging.getLogger(__name__)

FORMATS = ("table", "plot")

RESULTS_NAME = "results.csv"
DELTAS_NAME = "deltas.csv"
DELTA_COLUMNS = ("regime", "loop_detection", "n_agents", "d_sr", "d_el",
                 "d_icr")

_INT_COLUMNS = frozenset(["width", "height", "n_agents", "max_steps",
                          "instances", "infeasible"])
_BOOL_COLUMNS = frozenset(["loop_detection"])
_STR_COLUMNS = frozenset(["regime"])


def _format_value(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.4f" % value
    return str(value)


def _parse_value(column, value):
    if column in _STR_COLUMNS:
        return value
    if column in _BOOL_COLUMNS:
        return value == "true"
    if column in _INT_COLUMNS:
        return int(value)
    return float(value)


def _write_csv(path, columns, rows):
    try:
        with open(path, "w", newline="") as h:
            writer = csv.writer(h, lineterminator="\n")
            writer.writerow(columns)
            for row in rows:
                writer.writerow([_format_value(row[c]) for c in columns])
    except (IOError, OSError) as e:
        raise OSError("can't write %r: %s" % (path, e))


def write_table(reports, path):
    _write_csv(path, AggregateReport.COLUMNS, [r.row() for r in reports])
    return path


def write_deltas(deltas, path):
    _write_csv(path, DELTA_COLUMNS, deltas)
    return path


def load_table(path):
    """Parses a table written by write_table() or write_deltas() into a
    list of dicts.
    """

    try:
        with open(path, "r", newline="") as h:
            reader = csv.DictReader(h)
            return [dict((k, _parse_value(k, v)) for k, v in row.items())
                    for row in reader]
    except (IOError, OSError) as e:
        raise OSError("can't read %r: %s" % (path, e))


def emit_results(reports, out, formats=("table",), deltas=None):
    """Writes the reports into the directory `out`.

    "table" writes results.csv and, if `deltas` is given, deltas.csv;
    "plot" writes sr.png and el.png unless there is nothing to plot.

    :returns: list of written paths
    """

    for format_ in formats:
        if format_ not in FORMATS:
            raise ValueError("unknown format %r" % format_)

    try:
        os.makedirs(out, exist_ok=True)
    except OSError as e:
        raise OSError("can't create %r: %s" % (out, e))

    reports = list(reports)
    written = []
    if "table" in formats:
        written.append(write_table(reports, os.path.join(out, RESULTS_NAME)))
        if deltas is not None:
            written.append(
                write_deltas(deltas, os.path.join(out, DELTAS_NAME)))

    if "plot" in formats and reports:
        from .plot import plot_metric

        for metric in ("sr", "el"):
            path = plot_metric(reports, metric,
                               os.path.join(out, "%s.png" % metric))
            if path is not None:
                written.append(path)

    for path in written:
        logger.info("wrote %s", path)
    return written
