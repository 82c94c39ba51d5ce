"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Machine-readable reports. A report carries the result of one command and
its provenance: the tool version, the configuration it ran with and a
digest of every input file. Nothing time-dependent is recorded, so
reruns with the same inputs and seed are byte-identical.
"""
# I M P O R T S ###############################################################

import hashlib
import io
import json
import math
import sys

from enum import Enum

import numpy as np
import pandas as pd

from mpcr import TOOL_NAME, __version__
from mpcr.exceptions import ConfigurationError

# C O N S T A N T S ###########################################################

DIGEST_CHUNK = 65536

LIST_SEPARATOR = ";"

# C L A S S E S ###############################################################


class ReportFormat(Enum):
    JSON = "json"
    TSV = "tsv"

    @classmethod
    def from_str(cls, value):
        for report_format in cls:
            if report_format.value == str(value).lower():
                return report_format
        raise ConfigurationError("unknown report format [{}]".format(value), "format")

# F U N C T I O N S ###########################################################


def file_digest(filename):
    """
    Returns the SHA-256 hex digest of a file's bytes.
    """
    digest = hashlib.sha256()
    with open(filename, "rb") as input_file:
        for chunk in iter(lambda: input_file.read(DIGEST_CHUNK), b""):
            digest.update(chunk)
    return digest.hexdigest()


def clean_value(value):
    """
    Converts a result value into plain JSON types. Enumerations become
    their values, numpy scalars become Python numbers and non-finite
    floats become None.
    """
    if isinstance(value, dict):
        return {str(key): clean_value(item) for key, item in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [clean_value(item) for item in value]
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return value if math.isfinite(value) else None
    return value


def build_report(command, result, config, inputs=None, rows=None):
    """
    Assembles a report.

    :param command: the subcommand name
    :param result: a dict of scalar results
    :param config: the echoed configuration
    :param inputs: an optional mapping label -> input file path
    :param rows: an optional list of dicts forming the result table
    :return: a dict ready for rendering
    """
    provenance_inputs = {
        label: {"path": path, "sha256": file_digest(path)}
        for label, path in sorted((inputs or {}).items())
        if path is not None
    }
    report = {
        "tool": TOOL_NAME,
        "version": __version__,
        "command": command,
        "provenance": {"config": config, "inputs": provenance_inputs},
        "result": result,
    }
    if rows is not None:
        report["rows"] = rows
    return clean_value(report)


def render_json(report):
    return json.dumps(report, sort_keys=True, indent=2, allow_nan=False) + "\n"


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, list):
        return LIST_SEPARATOR.join(str(_cell(item)) for item in value)
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return value


def render_tsv(report):
    """
    Renders a report as a tab-separated table preceded by commented
    provenance lines. The table is the rows of the report, or its result
    as a single row.
    """
    buffer = io.StringIO()
    buffer.write("# tool: {} {}\n".format(report["tool"], report["version"]))
    buffer.write("# command: {}\n".format(report["command"]))
    buffer.write("# config: {}\n".format(json.dumps(report["provenance"]["config"], sort_keys=True)))
    for label, source in sorted(report["provenance"]["inputs"].items()):
        buffer.write("# input {}: {} sha256={}\n".format(label, source["path"], source["sha256"]))

    records = report.get("rows") or [report["result"]]
    columns = []
    for record in records:
        for column in record:
            if column not in columns:
                columns.append(column)
    frame = pd.DataFrame([[_cell(record.get(column)) for column in columns] for record in records], columns=columns)
    frame.to_csv(buffer, sep="\t", index=False, lineterminator="\n")
    return buffer.getvalue()


def render(report, report_format=ReportFormat.JSON):
    if report_format is ReportFormat.TSV:
        return render_tsv(report)
    return render_json(report)


def write_report(report, report_format=ReportFormat.JSON, filename=None):
    """
    Writes a rendered report to a file, or to standard output when no file
    name is given.
    """
    text = render(report, report_format)
    if filename is None:
        sys.stdout.write(text)
        return
    with open(filename, "w", encoding="utf-8", newline="") as output_file:
        output_file.write(text)

# E N D   O F   F I L E #######################################################
