"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
CSV tables describing a matched-pair experiment: unit outcomes, pair
assignments, cluster population sizes and cluster profiles for pairing.
"""
# I M P O R T S ###############################################################

import math
import re

from enum import Enum

import pandas as pd

from mpcr.dataset import UnitRecord, load_dataset
from mpcr.files.file_exceptions import CsvFormatError
from mpcr.pairing import ClusterProfile

# C O N S T A N T S ###########################################################

COVARIATE_PATTERN = re.compile(r"^cov_(\d+)$")

# C L A S S E S ###############################################################


class TableFileType(Enum):
    UNITS = 0
    ASSIGNMENTS = 1
    CLUSTERS = 2
    PROFILES = 3


REQUIRED_COLUMNS = {
    TableFileType.UNITS: ("pair_id", "cluster_slot", "outcome"),
    TableFileType.ASSIGNMENTS: ("pair_id", "z"),
    TableFileType.CLUSTERS: ("pair_id", "cluster_slot", "population_size"),
    TableFileType.PROFILES: ("cluster_id", "size"),
}

OPTIONAL_COLUMNS = {
    TableFileType.UNITS: ("receipt", "unit_id"),
    TableFileType.ASSIGNMENTS: (),
    TableFileType.CLUSTERS: (),
    TableFileType.PROFILES: (),
}


class TableFile(object):
    """
    A CSV table held as a pandas DataFrame of strings. Every field is kept
    verbatim so that parse failures can name their row and column.
    """
    def __init__(self, file_name=None, file_type=TableFileType.UNITS):
        self.file_type = file_type
        self.file_name = file_name
        self.buffer = pd.DataFrame()

    def read_file(self):
        self.buffer = self.read_table_contents(self.file_name, self.file_type)

    def write_file(self):
        self.write_table_contents(self.file_name, self.buffer)

    def get_buffer(self):
        return self.buffer

    def set_buffer(self, buffer):
        self.buffer = buffer

    def get_file_name(self):
        return self.file_name

    def rows(self):
        """
        Yields (1-based row number, row) for every data row.
        """
        for index, row in enumerate(self.buffer.to_dict("records")):
            yield index + 1, row

    @staticmethod
    def read_table_contents(filename, file_type):
        try:
            frame = pd.read_csv(filename, dtype=str, keep_default_na=False, encoding="utf-8")
        except FileNotFoundError:
            raise CsvFormatError("file not found: {}".format(filename))
        except pd.errors.EmptyDataError:
            raise CsvFormatError("empty file: {}".format(filename))
        except (pd.errors.ParserError, UnicodeDecodeError) as error:
            raise CsvFormatError("unreadable file {}: {}".format(filename, error))

        frame.columns = [column.strip() for column in frame.columns]
        for column in REQUIRED_COLUMNS[file_type]:
            if column not in frame.columns:
                raise CsvFormatError("missing column [{}]".format(column), column=column)
        if file_type is not TableFileType.PROFILES:
            known = REQUIRED_COLUMNS[file_type] + OPTIONAL_COLUMNS[file_type]
            for column in frame.columns:
                if column not in known:
                    raise CsvFormatError("unexpected column [{}]".format(column), column=column)
        for column in frame.columns:
            frame[column] = frame[column].str.strip()
        return frame

    @staticmethod
    def write_table_contents(filename, frame):
        frame.to_csv(filename, index=False, encoding="utf-8")

# F U N C T I O N S ###########################################################


def _text(row, column, row_number):
    value = row[column]
    if value == "":
        raise CsvFormatError("empty value in column [{}] at row {}".format(column, row_number), row_number, column)
    return value


def _float(row, column, row_number):
    value = _text(row, column, row_number)
    try:
        number = float(value)
    except ValueError:
        raise CsvFormatError(
            "non-numeric value [{}] in column [{}] at row {}".format(value, column, row_number), row_number, column
        )
    if not math.isfinite(number):
        raise CsvFormatError(
            "non-finite value [{}] in column [{}] at row {}".format(value, column, row_number), row_number, column
        )
    return number


def _int(row, column, row_number):
    value = _float(row, column, row_number)
    if not value.is_integer():
        raise CsvFormatError(
            "non-integer value [{}] in column [{}] at row {}".format(row[column], column, row_number),
            row_number, column
        )
    return int(value)


def _binary(row, column, row_number):
    value = _int(row, column, row_number)
    if value not in (0, 1):
        raise CsvFormatError(
            "value [{}] in column [{}] at row {} must be 0 or 1".format(row[column], column, row_number),
            row_number, column
        )
    return value


def _open(filename, file_type):
    table = TableFile(filename, file_type)
    table.read_file()
    return table


def read_units_csv(filename):
    """
    Reads units.csv: pair_id, cluster_slot, outcome and the optional
    receipt and unit_id columns.

    :param filename: the path of the file
    :return: a list of UnitRecord in file order
    """
    table = _open(filename, TableFileType.UNITS)
    frame = table.get_buffer()
    has_receipts = "receipt" in frame.columns
    if has_receipts:
        present = frame["receipt"] != ""
        if present.any() and not present.all():
            raise CsvFormatError("partial receipts", column="receipt")
        has_receipts = bool(present.all()) and len(frame) > 0

    units = []
    seen = set()
    for row_number, row in table.rows():
        pair_id = _text(row, "pair_id", row_number)
        slot = _int(row, "cluster_slot", row_number)
        if "unit_id" in frame.columns:
            key = (pair_id, slot, _text(row, "unit_id", row_number))
            if key in seen:
                raise CsvFormatError(
                    "duplicate unit [{}:{}:{}] at row {}".format(key[0], key[1], key[2], row_number),
                    row_number, "unit_id"
                )
            seen.add(key)
        receipt = _binary(row, "receipt", row_number) if has_receipts else None
        units.append(UnitRecord(pair_id, slot, _float(row, "outcome", row_number), receipt))
    return units


def read_assignments_csv(filename):
    """
    Reads assignments.csv: pair_id and z, where z = 1 treats the slot-1
    cluster.

    :param filename: the path of the file
    :return: a dict pair_id -> z in file order
    """
    table = _open(filename, TableFileType.ASSIGNMENTS)
    assignments = {}
    for row_number, row in table.rows():
        pair_id = _text(row, "pair_id", row_number)
        if pair_id in assignments:
            raise CsvFormatError("duplicate pair [{}] at row {}".format(pair_id, row_number), row_number, "pair_id")
        assignments[pair_id] = _binary(row, "z", row_number)
    return assignments


def read_clusters_csv(filename):
    """
    Reads clusters.csv: pair_id, cluster_slot and population_size.

    :param filename: the path of the file
    :return: a dict (pair_id, cluster_slot) -> population size
    """
    table = _open(filename, TableFileType.CLUSTERS)
    sizes = {}
    for row_number, row in table.rows():
        key = (_text(row, "pair_id", row_number), _int(row, "cluster_slot", row_number))
        if key in sizes:
            raise CsvFormatError(
                "duplicate cluster [{}:{}] at row {}".format(key[0], key[1], row_number), row_number, "cluster_slot"
            )
        size = _int(row, "population_size", row_number)
        if size < 1:
            raise CsvFormatError(
                "population_size must be positive at row {}".format(row_number), row_number, "population_size"
            )
        sizes[key] = size
    return sizes


def covariate_columns(columns):
    """
    Returns the covariate columns cov_1 .. cov_p in numeric order. Any
    other column besides cluster_id and size is rejected, as is a gap in
    the numbering.
    """
    numbered = []
    for column in columns:
        if column in REQUIRED_COLUMNS[TableFileType.PROFILES]:
            continue
        match = COVARIATE_PATTERN.match(column)
        if not match:
            raise CsvFormatError("unexpected column [{}]".format(column), column=column)
        numbered.append((int(match.group(1)), column))
    numbered.sort()
    if [number for number, _ in numbered] != list(range(1, len(numbered) + 1)):
        raise CsvFormatError("covariate columns must be numbered cov_1 .. cov_p")
    return [column for _, column in numbered]


def read_profiles_csv(filename):
    """
    Reads profiles.csv: cluster_id, size and optional covariates cov_1 ..
    cov_p.

    :param filename: the path of the file
    :return: a list of ClusterProfile in file order
    """
    table = _open(filename, TableFileType.PROFILES)
    covariates = covariate_columns(table.get_buffer().columns)
    profiles = []
    seen = set()
    for row_number, row in table.rows():
        cluster_id = _text(row, "cluster_id", row_number)
        if cluster_id in seen:
            raise CsvFormatError(
                "duplicate cluster [{}] at row {}".format(cluster_id, row_number), row_number, "cluster_id"
            )
        seen.add(cluster_id)
        profiles.append(ClusterProfile(
            cluster_id,
            _float(row, "size", row_number),
            tuple(_float(row, column, row_number) for column in covariates),
        ))
    return profiles


def _write(filename, file_type, records, columns):
    table = TableFile(filename, file_type)
    table.set_buffer(pd.DataFrame.from_records(records, columns=columns))
    table.write_file()


def write_units_csv(filename, dataset):
    """
    Writes every unit of a dataset, with receipts when the dataset has
    them.
    """
    columns = ["pair_id", "cluster_slot", "outcome"]
    if dataset.has_receipts:
        columns.append("receipt")
    records = []
    for pair in dataset.pairs:
        for cluster in sorted(pair.clusters, key=lambda c: c.cluster_slot):
            for unit in cluster.units:
                record = [pair.pair_id, cluster.cluster_slot, repr(float(unit.outcome))]
                if dataset.has_receipts:
                    record.append(int(unit.receipt))
                records.append(record)
    _write(filename, TableFileType.UNITS, records, columns)


def write_assignments_csv(filename, dataset):
    records = [[pair.pair_id, int(pair.assignment)] for pair in dataset.pairs]
    _write(filename, TableFileType.ASSIGNMENTS, records, ["pair_id", "z"])


def write_clusters_csv(filename, dataset):
    """
    Writes the population sizes of a dataset; clusters without one are
    left out.
    """
    records = [
        [pair.pair_id, cluster.cluster_slot, int(cluster.population_size)]
        for pair in dataset.pairs
        for cluster in sorted(pair.clusters, key=lambda c: c.cluster_slot)
        if cluster.population_size is not None
    ]
    _write(filename, TableFileType.CLUSTERS, records, ["pair_id", "cluster_slot", "population_size"])


def read_dataset(units_file, assignments_file, clusters_file=None):
    """
    Reads the tables of one experiment and builds the validated dataset.

    :return: the MpcrDataset
    """
    cluster_meta = read_clusters_csv(clusters_file) if clusters_file else None
    return load_dataset(read_units_csv(units_file), read_assignments_csv(assignments_file), cluster_meta)

# E N D   O F   F I L E #######################################################
