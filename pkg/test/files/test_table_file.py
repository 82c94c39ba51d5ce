"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Tests for the CSV tables.
"""
# I M P O R T S ###############################################################

import os
import tempfile
import unittest

import pandas as pd

from mock import patch

from mpcr.dataset import UnitRecord
from mpcr.files.file_exceptions import CsvFormatError
from mpcr.files.table_file import TableFile, TableFileType, covariate_columns, read_assignments_csv, \
    read_clusters_csv, read_dataset, read_profiles_csv, read_units_csv, write_assignments_csv, \
    write_clusters_csv, write_units_csv
from test.fixtures import data_file, ds_a, ds_b

# C L A S S E S ###############################################################


class TestTableFile(unittest.TestCase):
    """
    A test class for the TableFile class.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_get_buffer_empty_on_create(self):
        self.assertTrue(TableFile().get_buffer().empty)

    def test_set_buffer_works_correctly(self):
        table = TableFile()
        buffer = pd.DataFrame({"pair_id": ["1"], "z": ["1"]})
        table.set_buffer(buffer)
        self.assertIs(buffer, table.get_buffer())

    def test_filename_set_at_creation(self):
        self.assertEqual("units.csv", TableFile(file_name="units.csv").get_file_name())

    def test_read_passes_file_type(self):
        with patch.object(TableFile, 'read_table_contents') as read_mock:
            table = TableFile(file_name="assign.csv", file_type=TableFileType.ASSIGNMENTS)
            table.read_file()
            read_mock.assert_called_with("assign.csv", TableFileType.ASSIGNMENTS)

    def test_write_passes_buffer(self):
        with patch.object(TableFile, 'write_table_contents') as write_mock:
            table = TableFile(file_name="assign.csv", file_type=TableFileType.ASSIGNMENTS)
            buffer = pd.DataFrame({"pair_id": ["1"], "z": ["0"]})
            table.set_buffer(buffer)
            table.write_file()
            write_mock.assert_called_with("assign.csv", buffer)

    def test_rows_numbered_from_one(self):
        table = TableFile()
        table.set_buffer(pd.DataFrame({"pair_id": ["1", "2"], "z": ["1", "0"]}))
        self.assertEqual([(1, {"pair_id": "1", "z": "1"}), (2, {"pair_id": "2", "z": "0"})], list(table.rows()))

    def test_missing_file_raises(self):
        with self.assertRaises(CsvFormatError):
            TableFile.read_table_contents(data_file("no_such_file.csv"), TableFileType.UNITS)

    def test_missing_column_raises(self):
        with self.assertRaises(CsvFormatError) as context:
            TableFile.read_table_contents(data_file("missing_outcome_units.csv"), TableFileType.UNITS)
        self.assertEqual("outcome", context.exception.column)

    def test_unexpected_column_raises(self):
        with self.assertRaises(CsvFormatError) as context:
            TableFile.read_table_contents(data_file("extra_column_assign.csv"), TableFileType.ASSIGNMENTS)
        self.assertEqual("site", context.exception.column)

    def test_missing_column_reported_before_unexpected_column(self):
        with self.assertRaises(CsvFormatError) as context:
            TableFile.read_table_contents(data_file("ds_a_units.csv"), TableFileType.ASSIGNMENTS)
        self.assertEqual("z", context.exception.column)


class TestReadTables(unittest.TestCase):
    """
    A test class for the table readers.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_read_units(self):
        units = read_units_csv(data_file("ds_a_units.csv"))
        self.assertEqual(8, len(units))
        self.assertEqual(UnitRecord("1", 1, 2.0, None), units[0])
        self.assertEqual(UnitRecord("2", 2, 7.0, None), units[7])

    def test_read_units_with_receipts(self):
        units = read_units_csv(data_file("ds_b_units.csv"))
        self.assertEqual([1, 1, 0, 0, 0, 0, 1, 0], [unit.receipt for unit in units])

    def test_non_numeric_outcome_names_row_and_column(self):
        with self.assertRaises(CsvFormatError) as context:
            read_units_csv(data_file("bad_outcome_units.csv"))
        self.assertEqual(5, context.exception.row)
        self.assertEqual("outcome", context.exception.column)

    def test_partial_receipts_raise(self):
        with self.assertRaises(CsvFormatError) as context:
            read_units_csv(data_file("partial_receipt_units.csv"))
        self.assertEqual("receipt", context.exception.column)

    def test_duplicate_unit_names_row(self):
        with self.assertRaises(CsvFormatError) as context:
            read_units_csv(data_file("duplicate_unit_units.csv"))
        self.assertEqual(4, context.exception.row)
        self.assertEqual("unit_id", context.exception.column)

    def test_read_assignments(self):
        self.assertEqual({"1": 1, "2": 0}, read_assignments_csv(data_file("ds_a_assign.csv")))

    def test_read_clusters(self):
        sizes = read_clusters_csv(data_file("ds_a_clusters.csv"))
        self.assertEqual({("1", 1): 2, ("1", 2): 2, ("2", 1): 2, ("2", 2): 2}, sizes)

    def test_read_profiles(self):
        profiles = read_profiles_csv(data_file("profiles.csv"))
        self.assertEqual(6, len(profiles))
        self.assertEqual("A", profiles[0].cluster_id)
        self.assertEqual(20.0, profiles[0].size)
        self.assertEqual((1.0, 5.0), profiles[0].covariates)

    def test_covariate_columns_sorted_numerically(self):
        self.assertEqual(["cov_1", "cov_2"], covariate_columns(["cluster_id", "cov_2", "size", "cov_1"]))

    def test_covariate_gap_raises(self):
        with self.assertRaises(CsvFormatError):
            covariate_columns(["cluster_id", "size", "cov_1", "cov_3"])

    def test_unknown_profile_column_raises(self):
        with self.assertRaises(CsvFormatError):
            covariate_columns(["cluster_id", "size", "region"])

    def test_read_dataset(self):
        self.assertEqual(ds_a(), read_dataset(data_file("ds_a_units.csv"), data_file("ds_a_assign.csv")))

    def test_read_dataset_with_populations(self):
        dataset = read_dataset(
            data_file("ds_a_units.csv"), data_file("ds_a_assign.csv"), data_file("ds_a_clusters.csv")
        )
        self.assertEqual(ds_a(populations=True), dataset)


class TestWriteTables(unittest.TestCase):
    """
    A test class for the table writers.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        self.directory = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.directory.cleanup()

    def path(self, name):
        return os.path.join(self.directory.name, name)

    def test_written_tables_read_back_as_same_dataset(self):
        dataset = ds_a(populations=True)
        write_units_csv(self.path("units.csv"), dataset)
        write_assignments_csv(self.path("assign.csv"), dataset)
        write_clusters_csv(self.path("clusters.csv"), dataset)
        self.assertEqual(
            dataset, read_dataset(self.path("units.csv"), self.path("assign.csv"), self.path("clusters.csv"))
        )

    def test_receipts_written_when_present(self):
        write_units_csv(self.path("units.csv"), ds_b())
        with open(self.path("units.csv")) as units_file:
            self.assertEqual("pair_id,cluster_slot,outcome,receipt", units_file.readline().strip())

    def test_clusters_without_population_left_out(self):
        write_clusters_csv(self.path("clusters.csv"), ds_a())
        with open(self.path("clusters.csv")) as clusters_file:
            self.assertEqual(["pair_id,cluster_slot,population_size"], clusters_file.read().split())

# M A I N #####################################################################


if __name__ == '__main__':
    unittest.main()

# E N D   O F   F I L E #######################################################
