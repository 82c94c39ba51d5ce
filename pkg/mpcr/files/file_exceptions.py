"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
This file contains Exceptions for the table and report files.
"""
# C L A S S E S ###############################################################


class CsvFormatError(Exception):
    """
    CsvFormatErrors are raised when an input table cannot be parsed. The
    row is the 1-based data row (the header is not counted) and the column
    is the header name of the offending field, when either is known.
    """
    def __init__(self, value, row=None, column=None):
        super().__init__()
        self.value = value
        self.row = row
        self.column = column

    def __str__(self):
        return repr(self.value)

    def location(self):
        if self.row is None and self.column is None:
            return ""
        if self.row is None:
            return "column {}".format(self.column)
        if self.column is None:
            return "row {}".format(self.row)
        return "row {}, column {}".format(self.row, self.column)


# E N D   O F   F I L E #######################################################
