"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
This file contains Exceptions for the MPCR toolkit.
"""
# C L A S S E S ###############################################################


class DesignError(Exception):
    """
    Design errors occur when a dataset violates the structure of a
    matched-pair design: a pair without exactly two clusters, an empty
    cluster, receipts outside {0, 1}, or population sizes given for only
    some of the clusters.
    """
    def __init__(self, value, pair_id=None):
        super().__init__()
        self.value = value
        self.pair_id = pair_id

    def __str__(self):
        return repr(self.value)


class EstimationError(Exception):
    """
    Estimation errors occur when a quantity cannot be computed from an
    otherwise valid dataset, for example a variance with fewer than two
    pairs, or a complier effect when no compliers are identified.
    """
    def __init__(self, value, quantity=None):
        super().__init__()
        self.value = value
        self.quantity = quantity

    def __str__(self):
        return repr(self.value)


class ConfigurationError(Exception):
    """
    Configuration errors are raised when arguments are out of range or
    inconsistent with each other (confidence levels, test sizes, flags).
    """
    def __init__(self, value, argument=None):
        super().__init__()
        self.value = value
        self.argument = argument

    def __str__(self):
        return repr(self.value)


class PairingError(Exception):
    """
    PairingErrors are raised when a set of cluster profiles cannot be
    formed into a perfect matching.
    """
    pass


class OracleError(Exception):
    """
    OracleErrors are raised when an enumeration exceeds its configured cap
    or when an identity does not apply to a potential-outcome dataset.
    """
    pass

# E N D   O F   F I L E #######################################################
