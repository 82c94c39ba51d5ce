"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Enumerations describing what is estimated and how it is reported.
"""
# I M P O R T S ###############################################################

from enum import Enum

from mpcr.exceptions import ConfigurationError

# C L A S S E S ###############################################################


class Estimand(Enum):
    """
    The Estimand enumeration stores which average treatment effect is the
    target of an analysis. SATE averages over the sampled units, CATE over
    the populations of the sampled clusters, UATE over sampled units of a
    super-population of clusters, and PATE over the whole population.
    """
    SATE = "sate"
    CATE = "cate"
    UATE = "uate"
    PATE = "pate"

    @classmethod
    def from_str(cls, value):
        """
        Looks up an estimand by its lowercase command-line name.

        :param value: the name, for example "sate"
        :return: the matching Estimand
        """
        for estimand in cls:
            if estimand.value == str(value).lower():
                return estimand
        raise ConfigurationError("unknown estimand [{}]".format(value), "estimand")

    def requires_populations(self):
        return self in (Estimand.CATE, Estimand.PATE)

    def is_conservative(self):
        """
        Returns True when the design-based variance is only an upper bound
        for this estimand.
        """
        return self in (Estimand.SATE, Estimand.CATE)


class CiRegime(Enum):
    """
    The CiRegime enumeration stores which reference distribution is used for
    confidence intervals.
    """
    MANY_PAIRS = "normal"
    FEW_PAIRS_MANY_UNITS = "t"
    FEW_PAIRS_FEW_UNITS = "t-normal"

    @classmethod
    def from_str(cls, value):
        for regime in cls:
            if regime.value == str(value).lower():
                return regime
        raise ConfigurationError("unknown regime [{}]".format(value), "regime")

    def uses_t(self):
        return self is not CiRegime.MANY_PAIRS


class Series(Enum):
    """
    The Series enumeration selects which unit-level measurement a
    within-pair difference is computed from.
    """
    OUTCOME = 0
    RECEIPT = 1

# E N D   O F   F I L E #######################################################
