"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
A table of intention-to-treat and complier effects for every estimand a
dataset supports.
"""
# I M P O R T S ###############################################################

import math

from typing import NamedTuple

from mpcr.compliance import analyze_compliance
from mpcr.estimand import Estimand
from mpcr.variance import DEFAULT_LEVEL, DEFAULT_REGIME, analyze

# C L A S S E S ###############################################################


class SummaryRow(NamedTuple):
    estimand: Estimand
    effect: str
    point: float
    std_error: float
    ci_lower: float
    ci_upper: float
    upper_bound: bool

    def to_dict(self):
        return {
            "estimand": self.estimand.value,
            "effect": self.effect,
            "point": self.point,
            "std_error": self.std_error,
            "ci_lower": self.ci_lower,
            "ci_upper": self.ci_upper,
            "upper_bound": self.upper_bound,
        }

# F U N C T I O N S ###########################################################


def available_estimands(dataset):
    if dataset.has_populations:
        return [Estimand.SATE, Estimand.CATE, Estimand.UATE, Estimand.PATE]
    return [Estimand.SATE, Estimand.UATE]


def estimate_table(dataset, level=DEFAULT_LEVEL, regime=DEFAULT_REGIME):
    """
    Builds one row per estimand and effect type, each with its default
    weights. Complier rows are added when receipts are present.

    :param dataset: the MpcrDataset
    :param level: the confidence level
    :param regime: the CiRegime
    :return: a list of SummaryRow
    """
    rows = []
    for estimand in available_estimands(dataset):
        report = analyze(dataset, estimand, None, level, regime)
        rows.append(SummaryRow(
            estimand, "itt", report.point, report.std_error, report.ci_lower, report.ci_upper,
            estimand.is_conservative()
        ))
        if dataset.has_receipts:
            compliance = analyze_compliance(dataset, estimand, None, level, regime)
            rows.append(SummaryRow(
                estimand, "cace", compliance.cace, math.sqrt(compliance.cace_variance),
                compliance.ci_lower, compliance.ci_upper, estimand.is_conservative()
            ))
    return rows

# E N D   O F   F I L E #######################################################
