"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Encouragement designs: intention-to-treat effects on receipt, the complier
average causal effect and its delta-method variance, and compliance-type
shares under monotonicity.
"""
# I M P O R T S ###############################################################

import logging

from typing import NamedTuple

import numpy as np

from mpcr.dataset import arm_means, weighted_differences
from mpcr.estimand import Estimand, Series
from mpcr.estimators import point_estimate, resolve_scheme
from mpcr.exceptions import DesignError, EstimationError
from mpcr.variance import (
    DEFAULT_LEVEL, DEFAULT_REGIME, confidence_interval, critical_value, design_covariance,
    variance_estimate
)

# C O N S T A N T S ###########################################################

logger = logging.getLogger(__name__)

# Preconditions of the instrumental-variable analysis; not testable from data
ASSUMPTIONS = (
    "no interference between units",
    "exclusion restriction: encouragement affects outcomes only through receipt",
    "monotonicity: no defiers",
)

# C L A S S E S ###############################################################


class CaceVariance(NamedTuple):
    value: float
    truncated: bool


class ComplianceReport(NamedTuple):
    """
    The full noncompliance analysis of one dataset. p_complier equals the
    intention-to-treat effect on receipt under the same weights.
    """
    estimand: Estimand
    scheme: object
    p_always: float
    p_never: float
    p_complier: float
    itt_outcome: float
    itt_receipt: float
    cace: float
    cace_variance: float
    truncated: bool
    ci_lower: float
    ci_upper: float
    confidence_level: float
    dof: object
    assumptions: tuple = ASSUMPTIONS

    def to_dict(self):
        return {
            "estimand": self.estimand.value,
            "weights": self.scheme.name,
            "p_always": self.p_always,
            "p_never": self.p_never,
            "p_complier": self.p_complier,
            "itt_outcome": self.itt_outcome,
            "itt_receipt": self.itt_receipt,
            "cace": self.cace,
            "cace_variance": self.cace_variance,
            "truncated": self.truncated,
            "ci_lower": self.ci_lower,
            "ci_upper": self.ci_upper,
            "confidence_level": self.confidence_level,
            "dof": self.dof,
            "assumptions": list(self.assumptions),
        }

# F U N C T I O N S ###########################################################


def _require_receipts(dataset):
    if not dataset.has_receipts:
        raise DesignError("missing receipts")


def receipt_itt_estimate(dataset, scheme=None, estimand=Estimand.SATE):
    """
    The weighted estimator applied to treatment receipts.
    """
    _require_receipts(dataset)
    return point_estimate(dataset, estimand, scheme, Series.RECEIPT)


def _check_compliers(tau):
    if tau == 0.0:
        raise EstimationError("no identified compliers: the effect on receipt is zero", "cace")


def cace_estimate(dataset, scheme=None, estimand=Estimand.SATE):
    """
    The instrumental-variable estimate: the effect on outcomes divided by
    the effect on receipt, both with the same weights.

    :param dataset: the MpcrDataset, with receipts
    :param scheme: an optional WeightScheme
    :param estimand: the Estimand selecting the default weights
    :return: the complier average causal effect estimate
    """
    tau = receipt_itt_estimate(dataset, scheme, estimand)
    _check_compliers(tau)
    return point_estimate(dataset, estimand, scheme) / tau


def covariance_estimate(dataset, scheme=None, estimand=Estimand.SATE):
    """
    Estimates the covariance between the outcome and receipt estimators.
    """
    _require_receipts(dataset)
    if dataset.m < 2:
        raise EstimationError("covariance unavailable with fewer than two pairs", "covariance")
    scheme = resolve_scheme(dataset, estimand, scheme)
    _, normalized, outcome_differences = weighted_differences(dataset, scheme, Series.OUTCOME)
    _, _, receipt_differences = weighted_differences(dataset, scheme, Series.RECEIPT)
    return float(design_covariance(
        normalized * outcome_differences, normalized * receipt_differences, dataset.n
    ))


def delta_method_variance(psi, tau, sigma_outcome, sigma_receipt, nu):
    """
    Plugs estimates into the delta-method variance of a ratio,
    (tau^2 sigma_Y + psi^2 sigma_R - 2 psi tau nu) / tau^4. A negative
    result is clamped to zero and flagged as truncated.

    :return: a CaceVariance
    """
    _check_compliers(tau)
    value = (tau ** 2 * sigma_outcome + psi ** 2 * sigma_receipt - 2.0 * psi * tau * nu) / tau ** 4
    if value < 0.0:
        logger.warning("negative delta-method variance {} truncated at 0".format(value))
        return CaceVariance(0.0, True)
    return CaceVariance(float(value), False)


def cace_variance(dataset, scheme=None, estimand=Estimand.SATE):
    """
    Approximates the variance of the complier effect estimate.

    :param dataset: the MpcrDataset, with receipts and at least two pairs
    :return: a CaceVariance holding the value and the truncation flag
    """
    scheme = resolve_scheme(dataset, estimand, scheme)
    tau = receipt_itt_estimate(dataset, scheme, estimand)
    _check_compliers(tau)
    psi = point_estimate(dataset, estimand, scheme)
    return delta_method_variance(
        psi,
        tau,
        variance_estimate(dataset, estimand, scheme),
        variance_estimate(dataset, estimand, scheme, Series.RECEIPT),
        covariance_estimate(dataset, scheme, estimand),
    )


def compliance_shares(dataset, scheme=None, estimand=Estimand.SATE):
    """
    Estimates the shares of always-takers, never-takers and compliers. The
    control clusters reveal always-takers, the treated clusters never-takers;
    each pair contributes with its normalized weight.

    :return: a tuple (p_always, p_never, p_complier)
    """
    _require_receipts(dataset)
    scheme = resolve_scheme(dataset, estimand, scheme)
    _, normalized, _ = weighted_differences(dataset, scheme, Series.RECEIPT)
    treated, control = arm_means(dataset, Series.RECEIPT)
    p_always = float(np.sum(normalized * control) / np.sum(normalized))
    p_never = 1.0 - float(np.sum(normalized * treated) / np.sum(normalized))
    return p_always, p_never, 1.0 - p_always - p_never


def analyze_compliance(dataset, estimand=Estimand.SATE, scheme=None, level=DEFAULT_LEVEL,
                       regime=DEFAULT_REGIME):
    """
    Runs the complete noncompliance analysis.

    :return: a ComplianceReport
    """
    scheme = resolve_scheme(dataset, estimand, scheme)
    p_always, p_never, p_complier = compliance_shares(dataset, scheme, estimand)
    itt_receipt = receipt_itt_estimate(dataset, scheme, estimand)
    itt_outcome = point_estimate(dataset, estimand, scheme)
    cace = cace_estimate(dataset, scheme, estimand)
    variance = cace_variance(dataset, scheme, estimand)
    lower, upper = confidence_interval(cace, variance.value, dataset.m, level, regime)
    _, dof = critical_value(dataset.m, level, regime)
    return ComplianceReport(
        estimand=estimand,
        scheme=scheme,
        p_always=p_always,
        p_never=p_never,
        p_complier=p_complier,
        itt_outcome=itt_outcome,
        itt_receipt=itt_receipt,
        cace=cace,
        cace_variance=variance.value,
        truncated=variance.truncated,
        ci_lower=lower,
        ci_upper=upper,
        confidence_level=level,
        dof=dof,
    )


# E N D   O F   F I L E #######################################################
