"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Design-based variance estimation and confidence intervals.
"""
# I M P O R T S ###############################################################

import math

from typing import NamedTuple, Union

import numpy as np

from mpcr.dataset import weighted_differences
from mpcr.estimand import CiRegime, Estimand, Series
from mpcr.estimators import point_estimate, resolve_scheme, weighted_mean_difference
from mpcr.exceptions import ConfigurationError, EstimationError
from mpcr.special import normal_quantile, t_quantile
from mpcr.weights import CONSTANT

# C O N S T A N T S ###########################################################

DEFAULT_LEVEL = 0.95

DEFAULT_REGIME = CiRegime.FEW_PAIRS_MANY_UNITS

# C L A S S E S ###############################################################


class EstimateReport(NamedTuple):
    """
    A point estimate with its design-based variance and confidence
    interval. For SATE and CATE the variance is an upper bound, which the
    conservative flag records.
    """
    estimand: Estimand
    scheme: object
    point: float
    variance: float
    std_error: float
    ci_lower: float
    ci_upper: float
    confidence_level: float
    dof: Union[int, str]
    conservative: bool
    regime: CiRegime
    m: int
    n: int

    def to_dict(self):
        return {
            "estimand": self.estimand.value,
            "weights": self.scheme.name,
            "point": self.point,
            "variance": self.variance,
            "std_error": self.std_error,
            "ci_lower": self.ci_lower,
            "ci_upper": self.ci_upper,
            "confidence_level": self.confidence_level,
            "dof": self.dof,
            "conservative": self.conservative,
            "regime": self.regime.value,
            "m": self.m,
            "n": self.n,
        }

# F U N C T I O N S ###########################################################


def design_covariance(first, second, n):
    """
    The design-based covariance of two weighted pair series,
    m / ((m - 1) n^2) * sum_k (a_k - mean(a)) (b_k - mean(b)), where a_k and
    b_k are normalized weights times within-pair differences. With equal
    series it is the variance estimator. Operates on the last axis.

    :param first: the series a_k
    :param second: the series b_k
    :param n: the total number of sampled units
    :return: the covariance estimate
    """
    first = np.asarray(first, dtype=float)
    second = np.asarray(second, dtype=float)
    m = first.shape[-1]
    centred_first = first - first.mean(axis=-1, keepdims=True)
    centred_second = second - second.mean(axis=-1, keepdims=True)
    return m / ((m - 1) * np.asarray(n, dtype=float) ** 2) * np.sum(centred_first * centred_second, axis=-1)


def sigma_hat(normalized_weights, differences, n):
    return design_covariance(normalized_weights * differences, normalized_weights * differences, n)


def delta_hat(normalized_weights, differences, n):
    """
    The harmonic-literature variance estimator,
    (sum w^2 / n^3) * sum_k w_k (D_k - psi)^2. Operates on the last axis.
    """
    normalized_weights = np.asarray(normalized_weights, dtype=float)
    n = np.asarray(n, dtype=float)
    psi = weighted_mean_difference(normalized_weights, differences)
    spread = np.sum(normalized_weights * (differences - np.expand_dims(psi, -1)) ** 2, axis=-1)
    return np.sum(normalized_weights ** 2, axis=-1) / n ** 3 * spread


def _require_pairs(dataset):
    if dataset.m < 2:
        raise EstimationError("variance unavailable with fewer than two pairs", "variance")


def variance_estimate(dataset, estimand=Estimand.SATE, scheme=None, series=Series.OUTCOME):
    """
    Computes the design-based variance estimator of the weighted estimator.

    :param dataset: the MpcrDataset, with at least two pairs
    :param estimand: the Estimand, which selects the default weights
    :param scheme: an optional WeightScheme overriding the default
    :param series: outcomes or receipts
    :return: a nonnegative float
    """
    _require_pairs(dataset)
    scheme = resolve_scheme(dataset, estimand, scheme)
    _, normalized, differences = weighted_differences(dataset, scheme, series)
    return max(0.0, float(sigma_hat(normalized, differences, dataset.n)))


def harmonic_variance_estimate(dataset, scheme=None, estimand=Estimand.SATE):
    """
    Computes the variance estimator used alongside the harmonic-weight
    estimator in the literature, for any fixed weights.
    """
    _require_pairs(dataset)
    scheme = resolve_scheme(dataset, estimand, scheme)
    _, normalized, differences = weighted_differences(dataset, scheme)
    return max(0.0, float(delta_hat(normalized, differences, dataset.n)))


def check_level(level):
    if not 0.0 < level < 1.0:
        raise ConfigurationError("invalid level {}: must lie in (0, 1)".format(level), "level")


def critical_value(m, level=DEFAULT_LEVEL, regime=DEFAULT_REGIME):
    """
    Returns the two-sided critical value and the degrees of freedom label
    for a regime: the normal quantile for many pairs, the t quantile with
    m - 1 degrees of freedom otherwise.
    """
    check_level(level)
    upper = 1.0 - (1.0 - level) / 2.0
    if not regime.uses_t():
        return normal_quantile(upper), "normal"
    if m < 2:
        raise EstimationError("t intervals need at least two pairs", "ci")
    return t_quantile(m - 1, upper), m - 1


def confidence_interval(point, variance, m, level=DEFAULT_LEVEL, regime=DEFAULT_REGIME):
    """
    Returns point +/- q * sqrt(variance).

    :param point: the point estimate
    :param variance: its nonnegative variance estimate
    :param m: the number of pairs
    :param level: the confidence level in (0, 1)
    :param regime: the CiRegime selecting q
    :return: a tuple (lower, upper)
    """
    if variance < 0.0:
        raise ConfigurationError("variance must be nonnegative, found {}".format(variance), "variance")
    quantile, _ = critical_value(m, level, regime)
    half_width = quantile * math.sqrt(variance)
    return point - half_width, point + half_width


def analyze(dataset, estimand=Estimand.SATE, scheme=None, level=DEFAULT_LEVEL, regime=DEFAULT_REGIME):
    """
    Runs point estimation, variance estimation and interval construction.

    :return: an EstimateReport
    """
    scheme = resolve_scheme(dataset, estimand, scheme)
    point = point_estimate(dataset, estimand, scheme)
    variance = variance_estimate(dataset, estimand, scheme)
    lower, upper = confidence_interval(point, variance, dataset.m, level, regime)
    _, dof = critical_value(dataset.m, level, regime)
    return EstimateReport(
        estimand=estimand,
        scheme=scheme,
        point=point,
        variance=variance,
        std_error=math.sqrt(variance),
        ci_lower=lower,
        ci_upper=upper,
        confidence_level=level,
        dof=dof,
        conservative=estimand.is_conservative(),
        regime=regime,
        m=dataset.m,
        n=dataset.n,
    )


def cluster_level_analysis(dataset, level=DEFAULT_LEVEL, regime=DEFAULT_REGIME):
    return analyze(dataset, Estimand.SATE, CONSTANT, level, regime)


def standard_error_ratio(dataset, scheme=None):
    """
    Returns the ratio of the harmonic-literature standard error to the
    design-based standard error, both computed with the same weights.
    """
    sigma = variance_estimate(dataset, Estimand.SATE, scheme)
    if sigma == 0.0:
        raise EstimationError("the design-based variance is zero", "std_error_ratio")
    return math.sqrt(harmonic_variance_estimate(dataset, scheme) / sigma)

# E N D   O F   F I L E #######################################################
