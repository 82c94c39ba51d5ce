"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Design planning: power of the paired t test, sample size and minimum
detectable effect solvers, relative efficiency of matching, pair
correlations and the break-even correlation.
"""
# I M P O R T S ###############################################################

import math

from enum import Enum
from typing import NamedTuple, Optional

import numpy as np

from scipy.optimize import brentq

from mpcr.dataset import arm_means, weighted_differences
from mpcr.estimand import Estimand
from mpcr.estimators import resolve_scheme
from mpcr.exceptions import ConfigurationError, EstimationError
from mpcr.special import noncentral_t_cdf, t_quantile
from mpcr.weights import ARITHMETIC_POPULATION, ARITHMETIC_SAMPLE

# C O N S T A N T S ###########################################################

# Absolute tolerance of every bracketing root-find
ROOT_TOLERANCE = 1e-10

# Power comparisons allow for the root-find tolerance
POWER_TOLERANCE = 1e-9

MAX_PAIRS = 10 ** 7

MAX_BRACKET = 1e6

# C L A S S E S ###############################################################


class PowerMode(Enum):
    """
    The PowerMode enumeration stores which power function is used: the
    unit-level effect (UATE) or the population effect (PATE), whose
    noncentrality is attenuated by within-cluster sampling.
    """
    UATE = "uate"
    PATE = "pate"

    @classmethod
    def from_str(cls, value):
        for mode in cls:
            if mode.value == str(value).lower():
                return mode
        raise ConfigurationError("unknown power mode [{}]".format(value), "mode")


class PowerDesign(NamedTuple):
    alpha: float
    m: int
    effect: float
    pi: Optional[float] = None
    nbar: Optional[float] = None


class EfficiencyReport(NamedTuple):
    """
    The estimated variance ratio of unmatched over matched randomization.
    """
    ratio: float
    covariance_term: float
    variance_terms: tuple
    cov_share: float
    equal_sizes: bool

    def to_dict(self):
        return {
            "ratio": self.ratio,
            "covariance_term": self.covariance_term,
            "variance_terms": list(self.variance_terms),
            "cov_share": self.cov_share,
            "equal_sizes": self.equal_sizes,
        }


class MdeRow(NamedTuple):
    m: int
    nbar: float
    effect: float
    absolute_effect: float

    def to_dict(self):
        return self._asdict()

# F U N C T I O N S ###########################################################


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise ConfigurationError("alpha {} outside (0, 1)".format(alpha), "alpha")


def _check_target(alpha, target_power):
    _check_alpha(alpha)
    if not 0.0 < target_power < 1.0:
        raise ConfigurationError("power {} outside (0, 1)".format(target_power), "power")
    if target_power <= alpha:
        raise ConfigurationError("power {} must exceed alpha {}".format(target_power, alpha), "power")


def _check_pairs(m):
    if m < 2:
        raise ConfigurationError("at least two pairs are required, found {}".format(m), "pairs")


def power_from_noncentrality(noncentrality, dof, alpha):
    """
    Returns the power of a two-sided t test of size alpha with the given
    degrees of freedom when the statistic has the given noncentrality.

    :param noncentrality: the noncentrality parameter
    :param dof: the degrees of freedom
    :param alpha: the test size
    :return: the rejection probability in [0, 1]
    """
    _check_alpha(alpha)
    critical = t_quantile(dof, 1.0 - alpha / 2.0)
    value = 1.0 + noncentral_t_cdf(-critical, dof, noncentrality) - noncentral_t_cdf(critical, dof, noncentrality)
    return min(1.0, max(0.0, value))


def noncentrality(design, mode=PowerMode.UATE):
    """
    Returns the noncentrality d * sqrt(m), divided by sqrt(1 + pi / nbar)
    for the population effect.
    """
    _check_pairs(design.m)
    value = design.effect * math.sqrt(design.m)
    if mode is PowerMode.PATE:
        if design.pi is None or design.nbar is None:
            raise ConfigurationError("population power needs both pi and nbar", "pi")
        if design.pi < 0.0 or not design.nbar > 0.0:
            raise ConfigurationError("pi must be nonnegative and nbar positive", "pi")
        value /= math.sqrt(1.0 + design.pi / design.nbar)
    return value


def power(design, mode=PowerMode.UATE):
    return power_from_noncentrality(noncentrality(design, mode), design.m - 1, design.alpha)


def power_uate(design):
    """
    The power to detect a standardized unit-level effect with m pairs.

    :param design: a PowerDesign
    :return: the power in [0, 1]
    """
    return power(design, PowerMode.UATE)


def power_pate(design):
    """
    The power to detect a standardized population effect with m pairs of
    clusters of mean size nbar, with pi the ratio of within-cluster to
    between-pair variation.

    :param design: a PowerDesign with pi and nbar set
    :return: the power in [0, 1]
    """
    return power(design, PowerMode.PATE)


def sample_size(alpha, target_power, effect, mode=PowerMode.UATE, pi=None, nbar=None, max_pairs=MAX_PAIRS):
    """
    Finds the smallest number of pairs whose power reaches the target.
    Power increases with m, so the search doubles an upper bracket and then
    bisects over the integers.

    :return: the number of pairs, at least 2
    """
    _check_target(alpha, target_power)
    if effect == 0.0:
        raise EstimationError("unreachable power: the effect is zero", "sample_size")

    def reaches(m):
        return power(PowerDesign(alpha, m, effect, pi, nbar), mode) >= target_power - POWER_TOLERANCE

    if reaches(2):
        return 2

    low, high = 2, 4
    while not reaches(high):
        low, high = high, high * 2
        if high > max_pairs:
            raise EstimationError("unreachable power within {} pairs".format(max_pairs), "sample_size")

    while high - low > 1:
        middle = (low + high) // 2
        if reaches(middle):
            high = middle
        else:
            low = middle
    return high


def minimum_detectable_effect(alpha, target_power, m, mode=PowerMode.UATE, pi=None, nbar=None):
    """
    Solves power(d) = target for the standardized effect d > 0.

    :return: the minimum detectable standardized effect
    """
    _check_target(alpha, target_power)
    _check_pairs(m)

    def shortfall(effect):
        return power(PowerDesign(alpha, m, effect, pi, nbar), mode) - target_power

    upper = 1.0
    while shortfall(upper) < 0.0:
        upper *= 2.0
        if upper > MAX_BRACKET:
            raise EstimationError("no detectable effect below {}".format(MAX_BRACKET), "mde")
    return float(brentq(shortfall, 0.0, upper, xtol=ROOT_TOLERANCE))


def mde_grid(alpha, target_power, pairs, nbars, pi, var_p=1.0):
    """
    Tabulates the minimum detectable population effect over a grid of pair
    counts and mean cluster sizes, in standardized and in absolute units.

    :param pairs: an iterable of pair counts
    :param nbars: an iterable of mean cluster sizes
    :param pi: the variance ratio
    :param var_p: the variance of the within-pair mean differences
    :return: a list of MdeRow
    """
    if var_p < 0.0:
        raise ConfigurationError("var_p must be nonnegative", "var_p")
    rows = []
    for m in pairs:
        for nbar in nbars:
            effect = minimum_detectable_effect(alpha, target_power, m, PowerMode.PATE, pi, nbar)
            rows.append(MdeRow(int(m), float(nbar), effect, effect * math.sqrt(var_p)))
    return rows


def solve_noncentrality(dof, alpha, target_power):
    """
    Finds the noncentrality at which a two-sided t test reaches the target
    power.
    """
    _check_target(alpha, target_power)

    def shortfall(value):
        return power_from_noncentrality(value, dof, alpha) - target_power

    upper = 1.0
    while shortfall(upper) < 0.0:
        upper *= 2.0
        if upper > MAX_BRACKET:
            raise EstimationError("target power unreachable", "noncentrality")
    return float(brentq(shortfall, 0.0, upper, xtol=ROOT_TOLERANCE))


def break_even_correlation(m, alpha=0.05, target_power=0.8):
    """
    Returns the smallest within-pair correlation at which a matched design
    with m pairs detects effects at least as small as an unmatched design
    with 2m clusters. Matching leaves m - 1 degrees of freedom against
    2(m - 1), and reduces the variance of differences by (1 - rho), so the
    two detectable effects agree at rho = 1 - (lambda_U / lambda_M)^2.

    :param m: the number of pairs
    :param alpha: the test size
    :param target_power: the power
    :return: the break-even correlation in (0, 1)
    """
    _check_pairs(m)
    matched = solve_noncentrality(m - 1, alpha, target_power)
    unmatched = solve_noncentrality(2 * (m - 1), alpha, target_power)
    return 1.0 - (unmatched / matched) ** 2


def relative_efficiency_estimate(dataset, estimand=Estimand.SATE):
    """
    Estimates how much more efficient the matched design was than an
    unmatched one, from the covariance of weighted treated and control
    cluster means across pairs.

    :param dataset: the MpcrDataset, with at least two pairs
    :param estimand: the Estimand selecting the weights
    :return: an EfficiencyReport
    """
    if dataset.m < 2:
        raise EstimationError("efficiency needs at least two pairs", "efficiency")
    scheme = resolve_scheme(dataset, estimand)
    _, normalized, _ = weighted_differences(dataset, scheme)
    treated, control = arm_means(dataset)
    covariance = np.cov(normalized * treated, normalized * control, ddof=1)
    variances = (float(covariance[0, 0]), float(covariance[1, 1]))
    total = variances[0] + variances[1]
    if total == 0.0:
        raise EstimationError("treated and control series have no variance", "efficiency")

    share = 2.0 * float(covariance[0, 1]) / total
    ratio = math.inf if share >= 1.0 else 1.0 / (1.0 - share)
    equal_sizes = all(pair.clusters[0].sample_size == pair.clusters[1].sample_size for pair in dataset.pairs)
    return EfficiencyReport(ratio, float(covariance[0, 1]), variances, share, equal_sizes)


def pair_correlation(dataset, weighted=False):
    """
    The across-pair Pearson correlation of treated and control cluster
    means, optionally multiplied by the pairs' normalized size weights.
    """
    if dataset.m < 2:
        raise EstimationError("a correlation needs at least two pairs", "correlation")
    treated, control = arm_means(dataset)
    if weighted:
        scheme = ARITHMETIC_POPULATION if dataset.has_populations else ARITHMETIC_SAMPLE
        _, normalized, _ = weighted_differences(dataset, scheme)
        treated = normalized * treated
        control = normalized * control
    if np.var(treated) == 0.0 or np.var(control) == 0.0:
        raise EstimationError("a cluster mean series has zero variance", "correlation")
    return float(np.corrcoef(treated, control)[0, 1])


def estimate_pi(dataset):
    """
    Estimates the ratio of the mean within-cluster variances to the
    variance of the within-pair differences across pairs.

    :param dataset: the MpcrDataset; every cluster needs two units
    :return: a nonnegative float
    """
    if dataset.m < 2:
        raise EstimationError("pi needs at least two pairs", "pi")
    for pair in dataset.pairs:
        for cluster in pair.clusters:
            if cluster.sample_size < 2:
                raise EstimationError(
                    "cluster [{}:{}] needs two units for a variance".format(pair.pair_id, cluster.cluster_slot),
                    "pi"
                )
    treated = np.mean([pair.treated.variance() for pair in dataset.pairs])
    control = np.mean([pair.control.variance() for pair in dataset.pairs])
    spread = np.var([pair.difference() for pair in dataset.pairs], ddof=1)
    if spread == 0.0:
        raise EstimationError("the within-pair differences have zero variance", "pi")
    return float((treated + control) / spread)

# E N D   O F   F I L E #######################################################
