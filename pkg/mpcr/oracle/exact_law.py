"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Exact randomization distributions. Whole datasets are enumerated over their
assignment vectors, or over joint sampling and assignment outcomes when
those are few enough. A single pair is enumerated over its own
sample-and-assignment outcomes.
"""
# I M P O R T S ###############################################################

import itertools
import logging
import math

from enum import Enum
from typing import NamedTuple

import numpy as np

from mpcr.compliance import covariance_estimate, receipt_itt_estimate
from mpcr.estimand import Estimand, Series
from mpcr.estimators import point_estimate
from mpcr.exceptions import OracleError
from mpcr.variance import harmonic_variance_estimate, variance_estimate
from mpcr.weights import ARITHMETIC_SAMPLE

# C O N S T A N T S ###########################################################

logger = logging.getLogger(__name__)

MAX_ENUMERATION_PAIRS = 20

# Enumerations beyond this many assignments need an explicit opt-in
LARGE_ENUMERATION = 2 ** 16

MAX_SAMPLING_OUTCOMES = 100000

# C L A S S E S ###############################################################


class StatisticName(Enum):
    PSI = "psi"
    SIGMA = "sigma"
    DELTA = "delta"
    TAU = "tau"
    NU = "nu"


class Statistic(NamedTuple):
    """
    A named estimator evaluated with a fixed weighting rule.
    """
    name: StatisticName
    scheme: object = ARITHMETIC_SAMPLE

    def __call__(self, dataset):
        if self.name is StatisticName.PSI:
            return point_estimate(dataset, Estimand.SATE, self.scheme)
        if self.name is StatisticName.SIGMA:
            return variance_estimate(dataset, Estimand.SATE, self.scheme)
        if self.name is StatisticName.DELTA:
            return harmonic_variance_estimate(dataset, self.scheme)
        if self.name is StatisticName.TAU:
            return receipt_itt_estimate(dataset, self.scheme)
        return covariance_estimate(dataset, self.scheme)


class ExactLaw(NamedTuple):
    """
    A statistic's value under every equally likely outcome, keyed on the
    assignment vector or on (samples, assignment).
    """
    values: dict

    def __len__(self):
        return len(self.values)

    def array(self):
        return np.array([self.values[key] for key in sorted(self.values)], dtype=float)

    def mean(self):
        return float(self.array().mean())

    def variance(self):
        return float(self.array().var())

    def covariance(self, other):
        """
        The covariance with another law over the same assignments.
        """
        if set(self.values) != set(other.values):
            raise OracleError("laws are defined over different assignments")
        first = self.array()
        second = other.array()
        return float(np.mean((first - first.mean()) * (second - second.mean())))

# F U N C T I O N S ###########################################################


def _check_cap(m, cap, allow_large):
    if m > cap:
        raise OracleError("{} pairs exceed the enumeration cap of {}".format(m, cap))
    if 2 ** m > LARGE_ENUMERATION:
        if not allow_large:
            raise OracleError("{} assignments need allow_large=True".format(2 ** m))
        logger.warning("enumerating {} assignments".format(2 ** m))


def exact_laws(pd, statistics, cap=MAX_ENUMERATION_PAIRS, allow_large=False):
    """
    Evaluates several statistics under every assignment vector, realizing
    each assignment once. Every listed unit is observed.

    :param pd: the PotentialDataset
    :param statistics: a sequence of callables taking an MpcrDataset
    :param cap: the largest number of pairs enumerated
    :param allow_large: permit more than 2^16 assignments
    :return: a tuple of ExactLaw, one per statistic
    """
    _check_cap(pd.m, cap, allow_large)
    full = pd.fully_observed()
    values = [{} for _ in statistics]
    for assignment in itertools.product((0, 1), repeat=pd.m):
        dataset = full.realize(assignment)
        for table, statistic in zip(values, statistics):
            table[assignment] = float(statistic(dataset))
    return tuple(ExactLaw(table) for table in values)


def exact_law(pd, statistic, cap=MAX_ENUMERATION_PAIRS, allow_large=False):
    """
    Evaluates one statistic under every assignment vector.

    :param pd: the PotentialDataset
    :param statistic: a Statistic or any callable taking an MpcrDataset
    :return: the ExactLaw
    """
    return exact_laws(pd, [statistic], cap, allow_large)[0]


def sampling_outcome_count(pd):
    """
    The number of equally likely joint outcomes of simple random sampling in
    every cluster followed by the coin flips.
    """
    count = 2 ** pd.m
    for pair in pd.pairs:
        for cluster in pair.clusters:
            count *= math.comb(cluster.population_size, cluster.observed_size)
    return count


def _cluster_samples(pair):
    return list(itertools.product(*[
        itertools.combinations(range(cluster.population_size), cluster.observed_size) for cluster in pair.clusters
    ]))


def sampling_laws(pd, statistics, cap=MAX_SAMPLING_OUTCOMES):
    """
    Evaluates several statistics under every joint sampling and assignment
    outcome. Values are keyed on (samples, assignment).

    :param pd: the PotentialDataset, with its sample sizes
    :param statistics: a sequence of callables taking an MpcrDataset
    :param cap: the largest number of outcomes enumerated
    :return: a tuple of ExactLaw, one per statistic
    """
    count = sampling_outcome_count(pd)
    if count > cap:
        raise OracleError("{} sampling outcomes exceed the cap of {}".format(count, cap))
    values = [{} for _ in statistics]
    for samples in itertools.product(*[_cluster_samples(pair) for pair in pd.pairs]):
        for assignment in itertools.product((0, 1), repeat=pd.m):
            dataset = pd.realize(assignment, samples)
            for table, statistic in zip(values, statistics):
                table[(samples, assignment)] = float(statistic(dataset))
    return tuple(ExactLaw(table) for table in values)


def pair_sampling_law(pair, series=Series.OUTCOME):
    """
    Lists the within-pair difference under every equally likely outcome of
    simple random sampling in both clusters followed by the coin flip.

    :param pair: a PotentialPair
    :param series: outcomes or receipts
    :return: a numpy array of differences
    """
    first, second = pair.clusters
    count = 2 * math.comb(first.population_size, first.observed_size) * \
        math.comb(second.population_size, second.observed_size)
    if count > MAX_SAMPLING_OUTCOMES:
        raise OracleError("pair [{}] has {} sampling outcomes".format(pair.pair_id, count))

    first_treated, first_control = first.potential(True, series), first.potential(False, series)
    second_treated, second_control = second.potential(True, series), second.potential(False, series)
    differences = []
    for chosen_first in itertools.combinations(range(first.population_size), first.observed_size):
        chosen_first = list(chosen_first)
        for chosen_second in itertools.combinations(range(second.population_size), second.observed_size):
            chosen_second = list(chosen_second)
            differences.append(first_treated[chosen_first].mean() - second_control[chosen_second].mean())
            differences.append(second_treated[chosen_second].mean() - first_control[chosen_first].mean())
    return np.array(differences)

# E N D   O F   F I L E #######################################################
