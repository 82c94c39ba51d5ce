"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Estimators for unmatched cluster randomization, where m of 2m clusters are
assigned to treatment without prior pairing.
"""
# I M P O R T S ###############################################################

from typing import NamedTuple, Optional

import numpy as np

from mpcr.estimand import Estimand
from mpcr.exceptions import DesignError, EstimationError

# C L A S S E S ###############################################################


class UmcrCluster(NamedTuple):
    cluster_id: str
    assignment: int
    outcomes: tuple
    population_size: Optional[int] = None

    @property
    def sample_size(self):
        return len(self.outcomes)

    def mean(self):
        return float(np.mean(self.outcomes))


class UmcrDataset(object):
    """
    A completely randomized set of clusters: exactly half are treated.
    """
    def __init__(self, clusters):
        self.clusters = tuple(clusters)
        if len(self.clusters) == 0:
            raise DesignError("empty design")
        for cluster in self.clusters:
            if cluster.assignment not in (0, 1):
                raise DesignError("cluster [{}]: assignment must be 0 or 1".format(cluster.cluster_id))
            if cluster.sample_size == 0:
                raise DesignError("empty cluster [{}]".format(cluster.cluster_id))
        with_populations = [cluster.population_size is not None for cluster in self.clusters]
        if any(with_populations) and not all(with_populations):
            raise DesignError("partial populations")
        if 2 * self.treated_count != len(self.clusters):
            raise DesignError("{} of {} clusters treated; exactly half must be".format(
                self.treated_count, len(self.clusters)))

    @property
    def treated_count(self):
        return sum(1 for cluster in self.clusters if cluster.assignment == 1)

    @property
    def m(self):
        return len(self.clusters) // 2

    @property
    def n(self):
        return sum(cluster.sample_size for cluster in self.clusters)

    @property
    def has_populations(self):
        return all(cluster.population_size is not None for cluster in self.clusters)

# F U N C T I O N S ###########################################################


def normalized_cluster_weights(umcr, estimand):
    """
    Cluster weights normalized to sum to the total number of sampled units:
    sample sizes for SATE and UATE, population sizes for CATE and PATE.

    :param umcr: the UmcrDataset
    :param estimand: the Estimand being targeted
    :return: a numpy array of weights
    """
    if estimand.requires_populations():
        if not umcr.has_populations:
            raise DesignError("{} requires population sizes".format(estimand.name))
        sizes = np.array([cluster.population_size for cluster in umcr.clusters], dtype=float)
    else:
        sizes = np.array([cluster.sample_size for cluster in umcr.clusters], dtype=float)
    return umcr.n * sizes / sizes.sum()


def umcr_point_estimate(umcr, estimand=Estimand.SATE):
    """
    The weighted difference of treated and control cluster means,
    (2/n) * sum_j w_j * (+/- mean_j).

    :param umcr: the UmcrDataset
    :param estimand: the Estimand being targeted
    :return: the point estimate as a float
    """
    weights = normalized_cluster_weights(umcr, estimand)
    signs = np.array([1.0 if cluster.assignment == 1 else -1.0 for cluster in umcr.clusters])
    means = np.array([cluster.mean() for cluster in umcr.clusters])
    return float(2.0 / umcr.n * np.sum(weights * signs * means))


def umcr_kappa(umcr):
    """
    The pooled difference in means commonly reported for this design:
    treated-unit mean minus control-unit mean, ignoring cluster boundaries.
    """
    treated = [y for cluster in umcr.clusters if cluster.assignment == 1 for y in cluster.outcomes]
    control = [y for cluster in umcr.clusters if cluster.assignment == 0 for y in cluster.outcomes]
    if not treated or not control:
        raise EstimationError("all clusters are in the same arm", "kappa")
    return float(np.mean(treated) - np.mean(control))


def umcr_variance_estimate(umcr, estimand=Estimand.SATE):
    """
    Estimates the variance of umcr_point_estimate from the spread of the
    weighted cluster means within each arm.

    :param umcr: the UmcrDataset
    :param estimand: the Estimand being targeted
    :return: a nonnegative float
    """
    if umcr.m < 2:
        raise EstimationError("the variance needs at least two clusters per arm", "variance")
    weights = normalized_cluster_weights(umcr, estimand)
    weighted = weights * np.array([cluster.mean() for cluster in umcr.clusters])
    treated = np.array([cluster.assignment == 1 for cluster in umcr.clusters])
    spread = np.var(weighted[treated], ddof=1) + np.var(weighted[~treated], ddof=1)
    return float(4.0 * umcr.m / umcr.n ** 2 * spread)

# E N D   O F   F I L E #######################################################
