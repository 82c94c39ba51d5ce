"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Point estimators for matched-pair designs: the general weighted estimator,
the cluster-level estimator and the known-group mixture estimator.
"""
# I M P O R T S ###############################################################

import numpy as np

from mpcr.dataset import weighted_differences
from mpcr.estimand import Estimand, Series
from mpcr.exceptions import DesignError
from mpcr.weights import CONSTANT, HARMONIC_SAMPLE, default_scheme

# F U N C T I O N S ###########################################################


def resolve_scheme(dataset, estimand, scheme=None):
    """
    Picks the weighting rule for an estimand, checking that the dataset can
    support it.

    :param dataset: the MpcrDataset
    :param estimand: the Estimand being targeted
    :param scheme: an explicit WeightScheme, or None for the default
    :return: the WeightScheme to use
    """
    if estimand.requires_populations() and not dataset.has_populations:
        raise DesignError("{} requires population sizes".format(estimand.name))
    return scheme if scheme is not None else default_scheme(estimand)


def weighted_mean_difference(weights, differences):
    """
    The general weighted estimator on already-extracted arrays. Works on
    the last axis so that batches of replicates can be evaluated at once.

    :param weights: pair weights, raw or normalized
    :param differences: within-pair differences
    :return: sum(w * D) / sum(w)
    """
    weights = np.asarray(weights, dtype=float)
    return np.sum(weights * differences, axis=-1) / np.sum(weights, axis=-1)


def point_estimate(dataset, estimand=Estimand.SATE, scheme=None, series=Series.OUTCOME):
    """
    Computes the weighted average of within-pair mean differences.

    :param dataset: the MpcrDataset
    :param estimand: the Estimand, which selects the default weights
    :param scheme: an optional WeightScheme overriding the default
    :param series: estimate on outcomes or on receipts
    :return: the point estimate as a float
    """
    scheme = resolve_scheme(dataset, estimand, scheme)
    raw, _, differences = weighted_differences(dataset, scheme, series)
    return float(weighted_mean_difference(raw, differences))


def cluster_level_estimate(dataset):
    """
    The unweighted mean of the within-pair differences, i.e. the estimator
    that treats each cluster mean as a single observation.
    """
    return point_estimate(dataset, Estimand.SATE, CONSTANT)


def mixture_estimate(dataset, groups):
    """
    Estimates CATE when pairs fall into known homogeneous groups. Within
    each group the harmonic-weight estimator gives the group effect; the
    group effects are then averaged with the population sizes of the pairs.

    :param dataset: the MpcrDataset, with population sizes
    :param groups: a mapping pair_id -> group label
    :return: the mixture estimate as a float
    """
    if not dataset.has_populations:
        raise DesignError("the mixture estimator requires population sizes")
    if not groups:
        raise DesignError("empty group label set")

    missing = [pair_id for pair_id in dataset.pair_ids if pair_id not in groups]
    if missing:
        raise DesignError("pair [{}] has no group label".format(missing[0]), missing[0])

    raw, _, differences = weighted_differences(dataset, HARMONIC_SAMPLE)
    labels = np.array([groups[pair_id] for pair_id in dataset.pair_ids], dtype=object)

    group_effects = {}
    for label in dict.fromkeys(labels):
        members = labels == label
        group_effects[label] = weighted_mean_difference(raw[members], differences[members])

    populations = np.array([
        pair.clusters[0].population_size + pair.clusters[1].population_size for pair in dataset.pairs
    ], dtype=float)
    effects = np.array([group_effects[label] for label in labels], dtype=float)
    return float(np.sum(populations * effects) / populations.sum())

# E N D   O F   F I L E #######################################################
