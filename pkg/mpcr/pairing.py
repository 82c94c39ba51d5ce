"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Construction of matched pairs from cluster profiles before randomization,
and the coin flip that assigns treatment within each pair.
"""
# I M P O R T S ###############################################################

import logging

from functools import lru_cache
from typing import NamedTuple

import numpy as np

from scipy.spatial.distance import pdist, squareform

from mpcr.exceptions import PairingError

# C O N S T A N T S ###########################################################

logger = logging.getLogger(__name__)

MIN_CLUSTERS = 4

# Exhaustive search over perfect matchings is limited to this many clusters
MAX_OPTIMAL_CLUSTERS = 16

# Distances closer than this are treated as ties
TIE_TOLERANCE = 1e-12

# C L A S S E S ###############################################################


class ClusterProfile(NamedTuple):
    cluster_id: str
    size: float
    covariates: tuple = ()


class Pairing(NamedTuple):
    """
    A perfect matching of clusters. Each pair lists its two cluster ids in
    lexicographic order, and pairs are listed in lexicographic order.
    """
    pairs: tuple
    total_distance: float

    def cluster_ids(self):
        return sorted(cluster_id for pair in self.pairs for cluster_id in pair)


class AssignmentRow(NamedTuple):
    pair_id: str
    cluster_slot: int
    cluster_id: str
    treated: int

# F U N C T I O N S ###########################################################


def _check_profiles(profiles):
    if len(profiles) % 2 != 0:
        raise PairingError("odd count: {} clusters cannot be paired".format(len(profiles)))
    if len(profiles) < MIN_CLUSTERS:
        raise PairingError("at least {} clusters are required, found {}".format(MIN_CLUSTERS, len(profiles)))
    identifiers = [profile.cluster_id for profile in profiles]
    if len(set(identifiers)) != len(identifiers):
        raise PairingError("duplicate cluster ids")
    arities = {len(profile.covariates) for profile in profiles}
    if len(arities) != 1:
        raise PairingError("covariate arity differs across clusters")


def standardized_features(profiles, include_size=True):
    """
    Builds the standardized feature matrix for a set of profiles, rows in
    lexicographic cluster id order. Dimensions without variation are
    dropped with a warning.

    :param profiles: a sequence of ClusterProfile
    :param include_size: whether cluster size is a matching dimension
    :return: a tuple (sorted cluster ids, feature matrix)
    """
    _check_profiles(profiles)
    ordered = sorted(profiles, key=lambda profile: profile.cluster_id)
    identifiers = [profile.cluster_id for profile in ordered]
    columns = [list(profile.covariates) + ([profile.size] if include_size else []) for profile in ordered]
    features = np.array(columns, dtype=float).reshape(len(ordered), -1)

    spread = features.std(axis=0)
    keep = spread > 0.0
    for dimension in np.flatnonzero(~keep):
        logger.warning("dropping pairing dimension {} with zero variance".format(dimension))
    features = (features[:, keep] - features[:, keep].mean(axis=0)) / spread[keep]
    return identifiers, features


def _distances(identifiers, features):
    if features.shape[1] == 0:
        return np.zeros((len(identifiers), len(identifiers)))
    return squareform(pdist(features, metric="euclidean"))


def _pairing(identifiers, index_pairs, distances):
    pairs = sorted((identifiers[i], identifiers[j]) for i, j in index_pairs)
    total = float(sum(distances[i, j] for i, j in index_pairs))
    return Pairing(tuple(pairs), total)


def pair_clusters_greedy(profiles, include_size=True):
    """
    Repeatedly pairs the two closest remaining clusters. Ties are broken by
    the lexicographic order of the cluster ids.

    :param profiles: a sequence of ClusterProfile, even in number
    :param include_size: whether cluster size is a matching dimension
    :return: a Pairing
    """
    identifiers, features = standardized_features(profiles, include_size)
    distances = _distances(identifiers, features)
    count = len(identifiers)
    candidates = sorted(
        (round(distances[i, j] / TIE_TOLERANCE) * TIE_TOLERANCE, i, j)
        for i in range(count) for j in range(i + 1, count)
    )

    matched = set()
    chosen = []
    for _, i, j in candidates:
        if i in matched or j in matched:
            continue
        chosen.append((i, j))
        matched.update((i, j))
    return _pairing(identifiers, chosen, distances)


def pair_clusters_optimal(profiles, include_size=True):
    """
    Finds the perfect matching with minimal total distance by dynamic
    programming over subsets. The lowest unmatched cluster is paired with
    each candidate partner in turn, so ties resolve lexicographically.

    :param profiles: a sequence of at most 16 ClusterProfile
    :param include_size: whether cluster size is a matching dimension
    :return: a Pairing
    """
    if len(profiles) > MAX_OPTIMAL_CLUSTERS:
        raise PairingError("{} clusters exceed the exhaustive limit of {}; use greedy".format(
            len(profiles), MAX_OPTIMAL_CLUSTERS))
    identifiers, features = standardized_features(profiles, include_size)
    distances = _distances(identifiers, features)
    count = len(identifiers)
    full = (1 << count) - 1

    @lru_cache(maxsize=None)
    def best(matched):
        if matched == full:
            return 0.0, ()
        first = next(i for i in range(count) if not matched & (1 << i))
        result = None
        for second in range(first + 1, count):
            if matched & (1 << second):
                continue
            cost, rest = best(matched | (1 << first) | (1 << second))
            cost += distances[first, second]
            if result is None or cost < result[0] - TIE_TOLERANCE:
                result = (cost, ((first, second),) + rest)
        return result

    _, chosen = best(0)
    return _pairing(identifiers, chosen, distances)


def assign_within_pairs(pairing, seed):
    """
    Flips an independent fair coin for every pair. A result of 1 treats the
    first cluster of the pair (slot 1), 0 treats the second.

    :param pairing: the Pairing
    :param seed: the integer seed of the coin stream
    :return: a mapping pair_id -> 0 or 1, pair ids numbered from 1
    """
    flips = np.random.default_rng(seed).integers(0, 2, size=len(pairing.pairs))
    return {str(index + 1): int(flip) for index, flip in enumerate(flips)}


def assignment_table(pairing, assignments):
    """
    Lists every cluster with its pair id, slot and treatment indicator.

    :return: a list of AssignmentRow
    """
    rows = []
    for index, (first, second) in enumerate(pairing.pairs):
        pair_id = str(index + 1)
        z = assignments[pair_id]
        rows.append(AssignmentRow(pair_id, 1, first, z))
        rows.append(AssignmentRow(pair_id, 2, second, 1 - z))
    return rows

# E N D   O F   F I L E #######################################################
