"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Small hand-checkable datasets shared by the unit tests.
"""
# I M P O R T S ###############################################################

import os

from mpcr.dataset import ClusterData, MatchedPair, MpcrDataset, UnitRecord
from mpcr.oracle.potential import PotentialCluster, PotentialDataset, PotentialPair, PotentialUnit
from mpcr.unmatched import UmcrCluster, UmcrDataset

# C O N S T A N T S ###########################################################

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# F U N C T I O N S ###########################################################


def data_file(name):
    return os.path.join(DATA_DIR, name)


def cluster(pair_id, slot, outcomes, receipts=None, population_size=None):
    receipts = receipts or [None] * len(outcomes)
    units = tuple(UnitRecord(pair_id, slot, float(y), r) for y, r in zip(outcomes, receipts))
    return ClusterData(pair_id, slot, units, population_size)


def build_dataset(specs, populations=False):
    """
    Builds a dataset from (pair_id, z, slot-1 outcomes, slot-2 outcomes,
    slot-1 receipts, slot-2 receipts) tuples. With populations, every
    cluster's population size equals its sample size.
    """
    pairs = []
    for pair_id, z, first, second, first_receipts, second_receipts in specs:
        clusters = (
            cluster(pair_id, 1, first, first_receipts, len(first) if populations else None),
            cluster(pair_id, 2, second, second_receipts, len(second) if populations else None),
        )
        pairs.append(MatchedPair(pair_id, z, clusters))
    return MpcrDataset(pairs)


def ds_a(populations=False):
    """
    Pair 1 treats slot 1 ({2,4} against {1,3}); pair 2 treats slot 2
    ({5,7} against {0,2}). D = (1, 5), n = 8.
    """
    return build_dataset([
        ("1", 1, [2, 4], [1, 3], None, None),
        ("2", 0, [0, 2], [5, 7], None, None),
    ], populations)


def ds_b():
    """
    DS-A with receipts: full uptake in the pair-1 treated cluster, half in
    the pair-2 treated cluster, none among controls.
    """
    return build_dataset([
        ("1", 1, [2, 4], [1, 3], [1, 1], [0, 0]),
        ("2", 0, [0, 2], [5, 7], [0, 0], [1, 0]),
    ])


def ds_c():
    """
    Pair 1 has a single treated unit against three controls; pair 2 is
    as in DS-A. D = (2, 5), n = 8.
    """
    return build_dataset([
        ("1", 1, [4], [1, 1, 4], None, None),
        ("2", 0, [0, 2], [5, 7], None, None),
    ])


def ds_u():
    return UmcrDataset([
        UmcrCluster("1", 1, (2.0, 4.0)),
        UmcrCluster("2", 0, (1.0, 3.0)),
        UmcrCluster("3", 1, (5.0, 7.0)),
        UmcrCluster("4", 0, (0.0, 2.0)),
    ])


def potential_cluster(y0, y1):
    return PotentialCluster(tuple(PotentialUnit(float(a), float(b)) for a, b in zip(y0, y1)))


def ds_p():
    """
    Two pairs of identical clusters: effects 1 in pair 1 and 5 in pair 2.
    """
    return PotentialDataset([
        PotentialPair("1", (potential_cluster([1, 3], [2, 4]), potential_cluster([1, 3], [2, 4]))),
        PotentialPair("2", (potential_cluster([0, 2], [5, 7]), potential_cluster([0, 2], [5, 7]))),
    ])


def sampled_cluster(y0, y1, sample_size=2):
    return PotentialCluster(potential_cluster(y0, y1).units, sample_size)


def ds_s():
    """
    Two pairs of three-unit clusters, two units sampled in each cluster:
    324 equally likely sampling and assignment outcomes.
    """
    return PotentialDataset([
        PotentialPair("1", (sampled_cluster([0, 1, 2], [1, 3, 2]), sampled_cluster([2, 4, 6], [3, 4, 8]))),
        PotentialPair("2", (sampled_cluster([1, 1, 5], [2, 2, 5]), sampled_cluster([0, 3, 3], [4, 3, 6]))),
    ])

# E N D   O F   F I L E #######################################################
