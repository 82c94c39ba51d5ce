"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Random potential-outcome datasets for exercising the exact identities.
"""
# I M P O R T S ###############################################################

from mpcr.oracle.potential import PotentialCluster, PotentialDataset, PotentialPair, PotentialUnit

# C O N S T A N T S ###########################################################

MIN_PAIRS = 2
MAX_PAIRS = 6

MAX_CLUSTER_SIZE = 5

# F U N C T I O N S ###########################################################


def random_potential_dataset(rng, m=None, max_cluster_size=MAX_CLUSTER_SIZE, receipts=False,
                             equal_sizes=False, subsample=False, constant_pair_effects=False):
    """
    Draws a random potential-outcome dataset.

    :param rng: a numpy Generator
    :param m: the number of pairs; drawn from 2..6 when None
    :param max_cluster_size: the largest number of listed units per cluster
    :param receipts: attach monotone potential receipts
    :param equal_sizes: give both clusters of a pair the same size
    :param subsample: observe a random number of units by simple random sampling
    :param constant_pair_effects: every unit of a pair shares one effect
    :return: a PotentialDataset
    """
    if m is None:
        m = int(rng.integers(MIN_PAIRS, MAX_PAIRS + 1))

    pairs = []
    for index in range(m):
        first_size = int(rng.integers(1, max_cluster_size + 1))
        sizes = (first_size, first_size if equal_sizes else int(rng.integers(1, max_cluster_size + 1)))
        pair_effect = float(rng.uniform(-3.0, 3.0))
        clusters = []
        for size in sizes:
            cluster_effect = float(rng.uniform(-3.0, 3.0))
            units = []
            for _ in range(size):
                y0 = float(rng.uniform(-5.0, 5.0))
                if constant_pair_effects:
                    y1 = y0 + pair_effect
                else:
                    y1 = y0 + cluster_effect + float(rng.normal(0.0, 1.0))
                r0 = r1 = None
                if receipts:
                    r0 = int(rng.random() < 0.2)
                    r1 = max(r0, int(rng.random() < 0.7))
                units.append(PotentialUnit(y0, y1, r0, r1))
            sample_size = int(rng.integers(1, size + 1)) if subsample else None
            clusters.append(PotentialCluster(tuple(units), sample_size))
        pairs.append(PotentialPair(str(index + 1), tuple(clusters)))
    return PotentialDataset(pairs)

# E N D   O F   F I L E #######################################################
