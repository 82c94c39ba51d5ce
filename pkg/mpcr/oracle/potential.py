"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Potential-outcome datasets: every unit carries its outcome under treatment
and under control, and optionally its receipt under both assignments.
"""
# I M P O R T S ###############################################################

from typing import NamedTuple, Optional

import numpy as np

from mpcr.dataset import ClusterData, MatchedPair, MpcrDataset, UnitRecord
from mpcr.estimand import Estimand, Series
from mpcr.exceptions import DesignError, OracleError

# C L A S S E S ###############################################################


class PotentialUnit(NamedTuple):
    y0: float
    y1: float
    r0: Optional[int] = None
    r1: Optional[int] = None

    @property
    def has_receipts(self):
        return self.r0 is not None and self.r1 is not None


class PotentialCluster(NamedTuple):
    """
    The listed units form the cluster population. When sample_size is set,
    that many units are drawn by simple random sampling; otherwise every
    listed unit is observed.
    """
    units: tuple
    sample_size: Optional[int] = None

    @property
    def population_size(self):
        return len(self.units)

    @property
    def observed_size(self):
        return self.population_size if self.sample_size is None else self.sample_size

    def potential(self, treated, series=Series.OUTCOME):
        """
        Returns the potential values of every listed unit.

        :param treated: True for the values under treatment
        :param series: outcomes or receipts
        :return: a numpy array
        """
        if series is Series.RECEIPT:
            return np.array([unit.r1 if treated else unit.r0 for unit in self.units], dtype=float)
        return np.array([unit.y1 if treated else unit.y0 for unit in self.units], dtype=float)

    def effects(self):
        return self.potential(True) - self.potential(False)


class PotentialPair(NamedTuple):
    pair_id: str
    clusters: tuple


class PotentialDataset(object):
    """
    A matched-pair design described by potential outcomes. Realizing it
    under an assignment vector gives the MpcrDataset an experiment with that
    assignment would have observed.
    """
    def __init__(self, pairs):
        self.pairs = tuple(pairs)
        if len(self.pairs) == 0:
            raise DesignError("empty design")
        receipts = []
        for pair in self.pairs:
            if len(pair.clusters) != 2:
                raise DesignError("malformed pair [{}]".format(pair.pair_id), pair.pair_id)
            for cluster in pair.clusters:
                if cluster.population_size == 0:
                    raise DesignError("empty cluster in pair [{}]".format(pair.pair_id), pair.pair_id)
                if not 1 <= cluster.observed_size <= cluster.population_size:
                    raise DesignError("invalid sample size in pair [{}]".format(pair.pair_id), pair.pair_id)
                for unit in cluster.units:
                    receipts.append(unit.has_receipts)
                    if unit.has_receipts and (unit.r0 not in (0, 1) or unit.r1 not in (0, 1)):
                        raise DesignError("receipts must be 0 or 1 in pair [{}]".format(pair.pair_id))
                    if unit.has_receipts and unit.r1 < unit.r0:
                        raise DesignError("defier in pair [{}]: r1 < r0".format(pair.pair_id), pair.pair_id)
        if any(receipts) and not all(receipts):
            raise DesignError("partial receipts")

    @property
    def m(self):
        return len(self.pairs)

    @property
    def has_receipts(self):
        return all(unit.has_receipts for pair in self.pairs for cluster in pair.clusters for unit in cluster.units)

    @property
    def is_fully_sampled(self):
        return all(
            cluster.observed_size == cluster.population_size for pair in self.pairs for cluster in pair.clusters
        )

    @property
    def n(self):
        return sum(cluster.observed_size for pair in self.pairs for cluster in pair.clusters)

    @property
    def population_total(self):
        return sum(cluster.population_size for pair in self.pairs for cluster in pair.clusters)

    def fully_observed(self):
        """
        Returns a copy in which every listed unit is sampled.
        """
        return PotentialDataset(
            PotentialPair(pair.pair_id, tuple(cluster._replace(sample_size=None) for cluster in pair.clusters))
            for pair in self.pairs
        )

    def realize(self, assignment, samples=None):
        """
        Builds the observed dataset for an assignment vector.

        :param assignment: a sequence of 0/1, one per pair
        :param samples: optional per-pair (slot-1 indices, slot-2 indices) of
            sampled units; every listed unit when omitted
        :return: an MpcrDataset whose population sizes are the listed counts
        """
        if len(assignment) != self.m:
            raise OracleError("assignment has {} entries for {} pairs".format(len(assignment), self.m))
        pairs = []
        for index, (pair, z) in enumerate(zip(self.pairs, assignment)):
            clusters = []
            for slot, cluster in ((1, pair.clusters[0]), (2, pair.clusters[1])):
                treated = (z == 1) == (slot == 1)
                chosen = range(cluster.population_size) if samples is None else samples[index][slot - 1]
                units = []
                for position in chosen:
                    unit = cluster.units[position]
                    receipt = None
                    if unit.has_receipts:
                        receipt = unit.r1 if treated else unit.r0
                    units.append(UnitRecord(pair.pair_id, slot, unit.y1 if treated else unit.y0, receipt))
                clusters.append(ClusterData(pair.pair_id, slot, tuple(units), cluster.population_size))
            pairs.append(MatchedPair(pair.pair_id, int(z), tuple(clusters)))
        return MpcrDataset(pairs)

    def potential_differences(self, series=Series.OUTCOME):
        """
        Returns, per pair, the difference that would be observed with slot 1
        treated and with slot 2 treated, using every listed unit.

        :param series: outcomes or receipts
        :return: a tuple of numpy arrays (D(1), D(0))
        """
        if series is Series.RECEIPT and not self.has_receipts:
            raise OracleError("the dataset has no potential receipts")
        first = []
        second = []
        for pair in self.pairs:
            one, two = pair.clusters
            first.append(one.potential(True, series).mean() - two.potential(False, series).mean())
            second.append(two.potential(True, series).mean() - one.potential(False, series).mean())
        return np.array(first), np.array(second)

# F U N C T I O N S ###########################################################


def true_estimand(pd, estimand=Estimand.SATE):
    """
    Returns the exact average effect over the listed units. The listed
    units are both the sample and the cluster population, so SATE and CATE
    coincide.

    :param pd: the PotentialDataset
    :param estimand: Estimand.SATE or Estimand.CATE
    :return: the average of y1 - y0
    """
    if estimand not in (Estimand.SATE, Estimand.CATE):
        raise OracleError("the oracle only knows finite-sample estimands, not {}".format(estimand.name))
    effects = np.concatenate([cluster.effects() for pair in pd.pairs for cluster in pair.clusters])
    return float(effects.mean())

# E N D   O F   F I L E #######################################################
