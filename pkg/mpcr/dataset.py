"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Domain types for matched-pair cluster-randomized datasets, design
validation, and the within-pair differences every estimator consumes.
"""
# I M P O R T S ###############################################################

import logging

from typing import NamedTuple, Optional

import numpy as np

from mpcr.estimand import Series
from mpcr.exceptions import DesignError
from mpcr.weights import ARITHMETIC_SAMPLE

# C O N S T A N T S ###########################################################

logger = logging.getLogger(__name__)

# Relative tolerance on the sum of normalized weights
NORMALIZATION_TOLERANCE = 1e-9

# C L A S S E S ###############################################################


class UnitRecord(NamedTuple):
    pair_id: str
    cluster_slot: int
    outcome: float
    receipt: Optional[int] = None


class ClusterData(NamedTuple):
    """
    One cluster of a matched pair. The sample size is the number of units;
    the population size is optional and, when present, must be at least
    the sample size.
    """
    pair_id: str
    cluster_slot: int
    units: tuple
    population_size: Optional[int] = None

    @property
    def sample_size(self):
        return len(self.units)

    @property
    def has_receipts(self):
        return len(self.units) > 0 and all(unit.receipt is not None for unit in self.units)

    def values(self, series=Series.OUTCOME):
        """
        Returns the unit-level values of the requested series.

        :param series: Series.OUTCOME or Series.RECEIPT
        :return: a numpy array of floats
        """
        if series is Series.RECEIPT:
            if not self.has_receipts:
                raise DesignError(
                    "cluster [{}:{}] has no receipts".format(self.pair_id, self.cluster_slot),
                    self.pair_id
                )
            return np.array([unit.receipt for unit in self.units], dtype=float)
        return np.array([unit.outcome for unit in self.units], dtype=float)

    def mean(self, series=Series.OUTCOME):
        return float(np.mean(self.values(series)))

    def variance(self, series=Series.OUTCOME):
        """
        Returns the within-cluster sample variance (denominator n - 1).
        """
        return float(np.var(self.values(series), ddof=1))


class MatchedPair(NamedTuple):
    """
    A matched pair of clusters. The slot-1 cluster is treated when the
    assignment is 1, the slot-2 cluster when it is 0.
    """
    pair_id: str
    assignment: int
    clusters: tuple

    def cluster_in_slot(self, slot):
        for cluster in self.clusters:
            if cluster.cluster_slot == slot:
                return cluster
        raise DesignError("pair [{}] has no cluster in slot {}".format(self.pair_id, slot), self.pair_id)

    @property
    def treated(self):
        return self.cluster_in_slot(1 if self.assignment == 1 else 2)

    @property
    def control(self):
        return self.cluster_in_slot(2 if self.assignment == 1 else 1)

    def difference(self, series=Series.OUTCOME):
        """
        Returns the observed within-pair difference D_k, treated cluster
        mean minus control cluster mean.

        :param series: which unit-level values to difference
        :return: the difference as a float
        """
        return self.treated.mean(series) - self.control.mean(series)


class PairDifference(NamedTuple):
    pair_id: str
    raw_weight: float
    normalized_weight: float
    observed_difference: float


class ValidationReport(NamedTuple):
    """
    The outcome of a structural design check. A report with neither errors
    nor warnings means the dataset is design-consistent.
    """
    errors: tuple = ()
    warnings: tuple = ()

    def is_valid(self):
        return len(self.errors) == 0

    def is_empty(self):
        return len(self.errors) == 0 and len(self.warnings) == 0


class DropResult(NamedTuple):
    dataset: object
    dropped_pairs: tuple
    report: ValidationReport


class MpcrDataset(object):
    """
    An immutable collection of matched pairs. Construction validates the
    design and raises a DesignError on the first structural violation;
    pass validate=False to build a dataset that is only inspected with
    validate_design.
    """
    def __init__(self, pairs, validate=True):
        self.pairs = tuple(pairs)
        if validate:
            report = validate_design(self)
            if not report.is_valid():
                raise DesignError(report.errors[0])
            for warning in report.warnings:
                logger.warning(warning)

    def __eq__(self, other):
        return isinstance(other, MpcrDataset) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def __str__(self):
        return "MpcrDataset(m={}, n={})".format(self.m, self.n)

    @property
    def m(self):
        return len(self.pairs)

    @property
    def n(self):
        return sum(cluster.sample_size for pair in self.pairs for cluster in pair.clusters)

    @property
    def has_populations(self):
        return all(
            cluster.population_size is not None for pair in self.pairs for cluster in pair.clusters
        )

    @property
    def has_receipts(self):
        return all(cluster.has_receipts for pair in self.pairs for cluster in pair.clusters)

    @property
    def population_total(self):
        if not self.has_populations:
            return None
        return sum(cluster.population_size for pair in self.pairs for cluster in pair.clusters)

    @property
    def pair_ids(self):
        return tuple(pair.pair_id for pair in self.pairs)

    def get_pair(self, pair_id):
        for pair in self.pairs:
            if pair.pair_id == pair_id:
                return pair
        raise DesignError("unknown pair [{}]".format(pair_id), pair_id)

    def map_outcomes(self, function):
        """
        Returns a copy of the dataset with every outcome replaced by
        function(outcome). Receipts and sizes are untouched.

        :param function: a callable applied to each outcome
        :return: a new MpcrDataset
        """
        pairs = []
        for pair in self.pairs:
            clusters = tuple(
                cluster._replace(units=tuple(
                    unit._replace(outcome=function(unit.outcome)) for unit in cluster.units
                ))
                for cluster in pair.clusters
            )
            pairs.append(pair._replace(clusters=clusters))
        return MpcrDataset(pairs)

# F U N C T I O N S ###########################################################


def validate_design(dataset):
    """
    Checks the structure of a matched-pair design without raising. Every
    pair must hold exactly two non-empty clusters in slots 1 and 2 and a
    binary assignment; receipts must be binary; receipts and population
    sizes must be given for all clusters or for none.

    :param dataset: the MpcrDataset to inspect
    :return: a ValidationReport
    """
    errors = []
    warnings = []

    if len(dataset.pairs) == 0:
        errors.append("empty design")
        return ValidationReport(tuple(errors), tuple(warnings))

    seen = set()
    for pair in dataset.pairs:
        if pair.pair_id in seen:
            errors.append("duplicate pair [{}]".format(pair.pair_id))
        seen.add(pair.pair_id)

        if pair.assignment not in (0, 1):
            errors.append("pair [{}]: assignment must be 0 or 1, found {}".format(
                pair.pair_id, pair.assignment))

        if len(pair.clusters) != 2:
            errors.append("malformed pair [{}]: {} clusters instead of 2".format(
                pair.pair_id, len(pair.clusters)))
            continue

        slots = sorted(cluster.cluster_slot for cluster in pair.clusters)
        if slots != [1, 2]:
            errors.append(
                "pair [{}]: clusters occupy slots {} so the pair does not have exactly one "
                "treated cluster".format(pair.pair_id, slots)
            )

        for cluster in pair.clusters:
            label = "{}:{}".format(pair.pair_id, cluster.cluster_slot)
            if cluster.sample_size == 0:
                errors.append("empty cluster [{}]".format(label))
            for unit in cluster.units:
                if unit.receipt is not None and unit.receipt not in (0, 1):
                    errors.append("cluster [{}]: receipt must be 0 or 1, found {}".format(
                        label, unit.receipt))
                    break
            if cluster.population_size is not None and cluster.population_size < cluster.sample_size:
                errors.append("cluster [{}]: population size {} below sample size {}".format(
                    label, cluster.population_size, cluster.sample_size))

    clusters = [cluster for pair in dataset.pairs for cluster in pair.clusters]
    with_populations = [cluster.population_size is not None for cluster in clusters]
    if any(with_populations) and not all(with_populations):
        errors.append("partial populations")

    receipts = [unit.receipt is not None for cluster in clusters for unit in cluster.units]
    if any(receipts) and not all(receipts):
        errors.append("partial receipts")

    if len(dataset.pairs) == 1:
        warnings.append("variance unavailable: the design has a single pair")

    return ValidationReport(tuple(errors), tuple(warnings))


def load_dataset(units, assignments, cluster_meta=None):
    """
    Builds a validated dataset from unit records, a mapping of pair id to
    assignment, and an optional mapping of (pair id, slot) to population
    size. Pairs appear in the order their first unit is listed.

    :param units: a sequence of UnitRecord
    :param assignments: a mapping pair_id -> 0 or 1
    :param cluster_meta: an optional mapping (pair_id, cluster_slot) -> N
    :return: the MpcrDataset
    """
    grouped = {}
    for unit in units:
        if unit.pair_id not in assignments:
            raise DesignError("pair [{}] has no assignment".format(unit.pair_id), unit.pair_id)
        grouped.setdefault(unit.pair_id, {}).setdefault(unit.cluster_slot, []).append(unit)

    for pair_id in assignments:
        if pair_id not in grouped:
            raise DesignError("pair [{}] has an assignment but no units".format(pair_id), pair_id)

    cluster_meta = cluster_meta or {}
    for pair_id, slot in cluster_meta:
        if slot not in grouped.get(pair_id, {}):
            raise DesignError(
                "population size given for unknown cluster [{}:{}]".format(pair_id, slot), pair_id
            )

    pairs = []
    for pair_id, slots in grouped.items():
        if len(slots) != 2 or sorted(slots) != [1, 2]:
            raise DesignError(
                "malformed pair [{}]: clusters in slots {}".format(pair_id, sorted(slots)), pair_id
            )
        clusters = tuple(
            ClusterData(pair_id, slot, tuple(slots[slot]), cluster_meta.get((pair_id, slot)))
            for slot in (1, 2)
        )
        pairs.append(MatchedPair(pair_id, assignments[pair_id], clusters))

    return MpcrDataset(pairs)


def drop_incomplete_pairs(dataset, lost_cluster_ids):
    """
    Removes every pair that lost a cluster. The whole pair goes, never just
    the missing member.

    :param dataset: the MpcrDataset
    :param lost_cluster_ids: an iterable of (pair_id, cluster_slot)
    :return: a DropResult naming the dropped pairs
    """
    lost_pairs = set()
    for pair_id, slot in lost_cluster_ids:
        pair = dataset.get_pair(pair_id)
        pair.cluster_in_slot(slot)
        lost_pairs.add(pair_id)

    if not lost_pairs:
        return DropResult(dataset, (), validate_design(dataset))

    remaining = [pair for pair in dataset.pairs if pair.pair_id not in lost_pairs]
    if not remaining:
        raise DesignError("empty design")

    dropped = tuple(pair.pair_id for pair in dataset.pairs if pair.pair_id in lost_pairs)
    logger.warning("dropped pairs with a lost cluster: {}".format(", ".join(dropped)))
    reduced = MpcrDataset(remaining)
    return DropResult(reduced, dropped, validate_design(reduced))


def weighted_differences(dataset, scheme=ARITHMETIC_SAMPLE, series=Series.OUTCOME):
    """
    Computes the raw weights, normalized weights and within-pair
    differences of a dataset as aligned numpy arrays.

    :param dataset: the MpcrDataset
    :param scheme: the WeightScheme producing the pair weights
    :param series: difference outcomes or receipts
    :return: a tuple (raw weights, normalized weights, differences)
    """
    if dataset.m == 0:
        raise DesignError("empty design")
    if series is Series.RECEIPT and not dataset.has_receipts:
        raise DesignError("missing receipts")
    if scheme.needs_populations() and not dataset.has_populations:
        raise DesignError("population sizes are required for population weights")

    raw = np.array([scheme.raw_weight(pair) for pair in dataset.pairs])
    normalized = dataset.n * raw / raw.sum()
    differences = np.array([pair.difference(series) for pair in dataset.pairs])
    return raw, normalized, differences


def pair_differences(dataset, scheme=ARITHMETIC_SAMPLE, series=Series.OUTCOME):
    """
    Returns one PairDifference per pair, in dataset order.

    :param dataset: the MpcrDataset
    :param scheme: the WeightScheme producing the pair weights
    :param series: difference outcomes or receipts
    :return: a list of PairDifference
    """
    raw, normalized, differences = weighted_differences(dataset, scheme, series)
    return [
        PairDifference(pair.pair_id, float(w), float(w_tilde), float(d))
        for pair, w, w_tilde, d in zip(dataset.pairs, raw, normalized, differences)
    ]


def arm_means(dataset, series=Series.OUTCOME):
    """
    Returns the treated-cluster and control-cluster means of every pair.

    :param dataset: the MpcrDataset
    :param series: which unit-level values to average
    :return: a tuple of numpy arrays (treated means, control means)
    """
    treated = np.array([pair.treated.mean(series) for pair in dataset.pairs])
    control = np.array([pair.control.mean(series) for pair in dataset.pairs])
    return treated, control

# E N D   O F   F I L E #######################################################
