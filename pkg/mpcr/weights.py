"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Pair weighting rules for the general weighted estimator.
"""
# I M P O R T S ###############################################################

from enum import Enum
from typing import NamedTuple, Optional

from mpcr.exceptions import ConfigurationError, DesignError

# C L A S S E S ###############################################################


class WeightKind(Enum):
    """
    The WeightKind enumeration stores the rule that turns a pair's cluster
    sizes into a pair weight.
    """
    ARITHMETIC_SAMPLE = "arith"
    ARITHMETIC_POPULATION = "pop"
    HARMONIC_SAMPLE = "harmonic"
    CONSTANT = "const"
    CUSTOM = "custom"


class WeightScheme(NamedTuple):
    """
    A pair weighting rule. Custom schemes carry an explicit weight for
    every pair id.
    """
    kind: WeightKind = WeightKind.ARITHMETIC_SAMPLE
    custom_weights: Optional[dict] = None

    @classmethod
    def custom(cls, weights):
        """
        Builds a custom scheme from a mapping of pair id to weight.

        :param weights: a mapping pair_id -> positive real
        :return: the WeightScheme
        """
        return cls(WeightKind.CUSTOM, dict(weights))

    @classmethod
    def from_str(cls, value):
        for kind in WeightKind:
            if kind is not WeightKind.CUSTOM and kind.value == str(value).lower():
                return cls(kind)
        raise ConfigurationError("unknown weight scheme [{}]".format(value), "weights")

    @property
    def name(self):
        return self.kind.value

    def needs_populations(self):
        return self.kind is WeightKind.ARITHMETIC_POPULATION

    def raw_weight(self, pair):
        """
        Computes the raw weight w_k of a single matched pair.

        :param pair: the MatchedPair to weigh
        :return: a strictly positive float
        """
        first, second = pair.clusters
        if self.kind is WeightKind.ARITHMETIC_SAMPLE:
            weight = first.sample_size + second.sample_size
        elif self.kind is WeightKind.ARITHMETIC_POPULATION:
            if first.population_size is None or second.population_size is None:
                raise DesignError(
                    "pair [{}] has no population sizes for population weights".format(pair.pair_id),
                    pair.pair_id
                )
            weight = first.population_size + second.population_size
        elif self.kind is WeightKind.HARMONIC_SAMPLE:
            weight = first.sample_size * second.sample_size / (first.sample_size + second.sample_size)
        elif self.kind is WeightKind.CONSTANT:
            weight = 1.0
        else:
            if self.custom_weights is None or pair.pair_id not in self.custom_weights:
                raise DesignError("no custom weight for pair [{}]".format(pair.pair_id), pair.pair_id)
            weight = self.custom_weights[pair.pair_id]

        weight = float(weight)
        if not weight > 0.0:
            raise DesignError(
                "pair [{}] has non-positive weight {}".format(pair.pair_id, weight), pair.pair_id
            )
        return weight

# C O N S T A N T S ###########################################################

ARITHMETIC_SAMPLE = WeightScheme(WeightKind.ARITHMETIC_SAMPLE)
ARITHMETIC_POPULATION = WeightScheme(WeightKind.ARITHMETIC_POPULATION)
HARMONIC_SAMPLE = WeightScheme(WeightKind.HARMONIC_SAMPLE)
CONSTANT = WeightScheme(WeightKind.CONSTANT)

# F U N C T I O N S ###########################################################


def default_scheme(estimand):
    """
    Returns the weighting rule that targets the given estimand: sample
    sizes for SATE and UATE, population sizes for CATE and PATE.

    :param estimand: the Estimand being targeted
    :return: the default WeightScheme
    """
    if estimand.requires_populations():
        return ARITHMETIC_POPULATION
    return ARITHMETIC_SAMPLE


def check_compatible(estimand, scheme):
    """
    Rejects arithmetic weights that count the wrong units for an estimand:
    sample sizes for CATE or PATE, population sizes for SATE or UATE.
    Harmonic, constant and custom weights are accepted for any estimand.

    :param estimand: the Estimand being targeted
    :param scheme: the requested WeightScheme
    :return: the scheme
    """
    arithmetic = (WeightKind.ARITHMETIC_SAMPLE, WeightKind.ARITHMETIC_POPULATION)
    expected = default_scheme(estimand)
    if scheme.kind in arithmetic and scheme.kind is not expected.kind:
        raise ConfigurationError(
            "estimand/weight mismatch: {} takes [{}] weights, not [{}]".format(
                estimand.value, expected.name, scheme.name),
            "weights"
        )
    return scheme

# E N D   O F   F I L E #######################################################
