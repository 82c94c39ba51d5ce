"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Monte Carlo and enumeration studies of the estimators: interval coverage
on a synthetic pair population, the bias and variance of arithmetic and
harmonic weighting as within-pair imbalance grows, and the expectation of
the variance estimator when pairs are sampled from a super-population.
"""
# I M P O R T S ###############################################################

import json
import logging
import math
import os

from enum import Enum
from functools import partial
from typing import NamedTuple, Optional

import numpy as np
import pandas as pd

from mpcr.estimand import CiRegime
from mpcr.estimators import weighted_mean_difference
from mpcr.exceptions import ConfigurationError
from mpcr.oracle.exact_law import Statistic, StatisticName, exact_laws
from mpcr.oracle.potential import PotentialCluster, PotentialDataset, PotentialPair, PotentialUnit, true_estimand
from mpcr.seeding import block_generator, run_blocks
from mpcr.variance import critical_value, delta_hat, sigma_hat
from mpcr.weights import ARITHMETIC_SAMPLE, HARMONIC_SAMPLE

# C O N S T A N T S ###########################################################

logger = logging.getLogger(__name__)

FIXTURE_PATH = os.path.join(os.path.dirname(__file__), "data", "synthetic_pairs.csv")

FIXTURE_COLUMNS = ["pair_id", "size_1", "size_2", "mean_1", "mean_2", "effect", "sd_1", "sd_2"]

# A zero-width interval covers a truth within this relative distance
COVERAGE_TOLERANCE = 1e-9

# Spawn key of the stream that builds the synthetic super-population
POPULATION_STREAM = 2 ** 31

TARGETS = ("population", "sample")

SUPERPOPULATION_PAIRS = 10

SUPERPOPULATION_REPLICATES = 200000

# C L A S S E S ###############################################################


class CoverageMethod(Enum):
    """
    The CoverageMethod enumeration pairs a point estimator with a variance
    estimator: arithmetic weights with the design-based variance, or
    harmonic weights with the variance used alongside them in the
    literature.
    """
    SIGMA_HAT = "sigma"
    DELTA_HAT = "delta"

    @classmethod
    def from_str(cls, value):
        for method in cls:
            if method.value == str(value).lower():
                return method
        raise ConfigurationError("unknown coverage method [{}]".format(value), "method")


class DgpConfig(NamedTuple):
    """
    The data-generating process of a coverage study. Pairs are drawn with
    replacement from the fixture; cluster means are normal around the
    fixture means with variance sd^2 / n scaled by noise_scale^2.
    """
    pairs: int = 100
    replicates: int = 5000
    seed: int = 20260101
    level: float = 0.90
    regime: str = "t"
    noise_scale: float = 1.0
    target: str = "population"
    fixture: Optional[str] = None
    workers: Optional[int] = None

    @classmethod
    def from_dict(cls, values):
        unknown = set(values) - set(cls._fields)
        if unknown:
            raise ConfigurationError("unknown configuration keys: {}".format(", ".join(sorted(unknown))), "config")
        return cls(**values).validated()

    @staticmethod
    def read_values(path):
        """
        Returns the settings a JSON configuration file gives, without
        filling in defaults.
        """
        with open(path, "r") as config_file:
            try:
                values = json.load(config_file)
            except ValueError as error:
                raise ConfigurationError("invalid configuration file {}: {}".format(path, error), "config")
        if not isinstance(values, dict):
            raise ConfigurationError("configuration file {} must hold an object".format(path), "config")
        return values

    @classmethod
    def from_json(cls, path):
        return cls.from_dict(cls.read_values(path))

    def validated(self):
        if self.replicates < 1:
            raise ConfigurationError("replicates must be at least 1", "replicates")
        if self.pairs < 2:
            raise ConfigurationError("a coverage study needs at least two pairs", "pairs")
        if not 0.0 < self.level < 1.0:
            raise ConfigurationError("invalid level {}".format(self.level), "level")
        if self.noise_scale < 0.0:
            raise ConfigurationError("noise_scale must be nonnegative", "noise_scale")
        if self.target not in TARGETS:
            raise ConfigurationError("target must be one of {}".format(", ".join(TARGETS)), "target")
        CiRegime.from_str(self.regime)
        return self

    def to_dict(self):
        return self._asdict()


class CoverageSummary(NamedTuple):
    method: CoverageMethod
    pairs: int
    replicates: int
    coverage: float
    std_error: float
    nominal: float
    mean_width: float
    truth: float

    def to_dict(self):
        values = self._asdict()
        values["method"] = self.method.value
        return values


class ProfileConfig(NamedTuple):
    """
    A sweep of within-pair size imbalance. Pair k has n_1k = T/2 +
    round(s (T/2 - 1) p_k) units in slot 1 and T - n_1k in slot 2, where s
    is the sweep level and p_k the pair's imbalance pattern, by default its
    effect rescaled to [0, 1]. Slot-2 baselines sit base_gap +
    imbalance_gap * |n_1k - n_2k| / (T - 2) above slot 1.
    """
    effects: tuple = (0.5, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0)
    pattern: Optional[tuple] = None
    cluster_total: int = 40
    levels: tuple = (0.0, 0.25, 0.5, 0.75, 1.0)
    base_gap: float = 0.5
    imbalance_gap: float = 4.0
    spread: float = 1.0


class ProfileRow(NamedTuple):
    level: float
    estimator: str
    bias: float
    squared_bias: float
    variance: float
    mse: float

    def to_dict(self):
        return self._asdict()


class SuperpopulationSummary(NamedTuple):
    pairs: int
    replicates: int
    mean_sigma: float
    var_psi: float
    difference: float
    std_error: float

    def to_dict(self):
        return self._asdict()

# F U N C T I O N S ###########################################################


def load_fixture(path=None):
    """
    Reads a pair table: sizes, baseline means, effect and within-cluster
    standard deviations of both clusters of every pair.

    :param path: a CSV path; the bundled synthetic fixture when None
    :return: a pandas DataFrame
    """
    frame = pd.read_csv(path or FIXTURE_PATH, dtype={"pair_id": str})
    missing = [column for column in FIXTURE_COLUMNS if column not in frame.columns]
    if missing:
        raise ConfigurationError("fixture is missing column [{}]".format(missing[0]), "fixture")
    if len(frame) == 0:
        raise ConfigurationError("fixture has no pairs", "fixture")
    if (frame[["size_1", "size_2"]] < 1).any().any():
        raise ConfigurationError("fixture cluster sizes must be positive", "fixture")
    return frame


def _fixture_arrays(frame):
    return {column: frame[column].to_numpy(dtype=float) for column in FIXTURE_COLUMNS[1:]}


def population_truth(table):
    totals = table["size_1"] + table["size_2"]
    return float(np.sum(totals * table["effect"]) / np.sum(totals))


def _coverage_block(table, pairs, method, quantile, noise_scale, target, truth, rng, count):
    """
    Runs count replicates at once and returns (covered, summed width).
    """
    index = rng.integers(0, len(table["effect"]), size=(count, pairs))
    first_treated = rng.integers(0, 2, size=(count, pairs)) == 1
    size_1, size_2 = table["size_1"][index], table["size_2"][index]
    effect = table["effect"][index]

    def cluster_means(treated_slot_one, with_effect):
        size = np.where(treated_slot_one, size_1, size_2)
        mean = np.where(treated_slot_one, table["mean_1"][index], table["mean_2"][index])
        sd = np.where(treated_slot_one, table["sd_1"][index], table["sd_2"][index])
        draws = rng.standard_normal(size=(count, pairs))
        return mean + (effect if with_effect else 0.0) + noise_scale * sd / np.sqrt(size) * draws

    differences = cluster_means(first_treated, True) - cluster_means(~first_treated, False)

    arithmetic = size_1 + size_2
    n = arithmetic.sum(axis=1)
    if method is CoverageMethod.SIGMA_HAT:
        weights = arithmetic
    else:
        weights = size_1 * size_2 / arithmetic
    normalized = n[:, None] * weights / weights.sum(axis=1, keepdims=True)

    psi = weighted_mean_difference(normalized, differences)
    if method is CoverageMethod.SIGMA_HAT:
        variance = sigma_hat(normalized, differences, n)
    else:
        variance = delta_hat(normalized, differences, n)
    half_width = quantile * np.sqrt(np.maximum(variance, 0.0))

    if target == "sample":
        truth = np.sum(arithmetic * effect, axis=1) / n
    slack = COVERAGE_TOLERANCE * np.maximum(1.0, np.abs(truth))
    covered = np.abs(psi - truth) <= half_width + slack
    return int(covered.sum()), float(np.sum(2.0 * half_width))


def coverage_simulation(cfg, method=CoverageMethod.SIGMA_HAT, fixture=None):
    """
    Estimates the coverage of confidence intervals built with one method.
    Results depend only on the configuration, never on the worker count.

    :param cfg: a DgpConfig
    :param method: the CoverageMethod
    :param fixture: an optional pair table overriding cfg.fixture
    :return: a CoverageSummary
    """
    cfg = cfg.validated()
    frame = fixture if fixture is not None else load_fixture(cfg.fixture)
    table = _fixture_arrays(frame)
    truth = population_truth(table)
    quantile, _ = critical_value(cfg.pairs, cfg.level, CiRegime.from_str(cfg.regime))

    logger.info("coverage study: {} replicates of {} pairs, method {}".format(
        cfg.replicates, cfg.pairs, method.value))
    block = partial(_coverage_block, table, cfg.pairs, method, quantile, cfg.noise_scale, cfg.target, truth)
    results = run_blocks(block, cfg.seed, cfg.replicates, cfg.workers)

    covered = sum(result[0] for result in results)
    width = sum(result[1] for result in results)
    coverage = covered / cfg.replicates
    return CoverageSummary(
        method=method,
        pairs=cfg.pairs,
        replicates=cfg.replicates,
        coverage=coverage,
        std_error=math.sqrt(coverage * (1.0 - coverage) / cfg.replicates),
        nominal=cfg.level,
        mean_width=width / cfg.replicates,
        truth=truth,
    )


def _imbalance_pattern(cfg):
    if cfg.pattern is not None:
        if len(cfg.pattern) != len(cfg.effects):
            raise ConfigurationError("pattern and effects differ in length", "pattern")
        return np.array(cfg.pattern, dtype=float)
    effects = np.array(cfg.effects, dtype=float)
    span = effects.max() - effects.min()
    if span == 0.0:
        return np.zeros(len(effects))
    return (effects - effects.min()) / span


def _deviations(size, spread):
    return spread * (np.arange(size) - (size - 1) / 2.0)


def build_profile_dataset(cfg, level):
    """
    Builds the potential-outcome dataset of one sweep level. Every unit of
    pair k has the effect effects[k].

    :param cfg: a ProfileConfig
    :param level: the sweep level s in [0, 1]
    :return: a PotentialDataset
    """
    half = cfg.cluster_total // 2
    if half < 2:
        raise ConfigurationError("cluster_total must be at least 4", "cluster_total")
    pattern = _imbalance_pattern(cfg)
    pairs = []
    for index, (effect, weight) in enumerate(zip(cfg.effects, pattern)):
        first_size = half + int(round(level * (half - 1) * weight))
        second_size = cfg.cluster_total - first_size
        gap = cfg.base_gap + cfg.imbalance_gap * abs(first_size - second_size) / (cfg.cluster_total - 2)
        clusters = []
        for size, baseline in ((first_size, 0.0), (second_size, gap)):
            units = tuple(
                PotentialUnit(baseline + deviation, baseline + deviation + effect)
                for deviation in _deviations(size, cfg.spread)
            )
            clusters.append(PotentialCluster(units))
        pairs.append(PotentialPair(str(index + 1), tuple(clusters)))
    return PotentialDataset(pairs)


def bias_variance_profile(cfg=ProfileConfig()):
    """
    Computes the exact bias, variance and mean squared error of the
    arithmetic and harmonic estimators against SATE at every sweep level.

    :param cfg: a ProfileConfig
    :return: a list of ProfileRow, arithmetic before harmonic at each level
    """
    rows = []
    for level in cfg.levels:
        pd_level = build_profile_dataset(cfg, level)
        truth = true_estimand(pd_level)
        laws = exact_laws(pd_level, [
            Statistic(StatisticName.PSI, ARITHMETIC_SAMPLE),
            Statistic(StatisticName.PSI, HARMONIC_SAMPLE),
        ])
        for name, law in zip(("arithmetic", "harmonic"), laws):
            bias = law.mean() - truth
            variance = law.variance()
            rows.append(ProfileRow(float(level), name, bias, bias ** 2, variance, bias ** 2 + variance))
    return rows


def synthetic_superpopulation(seed, population_pairs=50, pair_total=40):
    """
    Draws a finite super-population of pairs with equal pair totals and
    returns each pair's potential differences (slot 1 treated, slot 2
    treated).

    :return: a tuple of numpy arrays (D(1), D(0))
    """
    rng = block_generator(seed, POPULATION_STREAM)
    pairs = []
    for index in range(population_pairs):
        first_size = int(rng.integers(4, pair_total - 3))
        baseline = rng.normal(10.0, 3.0)
        clusters = []
        for size in (first_size, pair_total - first_size):
            offset = rng.normal(0.0, 1.0)
            effect = rng.normal(2.0, 1.5)
            y0 = baseline + offset + rng.normal(0.0, 2.0, size=size)
            y1 = y0 + effect + rng.normal(0.0, 0.5, size=size)
            clusters.append(PotentialCluster(tuple(PotentialUnit(float(a), float(b)) for a, b in zip(y0, y1))))
        pairs.append(PotentialPair(str(index + 1), tuple(clusters)))
    return PotentialDataset(pairs).potential_differences()


def _superpopulation_block(treated, control, pairs, pair_total, rng, count):
    index = rng.integers(0, len(treated), size=(count, pairs))
    first_treated = rng.integers(0, 2, size=(count, pairs)) == 1
    differences = np.where(first_treated, treated[index], control[index])
    normalized = np.full((count, pairs), float(pair_total))
    n = pairs * pair_total
    return weighted_mean_difference(normalized, differences), sigma_hat(normalized, differences, n)


def superpopulation_check(pairs=SUPERPOPULATION_PAIRS, replicates=SUPERPOPULATION_REPLICATES, seed=20260101,
                          population_pairs=50, pair_total=40, workers=None):
    """
    Samples pairs with replacement from a synthetic super-population and
    compares the mean of the variance estimator with the variance of the
    point estimator. The standard error combines the Monte Carlo error of
    both terms.

    :return: a SuperpopulationSummary
    """
    if pairs < 2 or replicates < 2:
        raise ConfigurationError("the check needs at least two pairs and two replicates", "pairs")
    treated, control = synthetic_superpopulation(seed, population_pairs, pair_total)
    block = partial(_superpopulation_block, treated, control, pairs, pair_total)
    results = run_blocks(block, seed, replicates, workers)
    psi = np.concatenate([result[0] for result in results])
    sigma = np.concatenate([result[1] for result in results])

    var_psi = float(np.var(psi, ddof=1))
    fourth = float(np.mean((psi - psi.mean()) ** 4))
    std_error = math.sqrt(np.var(sigma, ddof=1) / replicates + max(fourth - var_psi ** 2, 0.0) / replicates)
    return SuperpopulationSummary(
        pairs=pairs,
        replicates=replicates,
        mean_sigma=float(sigma.mean()),
        var_psi=var_psi,
        difference=float(sigma.mean()) - var_psi,
        std_error=std_error,
    )

# E N D   O F   F I L E #######################################################
