"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Exact bias and expectation identities of the matched-pair estimators. Each
identity is evaluated twice, by enumeration and in closed form, and the
residual between the two is reported.
"""
# I M P O R T S ###############################################################

from enum import Enum
from typing import NamedTuple

import numpy as np

from mpcr.dataset import weighted_differences
from mpcr.estimand import Series
from mpcr.exceptions import OracleError
from mpcr.oracle.exact_law import Statistic, StatisticName, exact_laws, pair_sampling_law, sampling_laws, \
    sampling_outcome_count
from mpcr.oracle.potential import true_estimand
from mpcr.weights import ARITHMETIC_POPULATION, ARITHMETIC_SAMPLE, HARMONIC_SAMPLE

# C L A S S E S ###############################################################


class Identity(Enum):
    """
    The Identity enumeration stores the checks the oracle knows.

    SIGMA_BIAS            E_a[sigma] - Var_a[psi] over assignments
    SIGMA_SAMPLING_BIAS   the same over sampling and assignment
    SATE_BIAS             E_a[psi] - SATE with sample-size weights
    CATE_BIAS             E[psi] - CATE with population-size weights
    DELTA_EXPECTATION     E_a[delta]
    NU_EXPECTATION        E_a[nu] - Cov_a(psi, tau)
    """
    SIGMA_BIAS = "sigma-bias"
    SIGMA_SAMPLING_BIAS = "sigma-sampling-bias"
    SATE_BIAS = "sate-bias"
    CATE_BIAS = "cate-bias"
    DELTA_EXPECTATION = "delta-expectation"
    NU_EXPECTATION = "nu-expectation"

    @classmethod
    def from_str(cls, value):
        for identity in cls:
            if identity.value == str(value).lower():
                return identity
        raise OracleError("unknown identity [{}]".format(value))


class IdentityCheck(NamedTuple):
    identity: Identity
    enumerated: float
    closed_form: float

    @property
    def residual(self):
        return abs(self.enumerated - self.closed_form)

    def to_dict(self):
        return {
            "identity": self.identity.value,
            "enumerated": self.enumerated,
            "closed_form": self.closed_form,
            "residual": self.residual,
        }

# C O N S T A N T S ###########################################################

# Joint sampling outcomes up to this count are realized and run through the
# estimators; larger datasets use per-pair moments
JOINT_ENUMERATION_LIMIT = 1024

DEFAULT_SCHEMES = {
    Identity.SIGMA_BIAS: ARITHMETIC_SAMPLE,
    Identity.SIGMA_SAMPLING_BIAS: ARITHMETIC_POPULATION,
    Identity.SATE_BIAS: ARITHMETIC_SAMPLE,
    Identity.CATE_BIAS: ARITHMETIC_POPULATION,
    Identity.DELTA_EXPECTATION: HARMONIC_SAMPLE,
    Identity.NU_EXPECTATION: ARITHMETIC_SAMPLE,
}

# F U N C T I O N S ###########################################################


def _first_samples(pd):
    return [
        tuple(tuple(range(cluster.observed_size)) for cluster in pair.clusters) for pair in pd.pairs
    ]


def _normalized_weights(pd, scheme, sampled=False):
    """
    Normalized pair weights. They depend on cluster sizes only, never on the
    assignment or on which units are sampled.
    """
    assignment = [1] * pd.m
    if sampled:
        dataset = pd.realize(assignment, _first_samples(pd))
    else:
        dataset = pd.fully_observed().realize(assignment)
    _, normalized, _ = weighted_differences(dataset, scheme)
    return normalized


def _cluster_effects(pd):
    """
    Returns per-pair arrays of cluster sizes and mean effects over the listed
    units, slot 1 first.
    """
    sizes = np.array([[cluster.population_size for cluster in pair.clusters] for pair in pd.pairs], dtype=float)
    effects = np.array([[cluster.effects().mean() for cluster in pair.clusters] for pair in pd.pairs])
    return sizes, effects


def _sigma_bias(pd, scheme):
    full = pd.fully_observed()
    weights = _normalized_weights(pd, scheme)
    psi, sigma = exact_laws(full, [Statistic(StatisticName.PSI, scheme), Statistic(StatisticName.SIGMA, scheme)])
    treated, control = full.potential_differences()
    closed = pd.m / (4.0 * full.n ** 2) * np.var(weights * (treated + control), ddof=1)
    return IdentityCheck(Identity.SIGMA_BIAS, sigma.mean() - psi.variance(), float(closed))


def _sampling_moments(pd, weights):
    """
    First and second moments of w_k D_k for every pair under sampling and
    assignment, pairs being independent.
    """
    first = []
    second = []
    for pair, weight in zip(pd.pairs, weights):
        values = weight * pair_sampling_law(pair)
        first.append(values.mean())
        second.append(np.mean(values ** 2))
    return np.array(first), np.array(second)


def _joint_enumeration(pd):
    return sampling_outcome_count(pd) <= JOINT_ENUMERATION_LIMIT


def _sigma_sampling_bias(pd, scheme):
    weights = _normalized_weights(pd, scheme, sampled=True)
    m, n = pd.m, pd.n
    if _joint_enumeration(pd):
        psi, sigma = sampling_laws(pd, [Statistic(StatisticName.PSI, scheme), Statistic(StatisticName.SIGMA, scheme)])
        enumerated = sigma.mean() - psi.variance()
    else:
        first, second = _sampling_moments(pd, weights)
        variance_psi = np.sum(second - first ** 2) / n ** 2
        cross = np.sum(first) ** 2 - np.sum(first ** 2)
        expected_sigma = m / ((m - 1) * n ** 2) * ((m - 1) / m * np.sum(second) - cross / m)
        enumerated = expected_sigma - variance_psi

    population_means = []
    for pair in pd.pairs:
        one, two = pair.clusters
        population_means.append(
            one.potential(True).mean() - two.potential(False).mean()
            + two.potential(True).mean() - one.potential(False).mean()
        )
    closed = m / (4.0 * n ** 2) * np.var(weights * np.array(population_means), ddof=1)
    return IdentityCheck(Identity.SIGMA_SAMPLING_BIAS, float(enumerated), float(closed))


def _sate_bias(pd):
    full = pd.fully_observed()
    psi, = exact_laws(full, [Statistic(StatisticName.PSI, ARITHMETIC_SAMPLE)])
    sizes, effects = _cluster_effects(full)
    totals = sizes.sum(axis=1, keepdims=True)
    closed = np.sum((totals / 2.0 - sizes) * effects) / sizes.sum()
    return IdentityCheck(Identity.SATE_BIAS, psi.mean() - true_estimand(full), float(closed))


def _cate_bias(pd):
    sizes, effects = _cluster_effects(pd)
    totals = sizes.sum(axis=1)
    if _joint_enumeration(pd):
        psi, = sampling_laws(pd, [Statistic(StatisticName.PSI, ARITHMETIC_POPULATION)])
        enumerated = psi.mean() - true_estimand(pd)
    else:
        expected = np.array([pair_sampling_law(pair).mean() for pair in pd.pairs])
        enumerated = np.sum(totals * expected) / totals.sum() - true_estimand(pd)
    closed = np.sum((totals[:, None] / 2.0 - sizes) * effects) / sizes.sum()
    return IdentityCheck(Identity.CATE_BIAS, float(enumerated), float(closed))


def _delta_expectation(pd, scheme):
    full = pd.fully_observed()
    weights = _normalized_weights(pd, scheme)
    n = full.n
    delta, = exact_laws(full, [Statistic(StatisticName.DELTA, scheme)])
    treated, control = full.potential_differences()
    sums = weights * (treated + control)
    cross = np.sum(sums) ** 2 - np.sum(sums ** 2)
    closed = np.sum(weights ** 2) / (2.0 * n ** 3) * (
        np.sum((1.0 - weights / n) * weights * (treated ** 2 + control ** 2)) - cross / (2.0 * n)
    )
    return IdentityCheck(Identity.DELTA_EXPECTATION, delta.mean(), float(closed))


def _nu_expectation(pd, scheme):
    if not pd.has_receipts:
        raise OracleError("the covariance identity needs potential receipts")
    full = pd.fully_observed()
    weights = _normalized_weights(pd, scheme)
    psi, tau, nu = exact_laws(full, [
        Statistic(StatisticName.PSI, scheme),
        Statistic(StatisticName.TAU, scheme),
        Statistic(StatisticName.NU, scheme),
    ])
    treated, control = full.potential_differences()
    receipt_treated, receipt_control = full.potential_differences(Series.RECEIPT)
    closed = pd.m / (4.0 * full.n ** 2) * np.cov(
        weights * (treated + control), weights * (receipt_treated + receipt_control), ddof=1
    )[0, 1]
    return IdentityCheck(Identity.NU_EXPECTATION, nu.mean() - psi.covariance(tau), float(closed))


def evaluate_identity(pd, identity, scheme=None):
    """
    Evaluates both sides of an identity.

    :param pd: the PotentialDataset
    :param identity: the Identity to check
    :param scheme: an optional WeightScheme for identities that accept one
    :return: an IdentityCheck
    """
    if pd.m < 2:
        raise OracleError("identities need at least two pairs")
    scheme = scheme or DEFAULT_SCHEMES[identity]
    if identity is Identity.SIGMA_BIAS:
        return _sigma_bias(pd, scheme)
    if identity is Identity.SIGMA_SAMPLING_BIAS:
        return _sigma_sampling_bias(pd, scheme)
    if identity is Identity.SATE_BIAS:
        return _sate_bias(pd)
    if identity is Identity.CATE_BIAS:
        return _cate_bias(pd)
    if identity is Identity.DELTA_EXPECTATION:
        return _delta_expectation(pd, scheme)
    return _nu_expectation(pd, scheme)


def check_identity(pd, identity, scheme=None):
    """
    Returns |enumerated - closed form| for an identity.
    """
    return evaluate_identity(pd, identity, scheme).residual

# E N D   O F   F I L E #######################################################
