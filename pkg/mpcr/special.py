"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Probability kernels: normal and Student t quantiles, central and
noncentral t distribution functions.
"""
# I M P O R T S ###############################################################

import math

import numpy as np

from scipy import special

from mpcr.exceptions import ConfigurationError

# C O N S T A N T S ###########################################################

# The noncentral t series is summed over a window of Poisson indices around
# the mode; the window spans this many standard deviations plus a pad.
SERIES_WIDTH_SIGMAS = 12.0
SERIES_WIDTH_PAD = 40

# F U N C T I O N S ###########################################################


def _check_probability(p):
    if not 0.0 < p < 1.0:
        raise ConfigurationError("probability {} outside (0, 1)".format(p), "p")


def _check_dof(dof):
    if not dof > 0:
        raise ConfigurationError("degrees of freedom must be positive, found {}".format(dof), "dof")


def normal_cdf(x):
    return float(special.ndtr(x))


def normal_quantile(p):
    """
    Returns the inverse of the standard normal distribution function.

    :param p: a probability in (0, 1)
    :return: the quantile
    """
    _check_probability(p)
    return float(special.ndtri(p))


def t_cdf(x, dof):
    _check_dof(dof)
    return float(special.stdtr(dof, x))


def t_quantile(dof, p):
    """
    Returns the quantile of the central t distribution.

    :param dof: the degrees of freedom
    :param p: a probability in (0, 1)
    :return: x with P(T <= x) = p
    """
    _check_dof(dof)
    _check_probability(p)
    if p == 0.5:
        return 0.0
    return float(special.stdtrit(dof, p))


def _noncentral_t_upper_half(t, dof, delta):
    """
    P(T <= t) for t >= 0 as a Poisson mixture of incomplete beta functions.
    Terms are weighted in log space so that large noncentralities do not
    underflow the leading weight.
    """
    if t == 0.0:
        return normal_cdf(-delta)

    x = t * t / (t * t + dof)
    half_lambda = delta * delta / 2.0
    if half_lambda == 0.0:
        return 0.5 + 0.5 * float(special.betainc(0.5, dof / 2.0, x))

    mode = math.floor(half_lambda)
    width = int(math.ceil(SERIES_WIDTH_SIGMAS * math.sqrt(half_lambda) + SERIES_WIDTH_PAD))
    index = np.arange(max(0, mode - width), mode + width + 1, dtype=float)

    log_poisson = -half_lambda + index * math.log(half_lambda)
    log_p = log_poisson - special.gammaln(index + 1.0)
    log_q = log_poisson - special.gammaln(index + 1.5) + math.log(abs(delta)) - 0.5 * math.log(2.0)

    odd = special.betainc(index + 0.5, dof / 2.0, x)
    even = special.betainc(index + 1.0, dof / 2.0, x)
    series = 0.5 * np.sum(np.exp(log_p) * odd) + math.copysign(0.5, delta) * np.sum(np.exp(log_q) * even)
    return normal_cdf(-delta) + float(series)


def noncentral_t_cdf(x, dof, noncentrality):
    """
    Returns P(T <= x) for a noncentral t variable with the given degrees of
    freedom and noncentrality. Negative arguments are reflected with
    F(x; dof, lambda) = 1 - F(-x; dof, -lambda).

    :param x: the evaluation point
    :param dof: the degrees of freedom
    :param noncentrality: the noncentrality parameter
    :return: a probability in [0, 1]
    """
    _check_dof(dof)
    if noncentrality == 0.0:
        return t_cdf(x, dof)
    if x >= 0.0:
        value = _noncentral_t_upper_half(float(x), float(dof), float(noncentrality))
    else:
        value = 1.0 - _noncentral_t_upper_half(-float(x), float(dof), -float(noncentrality))
    return min(1.0, max(0.0, value))

# E N D   O F   F I L E #######################################################
