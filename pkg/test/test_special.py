"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Tests for the distribution functions.
"""
# I M P O R T S ###############################################################

import itertools
import math
import unittest

from scipy import integrate, special as scipy_special

from mpcr.exceptions import ConfigurationError
from mpcr.special import noncentral_t_cdf, normal_cdf, normal_quantile, t_cdf, t_quantile

# C O N S T A N T S ###########################################################

GRID_DOFS = (1, 2, 3, 5, 8, 15, 30, 60)
GRID_NONCENTRALITIES = (-3.0, -0.5, 0.7, 2.5, 6.0)
GRID_POINTS = (-4.0, -1.0, 0.5, 2.0, 7.0)

# F U N C T I O N S ###########################################################


def quadrature_noncentral_t_cdf(x, dof, noncentrality):
    """
    Integrates P(Z <= x V - noncentrality) against the density of
    V = sqrt(chi-square / dof).
    """
    log_constant = (dof / 2.0) * math.log(dof) - (dof / 2.0 - 1.0) * math.log(2.0) - scipy_special.gammaln(dof / 2.0)

    def integrand(v):
        if v <= 0.0:
            return 0.0
        log_density = log_constant + (dof - 1.0) * math.log(v) - dof * v * v / 2.0
        return scipy_special.ndtr(x * v - noncentrality) * math.exp(log_density)

    upper = 1.0 + 40.0 / math.sqrt(dof)
    value, _ = integrate.quad(integrand, 0.0, upper, points=[1.0], epsabs=1e-13, epsrel=1e-11, limit=500)
    return value

# C L A S S E S ###############################################################


class TestCentralDistributions(unittest.TestCase):
    """
    A test class for the normal and central t functions.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_normal_quantile_known_value(self):
        self.assertAlmostEqual(1.959963984540054, normal_quantile(0.975), places=12)

    def test_normal_cdf_at_zero(self):
        self.assertEqual(0.5, normal_cdf(0.0))

    def test_t_quantile_of_one_half_is_zero(self):
        self.assertEqual(0.0, t_quantile(4, 0.5))

    def test_t_quantile_known_value(self):
        self.assertAlmostEqual(2.228138851986274, t_quantile(10, 0.975), places=9)

    def test_t_quantile_round_trips_through_cdf(self):
        for dof, p in itertools.product((1, 2, 4, 9, 29, 120), (0.001, 0.05, 0.3, 0.5, 0.8, 0.975, 0.9999)):
            self.assertAlmostEqual(p, t_cdf(t_quantile(dof, p), dof), delta=1e-7)

    def test_probability_outside_unit_interval_rejected(self):
        for p in (0.0, 1.0, -0.2, 1.5):
            with self.assertRaises(ConfigurationError):
                t_quantile(5, p)
            with self.assertRaises(ConfigurationError):
                normal_quantile(p)

    def test_non_positive_dof_rejected(self):
        with self.assertRaises(ConfigurationError):
            t_cdf(1.0, 0)
        with self.assertRaises(ConfigurationError):
            noncentral_t_cdf(1.0, -1, 0.5)


class TestNoncentralT(unittest.TestCase):
    """
    A test class for the noncentral_t_cdf function.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_zero_noncentrality_is_central_t(self):
        for x in (-3.0, -0.2, 0.0, 1.7):
            self.assertEqual(t_cdf(x, 7), noncentral_t_cdf(x, 7, 0.0))

    def test_cdf_at_zero_is_normal_tail(self):
        self.assertAlmostEqual(normal_cdf(-1.3), noncentral_t_cdf(0.0, 6, 1.3), places=14)

    def test_matches_quadrature_on_grid(self):
        for dof, noncentrality, x in itertools.product(GRID_DOFS, GRID_NONCENTRALITIES, GRID_POINTS):
            expected = quadrature_noncentral_t_cdf(x, dof, noncentrality)
            self.assertAlmostEqual(
                expected, noncentral_t_cdf(x, dof, noncentrality), delta=1e-8,
                msg="x={} dof={} noncentrality={}".format(x, dof, noncentrality)
            )

    def test_large_noncentrality_stays_in_unit_interval(self):
        previous = 0.0
        for x in (0.0, 20.0, 38.0, 40.0, 42.0, 60.0, 1e6):
            value = noncentral_t_cdf(x, 12, 40.0)
            self.assertTrue(0.0 <= value <= 1.0)
            self.assertGreaterEqual(value, previous)
            previous = value
        self.assertAlmostEqual(1.0, previous, places=9)

    def test_reflection_identity(self):
        for x, noncentrality in ((1.5, 0.8), (-2.0, 1.1), (0.3, -2.2)):
            self.assertAlmostEqual(
                noncentral_t_cdf(x, 9, noncentrality), 1.0 - noncentral_t_cdf(-x, 9, -noncentrality), places=12
            )

# M A I N #####################################################################


if __name__ == '__main__':
    unittest.main()

# E N D   O F   F I L E #######################################################
