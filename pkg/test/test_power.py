"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Tests for the design planning functions.
"""
# I M P O R T S ###############################################################

import math
import unittest

import numpy as np

from mpcr.exceptions import ConfigurationError, EstimationError
from mpcr.power import PowerDesign, PowerMode, break_even_correlation, estimate_pi, mde_grid, \
    minimum_detectable_effect, pair_correlation, power, power_from_noncentrality, power_pate, power_uate, \
    relative_efficiency_estimate, sample_size
from mpcr.special import t_quantile
from test.fixtures import ds_a, ds_c

# F U N C T I O N S ###########################################################


def monte_carlo_power(noncentrality, dof, alpha, draws, seed):
    generator = np.random.default_rng(seed)
    statistic = (generator.standard_normal(draws) + noncentrality) / np.sqrt(generator.chisquare(dof, draws) / dof)
    critical = t_quantile(dof, 1.0 - alpha / 2.0)
    return float(np.mean(np.abs(statistic) > critical))

# C L A S S E S ###############################################################


class TestPowerMode(unittest.TestCase):
    """
    A test class for the PowerMode enumeration.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_from_str_is_case_insensitive(self):
        self.assertEqual(PowerMode.PATE, PowerMode.from_str("PATE"))
        self.assertEqual(PowerMode.UATE, PowerMode.from_str("uate"))

    def test_from_str_unknown_raises(self):
        with self.assertRaises(ConfigurationError):
            PowerMode.from_str("cate")


class TestPower(unittest.TestCase):
    """
    A test class for the power functions.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        self.design = PowerDesign(0.05, 50, 0.5)

    def test_power_uate_known_value(self):
        self.assertAlmostEqual(0.933, power_uate(self.design), delta=0.002)

    def test_power_uate_agrees_with_monte_carlo(self):
        expected = monte_carlo_power(0.5 * math.sqrt(50), 49, 0.05, 1000000, 17)
        self.assertAlmostEqual(expected, power_uate(self.design), delta=0.01)

    def test_power_with_zero_effect_is_alpha(self):
        for m in (2, 5, 30):
            self.assertAlmostEqual(0.05, power_uate(PowerDesign(0.05, m, 0.0)), places=9)

    def test_power_symmetric_in_effect_sign(self):
        self.assertAlmostEqual(power_uate(self.design), power_uate(PowerDesign(0.05, 50, -0.5)), places=12)

    def test_power_increases_with_pairs(self):
        values = [power_uate(PowerDesign(0.05, m, 0.4)) for m in (5, 10, 20, 40)]
        self.assertEqual(sorted(values), values)

    def test_power_pate_attenuates_noncentrality(self):
        pate = power_pate(PowerDesign(0.05, 50, 0.5, 1.0, 1.0))
        self.assertAlmostEqual(power_uate(PowerDesign(0.05, 50, 0.5 / math.sqrt(2.0))), pate, places=12)
        self.assertAlmostEqual(0.685, pate, delta=0.005)

    def test_power_pate_with_zero_pi_matches_uate(self):
        self.assertAlmostEqual(power_uate(self.design), power_pate(PowerDesign(0.05, 50, 0.5, 0.0, 25.0)), places=12)

    def test_power_pate_without_pi_raises(self):
        with self.assertRaises(ConfigurationError):
            power_pate(PowerDesign(0.05, 50, 0.5))

    def test_power_pate_negative_pi_raises(self):
        with self.assertRaises(ConfigurationError):
            power_pate(PowerDesign(0.05, 50, 0.5, -1.0, 10.0))

    def test_single_pair_raises(self):
        with self.assertRaises(ConfigurationError):
            power_uate(PowerDesign(0.05, 1, 0.5))

    def test_invalid_alpha_raises(self):
        with self.assertRaises(ConfigurationError):
            power_from_noncentrality(1.0, 10, 1.2)

    def test_power_in_unit_interval_for_large_effect(self):
        value = power(PowerDesign(0.05, 200, 5.0))
        self.assertTrue(0.0 <= value <= 1.0)
        self.assertAlmostEqual(1.0, value, places=9)


class TestSampleSize(unittest.TestCase):
    """
    A test class for the sample_size and minimum_detectable_effect functions.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_sample_size_known_value(self):
        self.assertEqual(10, sample_size(0.05, 0.8, 1.0))

    def test_sample_size_is_smallest_reaching_target(self):
        m = sample_size(0.05, 0.9, 0.3)
        self.assertGreaterEqual(power_uate(PowerDesign(0.05, m, 0.3)), 0.9 - 1e-9)
        self.assertLess(power_uate(PowerDesign(0.05, m - 1, 0.3)), 0.9)

    def test_sample_size_for_large_effect_is_two(self):
        self.assertEqual(2, sample_size(0.05, 0.5, 20.0))

    def test_sample_size_zero_effect_raises(self):
        with self.assertRaises(EstimationError):
            sample_size(0.05, 0.8, 0.0)

    def test_sample_size_power_below_alpha_raises(self):
        with self.assertRaises(ConfigurationError):
            sample_size(0.05, 0.04, 1.0)

    def test_sample_size_pate_needs_more_pairs(self):
        uate = sample_size(0.05, 0.8, 0.5)
        pate = sample_size(0.05, 0.8, 0.5, PowerMode.PATE, 2.0, 4.0)
        self.assertGreater(pate, uate)

    def test_mde_reaches_target_power(self):
        effect = minimum_detectable_effect(0.05, 0.8, 20)
        self.assertAlmostEqual(0.8, power_uate(PowerDesign(0.05, 20, effect)), places=8)

    def test_mde_consistent_with_sample_size(self):
        m = sample_size(0.05, 0.8, 1.0)
        self.assertLessEqual(minimum_detectable_effect(0.05, 0.8, m), 1.0 + 1e-8)
        self.assertGreater(minimum_detectable_effect(0.05, 0.8, m - 1), 1.0)

    def test_mde_grid_lists_every_combination(self):
        rows = mde_grid(0.05, 0.8, [10, 20], [5, 50, 500], 1.0, var_p=4.0)
        self.assertEqual(6, len(rows))
        self.assertEqual([(10, 5.0), (10, 50.0), (10, 500.0), (20, 5.0), (20, 50.0), (20, 500.0)],
                         [(row.m, row.nbar) for row in rows])
        for row in rows:
            self.assertAlmostEqual(2.0 * row.effect, row.absolute_effect, places=12)

    def test_mde_grid_shrinks_with_cluster_size(self):
        rows = mde_grid(0.05, 0.8, [20], [5, 50, 500], 1.0)
        effects = [row.effect for row in rows]
        self.assertEqual(sorted(effects, reverse=True), effects)

    def test_mde_grid_negative_var_p_raises(self):
        with self.assertRaises(ConfigurationError):
            mde_grid(0.05, 0.8, [10], [5], 1.0, var_p=-1.0)


class TestBreakEven(unittest.TestCase):
    """
    A test class for the break_even_correlation function.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_break_even_for_three_pairs(self):
        self.assertAlmostEqual(0.556, break_even_correlation(3, 0.05, 0.8), delta=0.005)

    def test_break_even_decreases_with_pairs(self):
        values = [break_even_correlation(m) for m in (3, 5, 10, 50)]
        self.assertEqual(sorted(values, reverse=True), values)
        self.assertTrue(all(0.0 < value < 1.0 for value in values))

    def test_break_even_single_pair_raises(self):
        with self.assertRaises(ConfigurationError):
            break_even_correlation(1)


class TestDesignDiagnostics(unittest.TestCase):
    """
    A test class for the efficiency, correlation and pi estimates.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        self.dataset = ds_a()

    def test_relative_efficiency_on_two_pairs(self):
        report = relative_efficiency_estimate(self.dataset)
        self.assertAlmostEqual(0.625, report.ratio, places=12)
        self.assertAlmostEqual(-24.0, report.covariance_term, places=9)
        self.assertAlmostEqual(72.0, report.variance_terms[0], places=9)
        self.assertAlmostEqual(8.0, report.variance_terms[1], places=9)
        self.assertTrue(report.equal_sizes)

    def test_relative_efficiency_flags_unequal_sizes(self):
        self.assertFalse(relative_efficiency_estimate(ds_c()).equal_sizes)

    def test_relative_efficiency_to_dict(self):
        result = relative_efficiency_estimate(self.dataset).to_dict()
        self.assertEqual(["cov_share", "covariance_term", "equal_sizes", "ratio", "variance_terms"], sorted(result))

    def test_pair_correlation_is_negative_one(self):
        self.assertAlmostEqual(-1.0, pair_correlation(self.dataset), places=12)

    def test_weighted_pair_correlation_with_equal_weights(self):
        self.assertAlmostEqual(-1.0, pair_correlation(self.dataset, weighted=True), places=12)

    def test_estimate_pi(self):
        self.assertAlmostEqual(0.5, estimate_pi(self.dataset), places=12)

    def test_estimate_pi_needs_two_units_per_cluster(self):
        with self.assertRaises(EstimationError):
            estimate_pi(ds_c())

# M A I N #####################################################################


if __name__ == '__main__':
    unittest.main()

# E N D   O F   F I L E #######################################################
