"""
Copyright (C) 2026 MPCR Toolkit Authors

This project uses an MIT style license - see LICENSE for details.
Tests for variance estimation and confidence intervals.
"""
# I M P O R T S ###############################################################

import math
import unittest

import numpy as np

from mpcr.estimand import CiRegime, Estimand
from mpcr.exceptions import ConfigurationError, EstimationError
from mpcr.oracle.fuzz import random_potential_dataset
from mpcr.variance import (
    analyze, check_level, cluster_level_analysis, confidence_interval, critical_value, delta_hat,
    design_covariance, harmonic_variance_estimate, sigma_hat, standard_error_ratio, variance_estimate
)
from mpcr.weights import CONSTANT, HARMONIC_SAMPLE
from test.fixtures import build_dataset, ds_a, ds_c

# C O N S T A N T S ###########################################################

T_95_ONE_DOF = 6.313751514675043

NORMAL_975 = 1.959963984540054

# C L A S S E S ###############################################################


class TestVarianceEstimators(unittest.TestCase):
    """
    A test class for the sigma and delta variance estimators.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        self.dataset = ds_a()

    def test_sigma_on_canonical_dataset(self):
        self.assertAlmostEqual(4.0, variance_estimate(self.dataset), places=12)

    def test_sigma_scales_with_square_of_outcome_scale(self):
        scaled = self.dataset.map_outcomes(lambda y: 10.0 * y)
        self.assertAlmostEqual(400.0, variance_estimate(scaled), places=9)

    def test_sigma_invariant_to_outcome_shift(self):
        shifted = self.dataset.map_outcomes(lambda y: y + 100.0)
        self.assertAlmostEqual(4.0, variance_estimate(shifted), places=9)

    def test_delta_on_canonical_dataset(self):
        self.assertAlmostEqual(2.0, harmonic_variance_estimate(self.dataset), places=12)

    def test_delta_is_sigma_times_m_minus_one_over_m_with_equal_weights(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            potential = random_potential_dataset(rng)
            dataset = potential.realize(rng.integers(0, 2, size=potential.m))
            sigma = variance_estimate(dataset, Estimand.SATE, CONSTANT)
            delta = harmonic_variance_estimate(dataset, CONSTANT)
            self.assertAlmostEqual(sigma * (dataset.m - 1) / dataset.m, delta, delta=1e-12 * max(1.0, sigma))

    def test_single_pair_raises_estimation_error(self):
        with self.assertLogs("mpcr.dataset", level="WARNING"):
            single = build_dataset([("1", 1, [2, 4], [1, 3], None, None)])
        with self.assertRaises(EstimationError):
            variance_estimate(single)
        with self.assertRaises(EstimationError):
            harmonic_variance_estimate(single)

    def test_harmonic_weights_accepted(self):
        self.assertGreaterEqual(variance_estimate(ds_c(), Estimand.SATE, HARMONIC_SAMPLE), 0.0)


class TestVectorizedKernels(unittest.TestCase):
    """
    A test class for the array kernels shared with the simulations.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        self.weights = np.array([[4.0, 4.0], [2.0, 6.0]])
        self.differences = np.array([[1.0, 5.0], [1.0, 5.0]])

    def test_sigma_batch_matches_rows(self):
        batch = sigma_hat(self.weights, self.differences, 8)
        for row in range(2):
            self.assertAlmostEqual(float(sigma_hat(self.weights[row], self.differences[row], 8)), batch[row])
        self.assertAlmostEqual(4.0, batch[0])

    def test_delta_batch_matches_rows(self):
        batch = delta_hat(self.weights, self.differences, 8)
        for row in range(2):
            self.assertAlmostEqual(float(delta_hat(self.weights[row], self.differences[row], 8)), batch[row])
        self.assertAlmostEqual(2.0, batch[0])

    def test_design_covariance_is_symmetric(self):
        first = np.array([4.0, 2.0, 7.0])
        second = np.array([1.0, 3.0, -2.0])
        self.assertAlmostEqual(design_covariance(first, second, 9), design_covariance(second, first, 9))


class TestIntervals(unittest.TestCase):
    """
    A test class for critical values and confidence intervals.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        pass

    def test_normal_critical_value(self):
        quantile, dof = critical_value(50, 0.95, CiRegime.MANY_PAIRS)
        self.assertAlmostEqual(NORMAL_975, quantile, places=12)
        self.assertEqual("normal", dof)

    def test_t_critical_value_has_m_minus_one_dof(self):
        quantile, dof = critical_value(2, 0.90, CiRegime.FEW_PAIRS_MANY_UNITS)
        self.assertAlmostEqual(T_95_ONE_DOF, quantile, places=9)
        self.assertEqual(1, dof)

    def test_t_normal_regime_uses_t(self):
        self.assertEqual(critical_value(5, 0.9, CiRegime.FEW_PAIRS_MANY_UNITS),
                         critical_value(5, 0.9, CiRegime.FEW_PAIRS_FEW_UNITS))

    def test_invalid_levels_rejected(self):
        for level in (0.0, 1.0, 1.5, -0.1):
            with self.assertRaises(ConfigurationError):
                check_level(level)

    def test_negative_variance_rejected(self):
        with self.assertRaises(ConfigurationError):
            confidence_interval(0.0, -1.0, 5)

    def test_zero_variance_gives_degenerate_interval(self):
        self.assertEqual((2.0, 2.0), confidence_interval(2.0, 0.0, 5))

    def test_interval_on_canonical_dataset(self):
        lower, upper = confidence_interval(3.0, 4.0, 2, 0.90, CiRegime.FEW_PAIRS_MANY_UNITS)
        self.assertAlmostEqual(3.0 - 2.0 * T_95_ONE_DOF, lower, places=9)
        self.assertAlmostEqual(-9.6275, lower, places=3)
        self.assertAlmostEqual(15.6275, upper, places=3)


class TestAnalyze(unittest.TestCase):
    """
    A test class for the analyze function and its variants.
    """
    def setUp(self):
        """
        Common setup routines needed for all unit tests.
        """
        self.dataset = ds_a()

    def test_sate_report_on_canonical_dataset(self):
        report = analyze(self.dataset, Estimand.SATE, None, 0.90, CiRegime.FEW_PAIRS_MANY_UNITS)
        self.assertEqual(3.0, report.point)
        self.assertAlmostEqual(4.0, report.variance, places=12)
        self.assertAlmostEqual(2.0, report.std_error, places=12)
        self.assertAlmostEqual(-9.63, report.ci_lower, places=2)
        self.assertAlmostEqual(15.63, report.ci_upper, places=2)
        self.assertTrue(report.conservative)
        self.assertEqual(1, report.dof)

    def test_uate_report_is_not_conservative(self):
        sate = analyze(self.dataset, Estimand.SATE, None, 0.90)
        uate = analyze(self.dataset, Estimand.UATE, None, 0.90)
        self.assertEqual(sate.point, uate.point)
        self.assertEqual(sate.variance, uate.variance)
        self.assertFalse(uate.conservative)

    def test_cate_with_populations_equal_to_samples_matches_sate(self):
        cate = analyze(ds_a(populations=True), Estimand.CATE, None, 0.90)
        self.assertEqual(3.0, cate.point)
        self.assertAlmostEqual(4.0, cate.variance, places=12)
        self.assertTrue(cate.conservative)
        self.assertEqual("pop", cate.scheme.name)

    def test_report_dict_fields(self):
        values = analyze(self.dataset).to_dict()
        self.assertEqual("sate", values["estimand"])
        self.assertEqual("arith", values["weights"])
        self.assertEqual("t", values["regime"])
        self.assertEqual(8, values["n"])

    def test_cluster_level_analysis_uses_constant_weights(self):
        report = cluster_level_analysis(ds_c(), 0.90)
        self.assertEqual(3.5, report.point)
        self.assertEqual("const", report.scheme.name)

    def test_standard_error_ratio_on_canonical_dataset(self):
        self.assertAlmostEqual(math.sqrt(0.5), standard_error_ratio(self.dataset), places=12)

    def test_standard_error_ratio_with_zero_variance_raises(self):
        flat = build_dataset([
            ("1", 1, [2, 4], [1, 3], None, None),
            ("2", 0, [1, 3], [2, 4], None, None),
        ])
        with self.assertRaises(EstimationError):
            standard_error_ratio(flat)

# M A I N #####################################################################


if __name__ == '__main__':
    unittest.main()

# E N D   O F   F I L E #######################################################
