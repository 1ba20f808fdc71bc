import math
from unittest import TestCase

import numpy as np
from parameterized import parameterized  # type: ignore

from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.errors import InsufficientDataError
from pyrwre.estimators.decay import DecayModel
from pyrwre.estimators.decay import fit_decay
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.estimate import replica_env
from pyrwre.rng import derive_seed


class TestMCEstimate(TestCase):
    def test_from_samples(self) -> None:
        estimate = MCEstimate.from_samples([1.0, 2.0, 3.0], censored=2)
        self.assertEqual(2.0, estimate.mean)
        self.assertAlmostEqual(1 / math.sqrt(3), estimate.stderr)
        self.assertEqual(3, estimate.n)
        self.assertEqual(2, estimate.censored)

    def test_from_bernoulli(self) -> None:
        estimate = MCEstimate.from_bernoulli(3, 10)
        self.assertAlmostEqual(0.3, estimate.mean)
        self.assertAlmostEqual(math.sqrt(0.21 / 9), estimate.stderr)

    def test_single_sample(self) -> None:
        self.assertEqual(0.0, MCEstimate.from_samples([4.0]).stderr)

    def test_interval(self) -> None:
        estimate = MCEstimate(mean=0.5, stderr=0.1, n=100)
        low, high = estimate.ci95
        self.assertAlmostEqual(0.304, low)
        self.assertAlmostEqual(0.696, high)
        self.assertTrue(estimate.covers(0.65))
        self.assertFalse(estimate.covers(0.75))
        self.assertTrue(estimate.excludes_zero())
        self.assertFalse(MCEstimate(mean=0.1, stderr=0.1, n=100).excludes_zero())

    def test_empty(self) -> None:
        with self.assertRaises(InsufficientDataError):
            MCEstimate.from_samples([])
        with self.assertRaises(InsufficientDataError):
            MCEstimate.from_bernoulli(0, 0)

    def test_replica_env(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=1)
        self.assertIs(env, replica_env(env, 5, 3, fresh=False))
        self.assertEqual(derive_seed(5, 'environment', 3), replica_env(env, 5, 3, fresh=True).seed)


class TestFitDecay(TestCase):
    def test_polynomial(self) -> None:
        scales = [2, 4, 8, 16, 32]
        fit = fit_decay(scales, [L**-2.0 for L in scales])
        self.assertEqual(DecayModel.polynomial, fit.winner)
        self.assertAlmostEqual(2.0, fit.exponent, places=9)
        self.assertAlmostEqual(1.0, fit.polynomial.r2, places=9)
        self.assertEqual((4.0, 8.0, 16.0, 32.0), fit.scales)

    @parameterized.expand([(seed,) for seed in range(5)])
    def test_polynomial_with_noise(self, seed) -> None:
        rng = np.random.default_rng(seed)
        scales = [2, 4, 8, 16, 32]
        values = [L**-2.0 * (1 + 0.05 * u) for L, u in zip(scales, rng.uniform(-1, 1, len(scales)))]
        fit = fit_decay(scales, values)
        self.assertEqual(DecayModel.polynomial, fit.winner)
        self.assertTrue(1.7 <= fit.exponent <= 2.3, f'exponent {fit.exponent}')

    def test_exponential(self) -> None:
        scales = [1, 2, 3, 4, 5, 6]
        estimates = [MCEstimate(mean=math.exp(-0.5 * L), stderr=0.0, n=10) for L in scales]
        fit = fit_decay(scales, estimates, exclude_smallest=False)
        self.assertEqual(DecayModel.exponential, fit.winner)
        self.assertAlmostEqual(0.5, fit.rate, places=9)
        self.assertEqual(6, len(fit.scales))

    def test_skips_nonpositive(self) -> None:
        fit = fit_decay([1, 2, 4, 8, 16], [0.0, 0.5, 0.25, 0.125, 0.0])
        self.assertEqual((2.0, 4.0, 8.0), fit.scales)
        self.assertAlmostEqual(1.0, fit.exponent, places=9)

    def test_json(self) -> None:
        data = fit_decay([2, 4, 8], [0.25, 0.0625, 1 / 64]).to_json()
        self.assertEqual('polynomial', data['winner'])
        self.assertEqual([2.0, 4.0, 8.0], data['scales'])

    @parameterized.expand(
        [
            ([1, 2, 3], [0.1, 0.0, 0.05]),
            ([1, 2], [0.1, 0.05]),
            ([1, 2, 3], [0.1, 0.05]),
        ]
    )
    def test_insufficient(self, scales, estimates) -> None:
        with self.assertRaises(InsufficientDataError):
            fit_decay(scales, estimates)
