from fractions import Fraction
from unittest import TestCase

from parameterized import parameterized  # type: ignore

from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.window import EnvironmentWindow
from pyrwre.errors import ConfigurationError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.box import BoxFailure
from pyrwre.estimators.estimate import MCEstimate
from pyrwre.estimators.survival import stacked_box_lower_bound
from pyrwre.estimators.survival import stacked_box_scales
from pyrwre.estimators.survival import survival_prob_D
from pyrwre.geometry.direction import make_direction
from pyrwre.geometry.regions import ConeSpec

CONE = ConeSpec(vertex=(0, 0), dir=make_direction([1, 0]), alpha=Fraction(1, 2))


class TestSurvival(TestCase):
    def test_walk_inside_the_cone(self) -> None:
        curve = survival_prob_D(EnvironmentWindow.constant([1, 0, 0, 0]), CONE, [5, 10, 20], 4)
        self.assertEqual([1.0, 1.0, 1.0], [p.mean for p in curve.points])
        self.assertEqual(4, curve.plateau.censored)
        self.assertEqual([None] * 4, curve.exit_times)

    @parameterized.expand(
        [
            ([0, 1, 0, 0],),
            ([0, 0, 1, 0],),
            ([0, 0, 0, 1],),
        ]
    )
    def test_immediate_exit(self, probs) -> None:
        curve = survival_prob_D(EnvironmentWindow.constant(probs), CONE, [1, 3], 3)
        self.assertEqual([1, 1, 1], curve.exit_times)
        self.assertEqual([0.0, 0.0], [p.mean for p in curve.points])
        self.assertEqual(0, curve.plateau.censored)

    def test_curve_is_nonincreasing(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=5)
        curve = survival_prob_D(env, CONE, [1, 2, 4, 8, 16, 32], 30, seed=2)
        means = [p.mean for p in curve.points]
        self.assertTrue(all(b <= a for a, b in zip(means, means[1:])))
        self.assertEqual([1, 2, 4, 8, 16, 32], [row['scale'] for row in curve.to_rows()])

    def test_narrower_cone_is_left_first(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=5)
        cones = [ConeSpec(vertex=(0, 0), dir=CONE.dir, alpha=alpha) for alpha in ('1/4', '1/2', 1)]
        curves = [survival_prob_D(env, cone, [4, 16, 64], 40, seed=6) for cone in cones]
        for wide, narrow in zip(curves, curves[1:]):
            for a, b in zip(wide.exit_times, narrow.exit_times):
                if a is not None:
                    self.assertIsNotNone(b)
                    self.assertLessEqual(b, a)
            for a, b in zip(wide.points, narrow.points):
                self.assertLessEqual(b.mean, a.mean)

    def test_same_result_across_workers(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=5)
        serial = survival_prob_D(env, CONE, [4, 16], 10, seed=3, fresh_env=True)
        parallel = survival_prob_D(env, CONE, [4, 16], 10, seed=3, fresh_env=True, workers=2)
        self.assertEqual(serial.exit_times, parallel.exit_times)

    def test_invalid(self) -> None:
        env = EnvironmentWindow.constant([0.25] * 4)
        with self.assertRaises(ConfigurationError):
            survival_prob_D(env, CONE, [4], 0)
        with self.assertRaises(PreconditionError):
            survival_prob_D(env, CONE, [4, 2], 5)
        with self.assertRaises(PreconditionError):
            survival_prob_D(env, CONE, [], 5)


class TestStackedBoxes(TestCase):
    def test_scales(self) -> None:
        self.assertEqual([2, 4, 8], stacked_box_scales(1, 3))
        with self.assertRaises(PreconditionError):
            stacked_box_scales(0, 0)

    @parameterized.expand(
        [
            ([0.0, 0.0], 2, 0.25),
            ([0.04, 0.0], 0, 0.92),
            ([0.0, 0.01], 0, 0.08),
            ([0.0, 0.25], 0, 0.0),
        ]
    )
    def test_lower_bound(self, failures, path_length, expected) -> None:
        value = stacked_box_lower_bound(failures, 0, 1.0, 2, 0.25, path_length)
        self.assertAlmostEqual(expected, value)

    def test_uses_interval_upper_end(self) -> None:
        failures = [BoxFailure(L=1, n=10, failures=0, censored=1), MCEstimate(mean=0.0, stderr=0.0, n=10)]
        self.assertAlmostEqual(0.8, stacked_box_lower_bound(failures, 0, 1.0, 2, 0.25, 0))

    @parameterized.expand(
        [
            ([], 0.25),
            ([0.1], 0.6),
            ([0.1], 0.0),
            ([1.5], 0.25),
        ]
    )
    def test_invalid(self, failures, kappa) -> None:
        with self.assertRaises(PreconditionError):
            stacked_box_lower_bound(failures, 0, 1.0, 2, kappa, 0)
