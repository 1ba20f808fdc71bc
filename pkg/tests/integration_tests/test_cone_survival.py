from fractions import Fraction
from unittest import TestCase

from pyrwre.environment.ellipticity import check_uniform_ellipticity
from pyrwre.environment.ellipticity import sample_sites
from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.estimators.box import box_failure_prob
from pyrwre.estimators.survival import stacked_box_lower_bound
from pyrwre.estimators.survival import stacked_box_scales
from pyrwre.estimators.survival import survival_prob_D
from pyrwre.geometry.direction import make_direction
from pyrwre.geometry.regions import ConeSpec
from tests.integration_tests.scale import scaled

HORIZONS = scaled([10, 100, 1_000, 5_000], [10, 100, 1_000, 10_000, 100_000])
REPLICAS = scaled(200, 1_000)
KAPPA = 0.15


class TestConeSurvival(TestCase):
    def setUp(self) -> None:
        self.direction = make_direction([1, 0])
        # e1 weight between 0.35 and 0.65 before normalization
        self.env = EnvironmentModel(kind=ModelKind.iid_ue, master_seed=3, base=(0.5, 0.1, 0.2, 0.2), jitter=0.3)

    def test_environment_is_elliptic(self) -> None:
        report = check_uniform_ellipticity(self.env, self.direction, KAPPA, sample_sites(2, 0))
        self.assertTrue(report.passed, report)
        self.assertGreaterEqual(report.min_prob, 0.3)

    def test_survival_plateau(self) -> None:
        cone = ConeSpec(vertex=(0, 0), dir=self.direction, alpha=Fraction(1, 9))
        curve = survival_prob_D(self.env, cone, HORIZONS, REPLICAS, seed=1, fresh_env=True, workers=4)
        means = [p.mean for p in curve.points]
        self.assertTrue(all(b <= a for a, b in zip(means, means[1:])))
        self.assertTrue(curve.plateau.excludes_zero())

        scales = stacked_box_scales(2, 3)
        failures = box_failure_prob(self.env, self.direction, 1.0, scales, REPLICAS, 100_000, seed=2, fresh_env=True)
        bound = stacked_box_lower_bound(failures, 2, 1.0, 2, KAPPA, path_length=2)
        self.assertLessEqual(bound, curve.plateau.ci95[1])
