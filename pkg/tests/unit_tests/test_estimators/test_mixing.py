from fractions import Fraction
from unittest import TestCase

from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.window import EnvironmentWindow
from pyrwre.errors import ConfigurationError
from pyrwre.errors import PreconditionError
from pyrwre.estimators.mixing import event_family
from pyrwre.estimators.mixing import mixing_profile
from pyrwre.geometry.direction import make_direction
from pyrwre.geometry.regions import ConeSpec

E1 = make_direction([1, 0])


class TestEventFamily(TestCase):
    def test_axis_direction(self) -> None:
        family = event_family(E1, Fraction(1, 2), 3)
        self.assertEqual(((0, 0), (-1, 0)), family.a_sites)
        self.assertEqual(((3, 0), (4, 0)), family.b_sites)
        self.assertEqual(0, family.symbol)
        self.assertIn('alpha=1/2', family.describe())

    def test_diagonal_direction(self) -> None:
        direction = make_direction([1, 1])
        family = event_family(direction, Fraction(1, 3), 2.0)
        self.assertEqual(((0, 0), (-1, -1)), family.a_sites)
        self.assertEqual(((2, 2), (3, 3)), family.b_sites)

    def test_b_sites_lie_in_the_shifted_cone(self) -> None:
        for r in (0.5, 1.0, 2.5, 7.0):
            family = event_family(E1, Fraction(1, 4), r)
            vertex = tuple(round(r * c) for c in E1.l)
            cone = ConeSpec(vertex=vertex, dir=E1, alpha=Fraction(1, 4))
            for z in family.b_sites:
                self.assertTrue(cone.contains(z))
                self.assertGreaterEqual(E1.projection(z), r)

    def test_invalid(self) -> None:
        with self.assertRaises(PreconditionError):
            event_family(E1, Fraction(1, 2), 0)


class TestMixingProfile(TestCase):
    def test_constant_environment(self) -> None:
        env = EnvironmentWindow.constant([0.4, 0.1, 0.25, 0.25])
        profile = mixing_profile(env, E1, Fraction(1, 2), [1, 2], 5)
        self.assertEqual([0.0, 0.0], [p.mean for p in profile.phi])
        self.assertEqual([0, 0], profile.skipped)
        self.assertEqual([1, 2], [row['scale'] for row in profile.to_rows()])

    def test_independent_sites(self) -> None:
        env = EnvironmentModel(kind=ModelKind.iid_ue, base=(0.4, 0.1, 0.25, 0.25), jitter=0.5)
        profile = mixing_profile(env, E1, Fraction(1, 2), [2, 4], 400, seed=6)
        for phi in profile.phi:
            self.assertLess(phi.mean, 0.25)
            self.assertEqual(400, phi.n)

    def test_same_result_across_workers(self) -> None:
        env = EnvironmentModel(kind=ModelKind.iid_ue, base=(0.4, 0.1, 0.25, 0.25), jitter=0.5)
        serial = mixing_profile(env, E1, Fraction(1, 2), [2], 20, seed=1)
        parallel = mixing_profile(env, E1, Fraction(1, 2), [2], 20, seed=1, workers=2)
        self.assertEqual(serial.phi, parallel.phi)

    def test_invalid(self) -> None:
        with self.assertRaises(ConfigurationError):
            mixing_profile(EnvironmentWindow.constant([0.25] * 4), E1, 1, [1], 1)
