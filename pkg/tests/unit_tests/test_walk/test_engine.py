import csv
import tempfile
from os.path import join
from unittest import TestCase

from pyrwre.environment.kernel import make_kernel
from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.window import EnvironmentWindow
from pyrwre.errors import ConfigurationError
from pyrwre.errors import EllipticityError
from pyrwre.errors import InvalidLawError
from pyrwre.geometry.direction import make_direction
from pyrwre.geometry.lattice import ZERO_SYMBOL
from pyrwre.geometry.regions import BoxSpec
from pyrwre.geometry.regions import ConeSpec
from pyrwre.geometry.regions import HalfSpaceSpec
from pyrwre.rng import ReplicaStream
from pyrwre.rng import ScriptedStream
from pyrwre.walk.engine import StopPredicate
from pyrwre.walk.engine import at_time
from pyrwre.walk.engine import enters_halfspace
from pyrwre.walk.engine import exits_box
from pyrwre.walk.engine import exits_cone
from pyrwre.walk.engine import iter_steps
from pyrwre.walk.engine import run_until
from pyrwre.walk.law import EpsilonLaw
from pyrwre.walk.law import make_epsilon_law
from pyrwre.walk.law import sample_epsilon
from pyrwre.walk.law import step_augmented
from pyrwre.walk.law import symbol_from_uniform
from pyrwre.walk.trajectory import Mode
from pyrwre.walk.trajectory import StopKind
from pyrwre.walk.trajectory import dump_trajectory

EAST = EnvironmentWindow.constant([1, 0, 0, 0])
UNIFORM = EnvironmentWindow.constant([0.25] * 4)


class TestEpsilonLaw(TestCase):
    def test_weights(self) -> None:
        law = make_epsilon_law(make_direction([1, 1]), 0.1)
        self.assertEqual((0, 2), law.eps_set)
        self.assertEqual((0, 2, ZERO_SYMBOL), law.alphabet)
        self.assertAlmostEqual(0.8, law.zero_weight)
        self.assertEqual(0.1, law.weight(2))
        self.assertEqual(0.0, law.weight(1))

    def test_invalid(self) -> None:
        with self.assertRaises(InvalidLawError):
            make_epsilon_law(make_direction([1, 1]), 0.5)
        with self.assertRaises(InvalidLawError):
            EpsilonLaw(kappa=0.0, eps_set=(0,))

    def test_residual(self) -> None:
        law = make_epsilon_law(make_direction([1, 0]), 0.1)
        residual = law.residual(make_kernel([0.25] * 4))
        self.assertAlmostEqual(1.0, sum(residual))
        self.assertAlmostEqual(0.15 / 0.9, residual[0])
        with self.assertRaises(EllipticityError):
            law.residual(make_kernel([0.05, 0.45, 0.25, 0.25]))

    def test_symbol_from_uniform(self) -> None:
        law = make_epsilon_law(make_direction([1, 1]), 0.1)
        self.assertEqual(0, symbol_from_uniform(law, 0.05))
        self.assertEqual(2, symbol_from_uniform(law, 0.15))
        self.assertEqual(ZERO_SYMBOL, symbol_from_uniform(law, 0.25))

    def test_forced_step_consumes_residual_draw(self) -> None:
        law = make_epsilon_law(make_direction([1, 0]), 0.1)
        stream = ScriptedStream([0.05, 0.99])
        symbol = sample_epsilon(law, stream)
        self.assertEqual(0, step_augmented(make_kernel([0.25] * 4), symbol, law, stream))
        self.assertEqual(2, stream.draws)


class TestRunUntil(TestCase):
    def test_straight_exit(self) -> None:
        box = BoxSpec(center=(0, 0), L=3, Lp=3, dir=make_direction([1, 0]))
        traj = run_until(EAST, (0, 0), [exits_box(box)], 100, ReplicaStream(0, 'test'))
        self.assertEqual([(0, 0), (1, 0), (2, 0), (3, 0)], traj.positions)
        self.assertEqual(3, traj.steps)
        self.assertEqual(3, len(traj))
        self.assertFalse(traj.censored)
        self.assertEqual(0, traj.stop_cause.index)
        self.assertEqual('exits_box', traj.stop_cause.name)
        self.assertEqual(Mode.quenched, traj.mode)
        self.assertEqual([], traj.eps)

    def test_predicates_checked_at_time_zero(self) -> None:
        box = BoxSpec(center=(10, 0), L=3, Lp=3, dir=make_direction([1, 0]))
        traj = run_until(EAST, (0, 0), [exits_box(box)], 100, ScriptedStream([]))
        self.assertEqual(0, traj.steps)
        self.assertEqual([(0, 0)], traj.positions)

    def test_first_predicate_wins(self) -> None:
        far = StopPredicate(name='far', test=lambda x, t: x[0] >= 2)
        traj = run_until(EAST, (0, 0), [at_time(2), far], 100, ReplicaStream(0, 'test'))
        self.assertEqual(0, traj.stop_cause.index)
        self.assertEqual('at_time(2)', str(traj.stop_cause).split(':')[1])

    def test_step_cap_censors(self) -> None:
        stream = ScriptedStream([0.5] * 10)
        traj = run_until(UNIFORM, (0, 0), [], 10, stream)
        self.assertTrue(traj.censored)
        self.assertEqual(StopKind.step_cap, traj.stop_cause.kind)
        self.assertEqual('step_cap', str(traj.stop_cause))
        self.assertEqual(10, traj.steps)
        self.assertEqual(11, len(traj.positions))
        self.assertEqual(10, stream.draws)

    def test_augmented_draws_two_per_step(self) -> None:
        law = make_epsilon_law(make_direction([1, 0]), 0.1)
        stream = ScriptedStream([0.05, 0.7, 0.5, 0.3])
        traj = run_until(UNIFORM, (0, 0), [], 2, stream, law=law)
        self.assertEqual([(0, 0), (1, 0), (0, 0)], traj.positions)
        self.assertEqual([0, ZERO_SYMBOL], traj.eps)
        self.assertEqual(Mode.augmented, traj.mode)
        self.assertEqual(4, stream.draws)

    def test_augmented_needs_ellipticity(self) -> None:
        law = make_epsilon_law(make_direction([1, 0]), 0.1)
        env = EnvironmentWindow.constant([0.05, 0.45, 0.25, 0.25])
        with self.assertRaises(EllipticityError):
            run_until(env, (0, 0), [], 5, ReplicaStream(0, 'test'), law=law)

    def test_endpoints_only(self) -> None:
        traj = run_until(EAST, (0, 0), [], 7, ReplicaStream(0, 'test'), keep_path=False)
        self.assertEqual([(0, 0), (7, 0)], traj.positions)
        self.assertFalse(traj.full)

    def test_cone_and_halfspace_predicates(self) -> None:
        direction = make_direction([1, 0])
        west = EnvironmentWindow.constant([0, 1, 0, 0])
        cone = ConeSpec(vertex=(0, 0), dir=direction, alpha='1/2')
        traj = run_until(west, (0, 0), [exits_cone(cone)], 10, ReplicaStream(0, 'test'))
        self.assertEqual(1, traj.steps)
        half = HalfSpaceSpec(anchor=(-3, 0), dir=direction)
        traj = run_until(west, (0, 0), [enters_halfspace(half)], 10, ReplicaStream(0, 'test'))
        self.assertEqual((-4, 0), traj.end)

    def test_reproducible(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=1)
        a = run_until(env, (0, 0), [], 500, ReplicaStream(3, 'walk'))
        b = run_until(env, (0, 0), [], 500, ReplicaStream(3, 'walk'))
        self.assertEqual(a.positions, b.positions)
        self.assertEqual(a.stream_id, b.stream_id)

    def test_iter_steps_matches_run_until(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=1)
        traj = run_until(env, (0, 0), [], 50, ReplicaStream(3, 'walk'))
        steps = iter_steps(env, (0, 0), ReplicaStream(3, 'walk'))
        self.assertEqual(traj.positions[1:], [next(steps)[1] for _ in range(50)])

    def test_invalid_budget(self) -> None:
        with self.assertRaises(ConfigurationError):
            run_until(EAST, (0, 0), [], None, ReplicaStream(0, 'test'))
        with self.assertRaises(ConfigurationError):
            run_until(EAST, (0, 0), [], 0, ReplicaStream(0, 'test'))


class TestDumpTrajectory(TestCase):
    def test_records(self) -> None:
        law = make_epsilon_law(make_direction([1, 0]), 0.1)
        traj = run_until(UNIFORM, (0, 0), [], 2, ScriptedStream([0.05, 0.7, 0.5, 0.3]), law=law)
        with tempfile.TemporaryDirectory() as tmp:
            path = join(tmp, 'trajectory.csv')
            dump_trajectory(traj, path)
            with open(path, newline='') as file:
                rows = list(csv.reader(file))
        self.assertEqual(['time', 'x1', 'x2', 'eps'], rows[0])
        self.assertEqual(['0', '0', '0', '+e1'], rows[1])
        self.assertEqual(['1', '1', '0', '0'], rows[2])
        self.assertEqual(['2', '0', '0', ''], rows[3])
