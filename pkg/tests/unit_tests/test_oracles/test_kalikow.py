from unittest import TestCase

import numpy as np
from parameterized import parameterized  # type: ignore

from pyrwre.environment.kernel import make_kernel
from pyrwre.environment.model import EnvironmentModel
from pyrwre.environment.model import ModelKind
from pyrwre.environment.window import EnvironmentWindow
from pyrwre.errors import AbsorbingDefectError
from pyrwre.errors import PreconditionError
from pyrwre.geometry.direction import make_direction
from pyrwre.oracles.kalikow import box_sites
from pyrwre.oracles.kalikow import green_function
from pyrwre.oracles.kalikow import kalikow_condition_margin
from pyrwre.oracles.kalikow import kalikow_exit_law
from pyrwre.oracles.kalikow import kalikow_kernel


class TestKalikowKernel(TestCase):
    def test_single_realization_is_environment(self) -> None:
        env = EnvironmentModel(kind=ModelKind.column_e1, master_seed=4)
        kernel = kalikow_kernel([(1.0, env)], box_sites(1))
        for x in box_sites(1):
            for a, b in zip(env.kernel_at(x).probs, kernel.probs[x]):
                self.assertAlmostEqual(a, b, delta=1e-12)
        self.assertGreaterEqual(kernel.green_mass[(0, 0)], 1.0)

    def test_rows_and_drift(self) -> None:
        realizations = [
            (0.3, EnvironmentModel(kind=ModelKind.column_e1, master_seed=1)),
            (0.7, EnvironmentModel(kind=ModelKind.column_e1, master_seed=2)),
        ]
        kernel = kalikow_kernel(realizations, box_sites(1))
        for x in kernel.sites:
            self.assertAlmostEqual(1.0, sum(kernel.probs[x]), delta=1e-10)
            p = kernel.probs[x]
            self.assertAlmostEqual(p[0] - p[1], kernel.drift(x)[0], delta=1e-12)
            self.assertAlmostEqual(p[2] - p[3], kernel.drift(x)[1], delta=1e-12)

    @parameterized.expand([(seed, radius) for seed in range(4) for radius in (1, 2)])
    def test_drift_is_occupation_mixture(self, seed, radius) -> None:
        rng = np.random.default_rng(seed)
        realizations = [
            (
                float(rng.uniform(0.5, 2.0)),
                EnvironmentModel(
                    kind=ModelKind.iid_ue,
                    master_seed=int(rng.integers(1_000)),
                    base=tuple(float(b) for b in rng.uniform(0.1, 0.4, 4)),
                    jitter=0.5,
                ),
            )
            for _ in range(int(rng.integers(2, 4)))
        ]
        kernel = kalikow_kernel(realizations, box_sites(radius))
        index = {x: i for i, x in enumerate(kernel.sites)}
        total = sum(w for w, _ in realizations)
        green = []
        drifts = []
        for w, env in realizations:
            probs = np.array([env.kernel_at(x).probs for x in kernel.sites])
            green.append(w / total * green_function(probs, kernel.sites, index, (0, 0)))
            drifts.append(np.array([[p[0] - p[1], p[2] - p[3]] for p in probs]))
        green = np.array(green)
        drifts = np.array(drifts)
        for x, i in index.items():
            weights = green[:, i] / green[:, i].sum()
            self.assertTrue(np.all(weights >= 0))
            self.assertAlmostEqual(1.0, float(weights.sum()), delta=1e-12)
            drift = np.array(kernel.drift(x))
            self.assertTrue(np.allclose(weights @ drifts[:, i], drift, rtol=0, atol=1e-10))
            self.assertTrue(np.all(drift >= drifts[:, i].min(axis=0) - 1e-10), f'{x}')
            self.assertTrue(np.all(drift <= drifts[:, i].max(axis=0) + 1e-10), f'{x}')

    def test_exit_law_identity(self) -> None:
        realizations = [
            (1.0, EnvironmentModel(kind=ModelKind.product_columns, master_seed=1)),
            (2.0, EnvironmentModel(kind=ModelKind.product_columns, master_seed=2)),
            (1.0, EnvironmentModel(kind=ModelKind.iid_ue, master_seed=3, base=(0.4, 0.1, 0.25, 0.25), jitter=0.5)),
        ]
        exit_law = kalikow_exit_law(realizations, box_sites(1))
        self.assertLess(exit_law.max_difference(), 1e-10)
        self.assertAlmostEqual(1.0, sum(exit_law.annealed.values()), delta=1e-10)
        self.assertEqual(12, len(exit_law.kalikow))

    def test_condition_margin(self) -> None:
        env = EnvironmentWindow.constant([0.4, 0.1, 0.25, 0.25])
        kernel = kalikow_kernel([(1.0, env)], box_sites(1))
        self.assertAlmostEqual(0.3, kalikow_condition_margin(kernel, make_direction([1, 0])))

    def test_absorbing_set(self) -> None:
        env = EnvironmentWindow(make_kernel([1, 0, 0, 0]), {(1, 0): make_kernel([0, 1, 0, 0])})
        with self.assertRaises(AbsorbingDefectError):
            kalikow_kernel([(1.0, env)], [(0, 0), (1, 0)])

    def test_domain(self) -> None:
        env = EnvironmentWindow.constant([0.25] * 4)
        with self.assertRaises(PreconditionError):
            kalikow_kernel([(1.0, env)], [(0, 0), (2, 0)])
        with self.assertRaises(PreconditionError):
            kalikow_kernel([(1.0, env)], [(1, 0), (2, 0)])
        with self.assertRaises(PreconditionError):
            kalikow_kernel([], box_sites(1))

    def test_box_sites(self) -> None:
        self.assertEqual(9, len(box_sites(1)))
        self.assertEqual(125, len(box_sites(2, 3)))
        self.assertIn((0, 0), box_sites(1))
