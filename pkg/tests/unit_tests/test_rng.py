from functools import partial
from unittest import TestCase

from pyrwre.parallel import replica_map
from pyrwre.rng import ReplicaStream
from pyrwre.rng import ScriptedStream
from pyrwre.rng import derive_seed
from pyrwre.rng import site_uniforms
from pyrwre.rng import stream_key


class TestReplicaStream(TestCase):
    def test_reproducible(self) -> None:
        a = ReplicaStream(42, 'box', 3, 0)
        b = ReplicaStream(42, 'box', 3, 0)
        self.assertEqual([a.uniform() for _ in range(5000)], [b.uniform() for _ in range(5000)])
        self.assertEqual(5000, a.draws)
        self.assertEqual(a.stream_id, b.stream_id)
        self.assertEqual(32, len(a.stream_id))

    def test_labels_select_independent_keys(self) -> None:
        keys = {
            stream_key(42, 'box', 3, 0),
            stream_key(42, 'box', 3, 1),
            stream_key(42, 'box', 4, 0),
            stream_key(43, 'box', 3, 0),
            stream_key(42, 'survival', 3, 0),
            stream_key(42, 'box3', 0),
        }
        self.assertEqual(6, len(keys))

    def test_uniform_range(self) -> None:
        stream = ReplicaStream(0, 'range')
        values = [stream.uniform() for _ in range(10000)]
        self.assertTrue(all(0.0 <= u < 1.0 for u in values))
        self.assertAlmostEqual(0.5, sum(values) / len(values), delta=0.02)

    def test_derive_seed(self) -> None:
        seed = derive_seed(7, 'environment', 12)
        self.assertEqual(seed, derive_seed(7, 'environment', 12))
        self.assertNotEqual(seed, derive_seed(7, 'environment', 13))
        self.assertTrue(0 <= seed < 2**64)

    def test_site_uniforms(self) -> None:
        a = site_uniforms(1, 'column', (3,), 4)
        self.assertEqual(a, site_uniforms(1, 'column', (3,), 4))
        self.assertNotEqual(a, site_uniforms(1, 'column', (4,), 4))
        self.assertEqual(a[:2], site_uniforms(1, 'column', (3,), 4)[:2])
        self.assertTrue(all(0.0 <= u < 1.0 for u in a))
        with self.assertRaises(ValueError):
            site_uniforms(1, 'column', (3,), 9)

    def test_scripted_stream(self) -> None:
        stream = ScriptedStream([0.1, 0.9])
        self.assertEqual(0.1, stream.uniform())
        self.assertEqual(0.9, stream.uniform())
        with self.assertRaises(IndexError):
            stream.uniform()


class TestReplicaMap(TestCase):
    def test_index_order(self) -> None:
        func = partial(pow, 2)
        self.assertEqual([1, 2, 4, 8, 16], replica_map(func, 5))
        self.assertEqual(replica_map(func, 40), replica_map(func, 40, workers=2))

    def test_empty(self) -> None:
        self.assertEqual([], replica_map(abs, 0))
