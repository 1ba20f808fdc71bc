"""Counter-based random streams.

Every random draw of a run is addressed by (master seed, labels, counter): the labels pick
an independent Philox key, the counter is the position inside the stream. Replica `i` of an
experiment never shares a key with replica `j`, so results do not depend on how replicas are
scheduled.
"""

from hashlib import blake2b
from typing import List
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

Label = Union[int, str]

BLOCK_SIZE = 4096
_UINT64_MASK = (1 << 64) - 1
_INV_2_53 = 1.0 / (1 << 53)


def _encode_label(label: Label) -> bytes:
    if isinstance(label, str):
        raw = label.encode()
        return b's' + len(raw).to_bytes(4, 'big') + raw
    return b'i' + (label & _UINT64_MASK).to_bytes(8, 'big') + (1 if label < 0 else 0).to_bytes(1, 'big')


def _digest(seed: int, labels: Sequence[Label], digest_size: int) -> bytes:
    payload = (seed & _UINT64_MASK).to_bytes(8, 'big') + b''.join(map(_encode_label, labels))
    return blake2b(payload, digest_size=digest_size).digest()


def stream_key(seed: int, *labels: Label) -> int:
    """128-bit Philox key for the stream addressed by `labels` under `seed`."""
    return int.from_bytes(_digest(seed, labels, 16), 'big')


def derive_seed(seed: int, *labels: Label) -> int:
    """64-bit child seed, used to give each replica its own environment."""
    return int.from_bytes(_digest(seed, labels, 8), 'big')


def site_uniforms(seed: int, model_tag: str, site: Sequence[int], count: int) -> Tuple[float, ...]:
    """`count` uniforms in [0, 1) that depend only on (seed, model tag, site)."""
    if not 1 <= count <= 8:
        raise ValueError(f'count must be within [1, 8], got {count}')
    raw = _digest(seed, (model_tag, len(site), *site), 8 * count)
    return tuple(
        (int.from_bytes(raw[8 * i : 8 * i + 8], 'big') >> 11) * _INV_2_53 for i in range(count)  # noqa: E203
    )


class ReplicaStream:
    """Uniform draws from a Philox stream, served from fixed-size blocks."""

    def __init__(self, seed: int, *labels: Label) -> None:
        self.seed = seed
        self.labels = labels
        self.key = stream_key(seed, *labels)
        self._generator = np.random.Generator(np.random.Philox(key=self.key))
        self._block: List[float] = []
        self._index = 0
        self.draws = 0

    def __repr__(self) -> str:
        res = [
            super().__repr__(),
            '\nStream',
            f'.seed\t\t{self.seed}',
            f'.labels\t\t{self.labels}',
            f'.draws\t\t{self.draws}',
        ]
        return '\n'.join(res)

    @property
    def stream_id(self) -> str:
        return f'{self.key:032x}'

    def uniform(self) -> float:
        if self._index == len(self._block):
            self._block = self._generator.random(BLOCK_SIZE).tolist()
            self._index = 0
        value = self._block[self._index]
        self._index += 1
        self.draws += 1
        return value

    def generator(self) -> np.random.Generator:
        """Independent numpy generator keyed off this stream (for vectorised noise)."""
        return np.random.Generator(np.random.Philox(key=stream_key(self.seed, *self.labels, 'numpy')))


class ScriptedStream:
    """Replays a fixed list of uniforms; raises once the script is exhausted."""

    def __init__(self, values: Sequence[float], stream_id: str = 'scripted') -> None:
        self._values = list(values)
        self._index = 0
        self.draws = 0
        self._stream_id = stream_id

    @property
    def stream_id(self) -> str:
        return self._stream_id

    def uniform(self) -> float:
        if self._index >= len(self._values):
            raise IndexError(f'Scripted stream exhausted after {self._index} draws')
        value = self._values[self._index]
        self._index += 1
        self.draws += 1
        return value


UniformStream = Union[ReplicaStream, ScriptedStream]
