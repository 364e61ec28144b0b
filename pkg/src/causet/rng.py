"""Counter-based random streams.

Every output word is a pure function of ``(seed, stream, position)``, so any
slice of a stream can be generated independently and concatenated in order.
The block cipher is Philox4x64-10 as shipped by numpy; its output is pinned
against the Random123 known-answer vectors in the test suite.
"""
from __future__ import annotations

import math

import numpy as np
from numpy.random import Philox

_MASK64 = (1 << 64) - 1
_WORDS_PER_BLOCK = 4


class CounterRNG:
    """Random stream keyed by a 64-bit seed and a 64-bit stream id."""

    def __init__(self, seed: int, stream: int = 0):
        if not (0 <= seed <= _MASK64 and 0 <= stream <= _MASK64):
            raise ValueError("seed and stream must be unsigned 64-bit integers")
        self.seed = seed
        self.stream = stream

    def _generator_at(self, block: int) -> Philox:
        g = Philox(key=np.array([self.seed, self.stream], dtype=np.uint64))
        state = g.state
        # numpy increments the counter before encrypting, so park it one block early
        prev = (block - 1) % (1 << 256)
        state["state"]["counter"] = np.array(
            [(prev >> (64 * w)) & _MASK64 for w in range(4)], dtype=np.uint64
        )
        state["buffer_pos"] = _WORDS_PER_BLOCK
        g.state = state
        return g

    def words(self, start: int, count: int) -> np.ndarray:
        """Raw uint64 words at positions ``start .. start+count-1``."""
        if start < 0 or count < 0:
            raise ValueError("start and count must be non-negative")
        block, offset = divmod(start, _WORDS_PER_BLOCK)
        raw = self._generator_at(block).random_raw(offset + count)
        return np.asarray(raw, dtype=np.uint64)[offset:]

    def uniforms(self, start: int, count: int) -> np.ndarray:
        """Doubles in [0, 1) built from the top 53 bits of each word."""
        return (self.words(start, count) >> np.uint64(11)).astype(np.float64) * 2.0**-53


class UniformCursor:
    """Sequential reader over a :class:`CounterRNG` stream."""

    def __init__(self, rng: CounterRNG, start: int = 0, batch: int = 64):
        self._rng = rng
        self._pos = start
        self._batch = batch
        self._buf = np.empty(0)
        self._i = 0

    @property
    def position(self) -> int:
        return self._pos

    def __call__(self) -> float:
        if self._i >= self._buf.size:
            self._buf = self._rng.uniforms(self._pos, self._batch)
            self._i = 0
        u = float(self._buf[self._i])
        self._i += 1
        self._pos += 1
        return u


def poisson(lam: float, uniform) -> int:
    """Draw N ~ Poisson(lam) from a callable returning uniforms in [0, 1).

    Small means use multiplication of uniforms; large means use Hormann's
    transformed rejection (PTRS).
    """
    if lam < 0 or not math.isfinite(lam):
        raise ValueError(f"Poisson mean must be finite and >= 0, got {lam}")
    if lam == 0:
        return 0
    if lam < 10:
        limit = math.exp(-lam)
        k, prod = 0, uniform()
        while prod > limit:
            k += 1
            prod *= uniform()
        return k

    slam = math.sqrt(lam)
    loglam = math.log(lam)
    b = 0.931 + 2.53 * slam
    a = -0.059 + 0.02483 * b
    invalpha = 1.1239 + 1.1328 / (b - 3.4)
    vr = 0.9277 - 3.6224 / (b - 2)
    while True:
        u = uniform() - 0.5
        v = uniform()
        us = 0.5 - abs(u)
        k = math.floor((2 * a / us + b) * u + lam + 0.43) if us > 0 else -1
        if us >= 0.07 and v <= vr:
            return k
        if k < 0 or (us < 0.013 and v > us) or v == 0.0:
            continue
        if (math.log(v) + math.log(invalpha) - math.log(a / (us * us) + b)
                <= -lam + k * loglam - math.lgamma(k + 1)):
            return k
