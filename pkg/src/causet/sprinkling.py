"""Seeded sprinkling of events into a causal diamond.

Points are drawn uniformly in the lightcone square [-S/2, S/2]^2 and rotated
by 45 degrees into (t, x), which fills the diamond |t| + |x| <= S/sqrt2.
"""
from __future__ import annotations

import enum
import io
import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .geometry import Event, lightcone_to_tx
from .rng import CounterRNG, UniformCursor, poisson

DIAMOND_TOL = 1e-12

# stream ids under one seed
_COORD_STREAM = 0
_COUNT_STREAM = 1
_REDRAW_STREAM = 2


class Mode(str, enum.Enum):
    FIXED_N = "fixed"
    POISSON = "poisson"


@dataclass(frozen=True)
class SprinkleConfig:
    n: int = 1000
    S: float = 1.0
    seed: int = 0
    mode: Mode = Mode.FIXED_N

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"n must be a positive integer, got {self.n!r}")
        if not (math.isfinite(self.S) and self.S > 0):
            raise ValueError(f"S must be positive, got {self.S!r}")
        if not (0 <= self.seed < 2**64):
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        object.__setattr__(self, "mode", Mode(self.mode))

    def to_dict(self) -> dict:
        return {"n": self.n, "S": self.S, "seed": self.seed, "mode": self.mode.value}


@dataclass(frozen=True, eq=False)
class Sprinkle:
    """Canonically sorted events (ascending t, ties by ascending x).

    Coordinates are held as read-only arrays; ``events`` materialises
    :class:`Event` objects on demand.
    """

    t: np.ndarray
    x: np.ndarray
    config: SprinkleConfig | None = field(default=None)

    def __post_init__(self):
        t = np.array(self.t, dtype=np.float64)
        x = np.array(self.x, dtype=np.float64)
        if t.shape != x.shape or t.ndim != 1:
            raise ValueError("t and x must be 1-D arrays of equal length")
        if not (np.all(np.isfinite(t)) and np.all(np.isfinite(x))):
            raise ValueError("event coordinates must be finite")
        order = np.lexsort((x, t))
        t, x = t[order], x[order]
        t.flags.writeable = False
        x.flags.writeable = False
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "x", x)

    @classmethod
    def from_events(cls, events, config: SprinkleConfig | None = None) -> "Sprinkle":
        events = list(events)
        return cls(np.array([e.t for e in events], dtype=np.float64),
                   np.array([e.x for e in events], dtype=np.float64), config)

    def __len__(self) -> int:
        return self.t.size

    @cached_property
    def events(self) -> list[Event]:
        return [Event(float(a), float(b)) for a, b in zip(self.t, self.x)]

    def __eq__(self, other):
        if not isinstance(other, Sprinkle):
            return NotImplemented
        return (self.config == other.config and np.array_equal(self.t, other.t)
                and np.array_equal(self.x, other.x))

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("t,x\n")
        for a, b in zip(self.t.tolist(), self.x.tolist()):
            buf.write(f"{a:.17g},{b:.17g}\n")
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps({
            "config": self.config.to_dict() if self.config else None,
            "events": [{"t": a, "x": b} for a, b in zip(self.t.tolist(), self.x.tolist())],
        })

    @classmethod
    def from_csv(cls, text: str) -> "Sprinkle":
        """Parse ``t,x`` CSV. Raises ``ValueError`` naming the offending line."""
        lines = text.splitlines()
        if not lines or lines[0].strip().replace(" ", "") != "t,x":
            raise ValueError("line 1: expected header 't,x'")
        ts, xs = [], []
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            parts = line.split(",")
            try:
                if len(parts) != 2:
                    raise ValueError
                a, b = float(parts[0]), float(parts[1])
            except ValueError:
                raise ValueError(f"line {lineno}: cannot parse event from {line!r}") from None
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ValueError(f"line {lineno}: non-finite coordinate")
            ts.append(a)
            xs.append(b)
        if not ts:
            raise ValueError("no events in input")
        return cls(np.array(ts), np.array(xs))

    @classmethod
    def from_json(cls, text: str) -> "Sprinkle":
        d = json.loads(text)
        events = d["events"]
        if not events:
            raise ValueError("no events in input")
        cfg = d.get("config")
        config = SprinkleConfig(**cfg) if cfg else None
        return cls(np.array([e["t"] for e in events], dtype=np.float64),
                   np.array([e["x"] for e in events], dtype=np.float64), config)


def diamond_contains(S: float, e: Event) -> bool:
    if S <= 0:
        raise ValueError("S must be positive")
    return abs(e.t) + abs(e.x) <= S * math.sqrt(2) / 2 + DIAMOND_TOL


def _lightcone_block(rng: CounterRNG, start: int, count: int, S: float):
    w = rng.uniforms(2 * start, 2 * count)
    return S * (w[0::2] - 0.5), S * (w[1::2] - 0.5)


def sprinkle(config: SprinkleConfig, chunk_size: int | None = None) -> Sprinkle:
    """Sprinkle events for ``config``.

    Event ``k`` takes words ``2k`` and ``2k+1`` of the coordinate stream as
    (u-, u+), so generating in chunks of any size gives identical output.
    """
    if config.mode is Mode.POISSON:
        n = poisson(float(config.n), UniformCursor(CounterRNG(config.seed, _COUNT_STREAM)))
    else:
        n = config.n
    rng = CounterRNG(config.seed, _COORD_STREAM)
    step = n if not chunk_size else int(chunk_size)
    parts = [_lightcone_block(rng, s, min(step, n - s), config.S) for s in range(0, n, max(step, 1))]
    um = np.concatenate([p[0] for p in parts]) if parts else np.empty(0)
    up = np.concatenate([p[1] for p in parts]) if parts else np.empty(0)

    um, up = _redraw_duplicates(um, up, config)
    t, x = lightcone_to_tx(um, up)
    return Sprinkle(t, x, config)


def _redraw_duplicates(um: np.ndarray, up: np.ndarray, config: SprinkleConfig):
    if um.size < 2:
        return um, up
    cursor = UniformCursor(CounterRNG(config.seed, _REDRAW_STREAM))
    um, up = um.copy(), up.copy()
    while True:
        pts = np.stack([um, up], axis=1)
        _, first = np.unique(pts, axis=0, return_index=True)
        dup = np.setdiff1d(np.arange(um.size), first)
        if dup.size == 0:
            return um, up
        for k in dup:
            um[k] = config.S * (cursor() - 0.5)
            up[k] = config.S * (cursor() - 0.5)
