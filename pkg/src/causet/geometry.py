"""Events, lightcone coordinates, interval classification and boosts in 1+1 Minkowski space.

Units have c = 1 and the line element is ds^2 = -dt^2 + dx^2.
"""
from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

SQRT1_2 = math.sqrt(0.5)

#: Absolute tolerance on dt^2 - dx^2 separating lightlike from timelike/spacelike.
LIGHTCONE_TOL = 1e-12


@dataclass(frozen=True)
class Event:
    t: float
    x: float

    def __post_init__(self):
        if not (math.isfinite(self.t) and math.isfinite(self.x)):
            raise ValueError(f"event coordinates must be finite, got ({self.t}, {self.x})")

    def to_json(self) -> str:
        return json.dumps({"t": self.t, "x": self.x})

    @classmethod
    def from_json(cls, text: str) -> "Event":
        d = json.loads(text)
        return cls(float(d["t"]), float(d["x"]))

    def to_csv_row(self) -> str:
        return f"{self.t:.17g},{self.x:.17g}"


@dataclass(frozen=True)
class LightconePoint:
    u_minus: float
    u_plus: float


class IntervalClass(enum.Enum):
    FUTURE_TIMELIKE = "future-timelike"
    PAST_TIMELIKE = "past-timelike"
    FUTURE_LIGHTLIKE = "future-lightlike"
    PAST_LIGHTLIKE = "past-lightlike"
    SPACELIKE = "spacelike"
    COINCIDENT = "coincident"

    def time_reverse(self) -> "IntervalClass":
        return _REVERSED.get(self, self)


_REVERSED = {
    IntervalClass.FUTURE_TIMELIKE: IntervalClass.PAST_TIMELIKE,
    IntervalClass.PAST_TIMELIKE: IntervalClass.FUTURE_TIMELIKE,
    IntervalClass.FUTURE_LIGHTLIKE: IntervalClass.PAST_LIGHTLIKE,
    IntervalClass.PAST_LIGHTLIKE: IntervalClass.FUTURE_LIGHTLIKE,
}


def to_lightcone(e: Event) -> LightconePoint:
    """Return (u-, u+) = ((t - x)/sqrt2, (x + t)/sqrt2)."""
    return LightconePoint((e.t - e.x) * SQRT1_2, (e.x + e.t) * SQRT1_2)


def from_lightcone(p: LightconePoint) -> Event:
    """Rotate lightcone coordinates back by 45 degrees to (t, x)."""
    t, x = lightcone_to_tx(p.u_minus, p.u_plus)
    return Event(float(t), float(x))


def lightcone_to_tx(u_minus, u_plus):
    """Array form of :func:`from_lightcone`; accepts scalars or arrays."""
    t = SQRT1_2 * u_minus + SQRT1_2 * u_plus
    x = -SQRT1_2 * u_minus + SQRT1_2 * u_plus
    return t, x


def tx_to_lightcone(t, x):
    """Array form of :func:`to_lightcone`, returning (u_minus, u_plus)."""
    return (t - x) * SQRT1_2, (x + t) * SQRT1_2


def interval(e1: Event, e2: Event) -> float:
    """ds^2 = -dt^2 + dx^2 between two events."""
    dt = e2.t - e1.t
    dx = e2.x - e1.x
    return -dt * dt + dx * dx


def classify_interval(e1: Event, e2: Event, tol: float = LIGHTCONE_TOL) -> IntervalClass:
    dt = e2.t - e1.t
    dx = e2.x - e1.x
    if dt * dt + dx * dx <= tol:
        return IntervalClass.COINCIDENT
    s = dt * dt - dx * dx
    if s > tol:
        return IntervalClass.FUTURE_TIMELIKE if dt > 0 else IntervalClass.PAST_TIMELIKE
    if s < -tol:
        return IntervalClass.SPACELIKE
    return IntervalClass.FUTURE_LIGHTLIKE if dt > 0 else IntervalClass.PAST_LIGHTLIKE


def precedes(e1: Event, e2: Event, tol: float = LIGHTCONE_TOL) -> bool:
    """True when e2 lies in the causal future of e1 (lightcone included, e1 itself excluded)."""
    return classify_interval(e1, e2, tol) in (
        IntervalClass.FUTURE_TIMELIKE,
        IntervalClass.FUTURE_LIGHTLIKE,
    )


def precedes_array(t1, x1, t2, x2, tol: float = LIGHTCONE_TOL) -> np.ndarray:
    """Broadcasting version of :func:`precedes` on coordinate arrays."""
    dt = np.subtract(t2, t1)
    dx = np.subtract(x2, x1)
    return (dt * dt - dx * dx >= -tol) & (dt > 0) & (dt * dt + dx * dx > tol)


def lorentz_factor(beta: float) -> float:
    return 1.0 / math.sqrt(1.0 - beta * beta)


def _check_beta(beta: float) -> None:
    if not abs(beta) < 1.0:
        raise ValueError(f"superluminal boost: |beta| = {abs(beta)} >= 1")


def boost(e: Event, beta: float) -> Event:
    """Lorentz boost with velocity beta: t' = g(t - beta x), x' = g(x - beta t)."""
    t, x = boost_array(e.t, e.x, beta)
    return Event(float(t), float(x))


def boost_array(t, x, beta: float):
    _check_beta(beta)
    g = lorentz_factor(beta)
    return g * (t - beta * x), g * (x - beta * t)
