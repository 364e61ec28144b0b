"""Radar (light-flash) constructions for time dilation and length contraction.

The simulations intersect straight world lines only; closed forms such as the
Lorentz factor appear in this module solely as reference values.
"""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

from .geometry import Event


def _check_speed(v: float, c: float) -> None:
    if not c > 0:
        raise ValueError(f"light speed must be positive, got {c}")
    if not 0 <= v < c:
        raise ValueError(f"need 0 <= v < c, got v={v}, c={c}")


def _intersect(p1: tuple[float, float], slope1: float, p2: tuple[float, float], slope2: float):
    """Intersection of the lines x = x0 + slope*(t - t0) through p1 and p2, as (t, x)."""
    (t1, x1), (t2, x2) = p1, p2
    t = (x2 - x1 + slope1 * t1 - slope2 * t2) / (slope1 - slope2)
    return t, x1 + slope1 * (t - t1)


@dataclass(frozen=True)
class FlashExchange:
    """A flash sent from the resting observer at time T, reflected by the moving one.

    ``t1`` is the resting observer's radar time of the reflection (midpoint of
    emission and return) and ``t2`` the moving observer's clock reading there.
    """

    T: float
    v: float
    c: float
    emission: Event
    reception: Event
    returned: Event
    k: float
    t1: float
    t2: float


def simulate_flash(T: float, v: float, c: float = 1.0) -> FlashExchange:
    _check_speed(v, c)
    if not T > 0:
        raise ValueError(f"emission time must be positive, got {T}")
    emission = (T, 0.0)
    # flash x = c (t - T) meets observer x = v t
    reception = _intersect(emission, c, (0.0, 0.0), v)
    # reflected flash heads back at -c to the resting observer x = 0
    returned = _intersect(reception, -c, (0.0, 0.0), 0.0)
    k = math.sqrt(returned[0] / T)
    t1 = 0.5 * (emission[0] + returned[0])
    # by the same k-rule the moving clock reads k T at reception
    t2 = k * T
    return FlashExchange(
        T=T, v=v, c=c,
        emission=Event(*emission), reception=Event(*reception), returned=Event(*returned),
        k=k, t1=t1, t2=t2,
    )


def dilation_ratio(ex: FlashExchange) -> float:
    return ex.t1 / ex.t2


def proper_time_at_reception(ex: FlashExchange) -> float:
    """Moving-clock reading from the interval to the common origin event."""
    t, x = ex.reception.t, ex.reception.x
    return math.sqrt(t * t - (x / ex.c) ** 2)


@dataclass(frozen=True)
class RulerMeasurement:
    L0: float
    v: float
    L: float


def contracted_length(L0: float, v: float, c: float = 1.0) -> RulerMeasurement:
    """Length of a ruler of rest length L0 moving at v: L0 * sqrt(1 - v^2/c^2)."""
    _check_speed(v, c)
    if not L0 > 0:
        raise ValueError(f"rest length must be positive, got {L0}")
    return RulerMeasurement(L0, v, L0 * math.sqrt(1.0 - (v / c) ** 2))


def _moving_event(tau: float, k: float, c: float):
    # moving clock reads tau; radar from the resting observer: sent at tau/k, back at k tau
    send, back = tau / k, k * tau
    return 0.5 * (send + back), 0.5 * c * (back - send)


def measure_moving_ruler(L0: float, v: float, c: float = 1.0, tau: float = 1.0) -> RulerMeasurement:
    """Measure a moving ruler with flashes only.

    The rear end rides with the moving observer. At its clock time ``tau`` it
    sends a flash to the front end which returns at ``tau + 2 L0 / c``; the
    reflection event fixes the front world line. Both rear events are placed
    in the resting frame by radar with the k factor from :func:`simulate_flash`.
    The length is the front's offset along x at t = 0.
    """
    _check_speed(v, c)
    if not L0 > 0:
        raise ValueError(f"rest length must be positive, got {L0}")
    k = simulate_flash(1.0, v, c).k
    out = _moving_event(tau, k, c)
    back = _moving_event(tau + 2.0 * L0 / c, k, c)
    front = _intersect(out, c, back, -c)
    rear_velocity = out[1] / out[0]
    return RulerMeasurement(L0, v, front[1] - rear_velocity * front[0])


def sr_sweep(betas, c: float = 1.0) -> list[dict]:
    """Rows of beta, k, simulated t1/t2, closed-form gamma and simulated L/L0."""
    rows = []
    for beta in betas:
        v = beta * c
        ex = simulate_flash(1.0, v, c)
        rows.append({
            "beta": beta,
            "k": ex.k,
            "t1_over_t2": dilation_ratio(ex),
            "gamma_closed_form": 1.0 / math.sqrt(1.0 - beta * beta),
            "L_over_L0": measure_moving_ruler(1.0, v, c).L,
        })
    return rows


def sweep_to_csv(rows) -> str:
    cols = ["beta", "k", "t1_over_t2", "gamma_closed_form", "L_over_L0"]
    buf = io.StringIO()
    buf.write(",".join(cols) + "\n")
    for r in rows:
        buf.write(",".join(f"{r[c]:.17g}" for c in cols) + "\n")
    return buf.getvalue()
