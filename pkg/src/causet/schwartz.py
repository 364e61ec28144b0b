"""Sampled rapidly decreasing functions: seminorms and the position expectation value."""
from __future__ import annotations

import io
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

DEFAULT_R = 10.0
DEFAULT_H = 1.0 / 256
DECAY_RATIO = 1e-10
MAX_ORDER = 4
FD_ACCURACY = 4


@dataclass(frozen=True, eq=False)
class TestFunction:
    """Complex samples on the uniform grid -R, -R + h, ..., R."""

    __test__ = False  # not a pytest class

    values: np.ndarray
    R: float = DEFAULT_R
    h: float = DEFAULT_H

    def __post_init__(self):
        n = round(2 * self.R / self.h)
        if not math.isclose(n * self.h, 2 * self.R, rel_tol=1e-12):
            raise ValueError("2R must be an integer multiple of h")
        vals = np.array(self.values, dtype=np.complex128)
        if vals.shape != (n + 1,):
            raise ValueError(f"expected {n + 1} samples, got {vals.shape}")
        peak = np.abs(vals).max()
        if max(abs(vals[0]), abs(vals[-1])) > DECAY_RATIO * peak:
            raise ValueError("function does not decay at the grid boundary")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def x(self) -> np.ndarray:
        return grid(self.R, self.h)

    @classmethod
    def from_callable(cls, fn, R: float = DEFAULT_R, h: float = DEFAULT_H) -> "TestFunction":
        return cls(fn(grid(R, h)), R, h)

    def same_grid(self, other: "TestFunction") -> bool:
        return self.R == other.R and self.h == other.h

    def __mul__(self, c):
        return TestFunction(self.values * c, self.R, self.h)

    __rmul__ = __mul__

    def __add__(self, other: "TestFunction"):
        return superpose([self, other], [1.0, 1.0])

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("x,re,im\n")
        for xv, fv in zip(self.x.tolist(), self.values.tolist()):
            buf.write(f"{xv:.17g},{fv.real:.17g},{fv.imag:.17g}\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str) -> "TestFunction":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines or lines[0].replace(" ", "") != "x,re,im":
            raise ValueError("line 1: expected header 'x,re,im'")
        xs, vals = [], []
        for lineno, ln in enumerate(lines[1:], start=2):
            try:
                a, re, im = (float(p) for p in ln.split(","))
            except ValueError:
                raise ValueError(f"line {lineno}: cannot parse {ln!r}") from None
            xs.append(a)
            vals.append(complex(re, im))
        if len(xs) < 3:
            raise ValueError("need at least three samples")
        xs = np.array(xs)
        h = (xs[-1] - xs[0]) / (len(xs) - 1)
        if not np.allclose(np.diff(xs), h, rtol=1e-9, atol=0):
            raise ValueError("grid must be uniform")
        if not math.isclose(xs[0], -xs[-1], abs_tol=1e-12):
            raise ValueError("grid must be symmetric about 0")
        return cls(np.array(vals), float(xs[-1]), float(h))


def grid(R: float, h: float) -> np.ndarray:
    n = round(2 * R / h)
    return -R + h * np.arange(n + 1)


def gaussian(center: float = 0.0, width: float = 1.0, R: float = DEFAULT_R,
             h: float = DEFAULT_H) -> TestFunction:
    """exp(-((x - center)/width)^2)."""
    return TestFunction.from_callable(lambda x: np.exp(-(((x - center) / width) ** 2)), R, h)


@dataclass(frozen=True)
class SeminormIndex:
    alpha: int = 0
    beta: int = 0

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if int(v) != v or v < 0:
                raise ValueError(f"{name} must be a non-negative integer")
        if self.alpha > MAX_ORDER or self.beta > MAX_ORDER:
            raise ValueError(f"unsupported order: alpha and beta must be <= {MAX_ORDER}")


@dataclass(frozen=True)
class OpenWindow:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got ({self.lo}, {self.hi})")

    def __contains__(self, value: float) -> bool:
        return self.lo < value < self.hi


def central_weights(order: int, accuracy: int = FD_ACCURACY) -> np.ndarray:
    """Central finite-difference weights on offsets -m..m (for unit spacing)."""
    m = (order + accuracy - 1) // 2
    offsets = np.arange(-m, m + 1, dtype=np.float64)
    A = np.vander(offsets, increasing=True).T
    rhs = np.zeros(2 * m + 1)
    rhs[order] = math.factorial(order)
    return np.linalg.solve(A, rhs)


def derivative(f: TestFunction, order: int) -> tuple[np.ndarray, np.ndarray]:
    """Return (x, D^order f) on the interior points where the stencil fits."""
    if order > MAX_ORDER:
        raise ValueError(f"unsupported derivative order {order} (max {MAX_ORDER})")
    x = f.x
    if order == 0:
        return x, np.asarray(f.values)
    w = central_weights(order)
    m = (w.size - 1) // 2
    vals = f.values
    d = sum(wk * vals[k : vals.size - 2 * m + k] for k, wk in enumerate(w))
    return x[m : x.size - m], d / f.h**order


def _refined_max(y: np.ndarray) -> float:
    """Maximum of smooth samples y, refined by a local sextic through 7 points."""
    k = int(np.argmax(y))
    best = float(y[k])
    if k < 3 or k > y.size - 4 or best == 0.0:
        return best
    s = np.arange(-3, 4, dtype=np.float64)
    coef = np.polyfit(s, y[k - 3 : k + 4], 6)
    crit = np.roots(np.polyder(coef))
    crit = crit[(np.abs(crit.imag) < 1e-12) & (np.abs(crit.real) <= 1.0)].real
    if crit.size:
        best = max(best, float(np.polyval(coef, crit).max()))
    return best


def seminorm(f: TestFunction, idx: SeminormIndex) -> float:
    """sup |x^alpha D^beta f| over the grid, with the peak refined between samples."""
    x, d = derivative(f, idx.beta)
    g2 = np.abs(x**idx.alpha * d) ** 2
    return math.sqrt(max(_refined_max(g2), 0.0))


def norm_squared(f: TestFunction) -> float:
    return float(simpson(np.abs(f.values) ** 2, dx=f.h))


def expectation(f: TestFunction) -> float:
    """<f, x f> / <f, f> by composite Simpson quadrature."""
    dens = np.abs(f.values) ** 2
    norm = float(simpson(dens, dx=f.h))
    if not norm > 1e-30:
        raise ValueError("expectation undefined on zero vector")
    return float(simpson(f.x * dens, dx=f.h)) / norm


def in_preimage(f: TestFunction, W: OpenWindow) -> bool:
    return expectation(f) in W


def superpose(fs, coeffs) -> TestFunction:
    fs, coeffs = list(fs), list(coeffs)
    if not fs or len(fs) != len(coeffs):
        raise ValueError("need matching non-empty lists of functions and coefficients")
    if any(not fs[0].same_grid(g) for g in fs[1:]):
        raise ValueError("all functions must share one grid")
    vals = sum(complex(c) * g.values for g, c in zip(fs, coeffs))
    return TestFunction(vals, fs[0].R, fs[0].h)
