"""Sums over causal world lines between two events.

Each chain of k links carries amplitude ``hop**k``. Because the link matrix is
strictly upper triangular it is nilpotent, so the path series
``sum_k (hop L)^k = (I - hop L)^-1 - I`` terminates and is obtained by
back-substitution against the unit upper triangular ``I - hop L``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .causal import DEFAULT_CHAIN_CAP, Chain, _BitMatrix, _check_pair, enumerate_chains

_INT64_SAFE = float(2**62)


@dataclass(frozen=True)
class AmplitudeModel:
    """Constant complex amplitude per link."""

    hop: complex = 1.0

    def amplitude(self, n_links: int) -> complex:
        return complex(self.hop) ** n_links


def path_count_matrix(L: _BitMatrix) -> np.ndarray:
    """Entry (i, j) is the number of link paths from i to j.

    Works in int64 and switches to Python integers (object dtype) when a count
    could exceed 2**62. Passing a causal matrix instead of a link matrix
    counts chains of relations rather than chains of links.
    """
    if not L.is_strictly_upper():
        raise ValueError("matrix must be strictly upper triangular")
    dense = L.to_dense()
    n = L.n
    try:
        return _back_substitute(dense, n, np.int64)
    except OverflowError:
        return _back_substitute(dense, n, object)


def _back_substitute(dense: np.ndarray, n: int, dtype) -> np.ndarray:
    # N = I + L N, filled from the last row up; returns N - I
    N = np.zeros((n, n), dtype=dtype)
    for i in range(n - 1, -1, -1):
        N[i, i] = 1
        ks = np.flatnonzero(dense[i])
        if ks.size:
            if dtype is np.int64:
                if N[ks].astype(np.float64).sum(axis=0).max() >= _INT64_SAFE:
                    raise OverflowError
            N[i] += N[ks].sum(axis=0)
    for i in range(n):
        N[i, i] = 0
    return N


def path_counts_by_length(L: _BitMatrix, i: int, j: int) -> list[int]:
    """Number of paths from i to j with exactly k links, for k = 0 .. n-1."""
    _check_pair(L.n, i, j)
    dense = L.to_dense()
    counts = [0] * max(L.n, 1)
    # frontier[m] = number of k-link paths from i ending at m
    frontier = [0] * L.n
    frontier[i] = 1
    for k in range(1, L.n):
        new = [0] * L.n
        for m in range(L.n):
            if frontier[m]:
                for s in np.flatnonzero(dense[m]):
                    new[s] += frontier[m]
        frontier = new
        counts[k] = frontier[j]
        if not any(frontier):
            break
    return counts


def total_amplitude(L: _BitMatrix, model: AmplitudeModel, i: int, j: int) -> complex:
    """Sum of hop**len(c) over all chains c from i to j."""
    _check_pair(L.n, i, j)
    hop = complex(model.hop)
    dense = L.to_dense()
    # column j of (I - hop L)^-1, only rows i..j matter
    y = np.zeros(L.n, dtype=np.complex128)
    y[j] = 1.0
    for k in range(j - 1, i - 1, -1):
        succ = np.flatnonzero(dense[k, k + 1 : j + 1]) + k + 1
        if succ.size:
            y[k] = hop * y[succ].sum()
    return complex(y[i])


@dataclass(frozen=True)
class WorldlineEnsemble:
    source: int
    target: int
    chains: list[Chain]
    amplitudes: list[complex]
    weights: list[float]
    total: complex
    truncated: bool = False
    measure: str = field(default="born")

    def __len__(self):
        return len(self.chains)

    def to_dict(self) -> dict:
        return {
            "source": self.source,
            "target": self.target,
            "chains": [list(c.indices) for c in self.chains],
            "weights": list(self.weights),
            "total": {"re": self.total.real, "im": self.total.imag},
            "truncated": self.truncated,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "WorldlineEnsemble":
        d = json.loads(text)
        chains = [Chain(tuple(c)) for c in d["chains"]]
        return cls(d["source"], d["target"], chains, [], list(d["weights"]),
                   complex(d["total"]["re"], d["total"]["im"]), bool(d["truncated"]))


def build_ensemble(L: _BitMatrix, model: AmplitudeModel, i: int, j: int,
                   cap: int = DEFAULT_CHAIN_CAP, measure: str = "born") -> WorldlineEnsemble:
    """Enumerate the chains from i to j and weight them by their amplitudes.

    ``measure="born"`` normalises |a|^2, ``measure="linear"`` normalises |a|.
    When every amplitude vanishes (hop = 0) the weights are all zero.
    """
    if measure not in ("born", "linear"):
        raise ValueError(f"unknown measure {measure!r}")
    found = enumerate_chains(L, i, j, cap)
    amps = [model.amplitude(c.n_links) for c in found]
    mags = np.abs(np.array(amps, dtype=np.complex128))
    if measure == "born":
        mags = mags**2
    norm = mags.sum()
    weights = (mags / norm).tolist() if norm > 0 else [0.0] * len(amps)
    total = complex(sum(amps, 0j))
    return WorldlineEnsemble(i, j, list(found), amps, weights, total, found.truncated, measure)
