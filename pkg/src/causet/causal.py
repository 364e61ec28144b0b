"""Causal and link matrices on packed bitset rows, plus chain queries.

Row ``i`` of a matrix is stored as ``ceil(n/64)`` little-endian uint64 words;
bit ``j`` of row ``i`` is set iff event ``i`` relates to event ``j``. Indices
are 0-based positions in the canonical (t, x) order of the sprinkle.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass

import numpy as np

from .geometry import LIGHTCONE_TOL, boost_array, precedes_array
from .sprinkling import Sprinkle

DEFAULT_CHAIN_CAP = 10**6


class IntegrityError(ValueError):
    """A matrix violates the order-theoretic invariant an operation relies on."""


def _n_words(n: int) -> int:
    return max(1, (n + 63) // 64)


def pack_rows(dense: np.ndarray) -> np.ndarray:
    dense = np.asarray(dense, dtype=bool)
    n_rows, n_cols = dense.shape
    packed = np.packbits(dense, axis=1, bitorder="little")
    out = np.zeros((n_rows, 8 * _n_words(n_cols)), dtype=np.uint8)
    out[:, : packed.shape[1]] = packed
    return out.view("<u8").astype(np.uint64)


def unpack_rows(bits: np.ndarray, n: int) -> np.ndarray:
    as_bytes = np.ascontiguousarray(bits.astype("<u8")).view(np.uint8)
    return np.unpackbits(as_bytes, axis=1, count=n, bitorder="little").astype(bool)


def _popcount(words: np.ndarray) -> int:
    return int(np.unpackbits(np.ascontiguousarray(words).view(np.uint8)).sum())


class _BitMatrix:
    def __init__(self, bits: np.ndarray, n: int):
        bits = np.array(bits, dtype=np.uint64)
        if bits.shape != (n, _n_words(n)):
            raise ValueError(f"expected bit array of shape {(n, _n_words(n))}, got {bits.shape}")
        bits.flags.writeable = False
        self.bits = bits
        self.n = n

    @classmethod
    def from_dense(cls, dense):
        dense = np.asarray(dense, dtype=bool)
        if dense.ndim != 2 or dense.shape[0] != dense.shape[1]:
            raise ValueError("matrix must be square")
        return cls(pack_rows(dense), dense.shape[0])

    def to_dense(self) -> np.ndarray:
        return unpack_rows(self.bits, self.n)

    def __getitem__(self, ij) -> bool:
        i, j = ij
        return bool((int(self.bits[i, j >> 6]) >> (j & 63)) & 1)

    def row(self, i: int) -> np.ndarray:
        """Indices ``j`` with bit (i, j) set, ascending."""
        return np.flatnonzero(unpack_rows(self.bits[i : i + 1], self.n)[0])

    def count(self) -> int:
        return _popcount(self.bits)

    def edges(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(self.to_dense())
        return list(zip(ii.tolist(), jj.tolist()))

    def is_strictly_upper(self) -> bool:
        return not np.tril(self.to_dense()).any()

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.bits, other.bits)

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, relations={self.count()})"

    # serialisation

    def to_csv(self) -> str:
        buf = io.StringIO()
        for r in self.to_dense().astype(np.uint8):
            buf.write(",".join("1" if v else "0" for v in r))
            buf.write("\n")
        return buf.getvalue()

    @classmethod
    def from_csv(cls, text: str):
        rows = [ln for ln in text.splitlines() if ln.strip()]
        dense = []
        for lineno, ln in enumerate(rows, start=1):
            vals = ln.split(",")
            if any(v.strip() not in ("0", "1") for v in vals):
                raise ValueError(f"line {lineno}: entries must be 0 or 1")
            dense.append([v.strip() == "1" for v in vals])
        if any(len(r) != len(rows) for r in dense):
            raise ValueError("matrix CSV must be square")
        return cls.from_dense(np.array(dense, dtype=bool).reshape(len(rows), len(rows)))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges()]})

    @classmethod
    def from_json(cls, text: str):
        d = json.loads(text)
        n = int(d["n"])
        dense = np.zeros((n, n), dtype=bool)
        for i, j in d["edges"]:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            dense[i, j] = True
        return cls.from_dense(dense)


class CausalMatrix(_BitMatrix):
    """C[i, j] = 1 iff event i causally precedes event j."""


class LinkMatrix(_BitMatrix):
    """L[i, j] = 1 iff i precedes j with no event strictly between them."""


def build_causal_matrix(sprinkle: Sprinkle, tol: float = LIGHTCONE_TOL,
                        block: int = 1024) -> CausalMatrix:
    t, x = sprinkle.t, sprinkle.x
    n = t.size
    bits = np.zeros((n, _n_words(n)), dtype=np.uint64)
    for lo in range(0, n, block):
        hi = min(n, lo + block)
        rel = precedes_array(t[lo:hi, None], x[lo:hi, None], t[None, :], x[None, :], tol)
        bits[lo:hi] = pack_rows(rel)
    return CausalMatrix(bits, n)


def _two_step(bits: np.ndarray, n: int) -> np.ndarray:
    """Row i of the result is the OR of rows k over k in row i."""
    dense = unpack_rows(bits, n)
    out = np.zeros_like(bits)
    for i in range(n):
        ks = np.flatnonzero(dense[i])
        if ks.size:
            out[i] = np.bitwise_or.reduce(bits[ks], axis=0)
    return out


def build_link_matrix(C: CausalMatrix) -> LinkMatrix:
    """Transitive reduction: keep C[i, j] unless some k has C[i, k] and C[k, j]."""
    if not C.is_strictly_upper():
        raise IntegrityError("causal matrix is not strictly upper triangular")
    via = _two_step(C.bits, C.n)
    if np.any(via & ~C.bits):
        raise IntegrityError("causal matrix is not transitive")
    return LinkMatrix(C.bits & ~via, C.n)


def transitive_closure(L: _BitMatrix) -> CausalMatrix:
    if not L.is_strictly_upper():
        raise IntegrityError("link matrix is not strictly upper triangular")
    n = L.n
    dense = L.to_dense()
    reach = np.array(L.bits, copy=True)
    # successors have larger indices, so sweep bottom-up
    for i in range(n - 1, -1, -1):
        ks = np.flatnonzero(dense[i])
        if ks.size:
            reach[i] |= np.bitwise_or.reduce(reach[ks], axis=0)
    return CausalMatrix(reach, n)


def _check_pair(n: int, i: int, j: int) -> None:
    if not (0 <= i < n and 0 <= j < n):
        raise IndexError(f"indices ({i}, {j}) out of range for n={n}")
    if i >= j:
        raise ValueError(f"need i < j, got i={i}, j={j}")


def longest_chain(L: LinkMatrix, i: int, j: int) -> int:
    """Maximum number of links on a chain from i to j (0 if none)."""
    _check_pair(L.n, i, j)
    dense = L.to_dense()
    best = np.full(L.n, -1, dtype=np.int64)
    best[i] = 0
    for k in range(i, j):
        if best[k] < 0:
            continue
        succ = np.flatnonzero(dense[k, k + 1 : j + 1]) + k + 1
        best[succ] = np.maximum(best[succ], best[k] + 1)
    return int(max(best[j], 0))


@dataclass(frozen=True)
class Chain:
    """Event indices of a chain; each consecutive pair is a link."""

    indices: tuple[int, ...]

    def __post_init__(self):
        if len(self.indices) < 1:
            raise ValueError("a chain has at least one element")
        if any(b <= a for a, b in zip(self.indices, self.indices[1:])):
            raise ValueError("chain indices must be strictly increasing")

    @property
    def n_links(self) -> int:
        return len(self.indices) - 1

    def __len__(self):
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)


@dataclass(frozen=True)
class ChainEnumeration:
    chains: list[Chain]
    truncated: bool

    def __len__(self):
        return len(self.chains)

    def __iter__(self):
        return iter(self.chains)

    def __getitem__(self, k):
        return self.chains[k]


def enumerate_chains(L: LinkMatrix, i: int, j: int, cap: int = DEFAULT_CHAIN_CAP) -> ChainEnumeration:
    """All link paths from i to j in lexicographic order, at most ``cap`` of them."""
    _check_pair(L.n, i, j)
    if cap < 0:
        raise ValueError("cap must be non-negative")
    dense = L.to_dense()
    # events from which j is reachable along links (j itself included)
    reaches = np.zeros(L.n, dtype=bool)
    reaches[j] = True
    for k in range(j - 1, i - 1, -1):
        reaches[k] = bool(np.any(dense[k, k + 1 : j + 1] & reaches[k + 1 : j + 1]))
    if not reaches[i]:
        return ChainEnumeration([], False)

    succ = {}
    for k in np.flatnonzero(reaches[i : j + 1]) + i:
        row = np.flatnonzero(dense[k, k + 1 : j + 1]) + k + 1
        succ[int(k)] = [int(s) for s in row if reaches[s]]

    chains: list[Chain] = []
    path = [i]
    stack = [iter(succ[i])]
    while stack:
        nxt = next(stack[-1], None)
        if nxt is None:
            stack.pop()
            path.pop()
            continue
        if nxt == j:
            if len(chains) >= cap:
                return ChainEnumeration(chains, True)
            chains.append(Chain(tuple(path) + (j,)))
            continue
        path.append(nxt)
        stack.append(iter(succ[nxt]))
    return ChainEnumeration(chains, False)


@dataclass(frozen=True)
class BoostComparison:
    beta: float
    n: int
    differing: int
    guarded: int

    @property
    def identical(self) -> bool:
        return self.differing == 0


def compare_under_boost(sprinkle: Sprinkle, beta: float, tol: float = LIGHTCONE_TOL) -> BoostComparison:
    """Boost every event, re-sort, rebuild C and compare under the induced permutation.

    Pairs within ``tol`` of the lightcone in either frame are excluded and
    counted in ``guarded``.
    """
    C0 = build_causal_matrix(sprinkle, tol).to_dense()
    tb, xb = boost_array(sprinkle.t, sprinkle.x, beta)
    order = np.lexsort((xb, tb))
    boosted = Sprinkle(tb, xb)
    C1 = build_causal_matrix(boosted, tol).to_dense()
    expected = C0[np.ix_(order, order)]

    def near_cone(t, x):
        s = (t[None, :] - t[:, None]) ** 2 - (x[None, :] - x[:, None]) ** 2
        return np.abs(s) <= tol

    guard = near_cone(sprinkle.t[order], sprinkle.x[order]) | near_cone(boosted.t, boosted.x)
    np.fill_diagonal(guard, False)
    diff = (C1 != expected) & ~guard
    return BoostComparison(beta, len(sprinkle), int(diff.sum()), int(guard.sum()))


def height(L: LinkMatrix) -> int:
    """Number of links on the longest chain anywhere in the set."""
    dense = L.to_dense()
    depth = np.zeros(L.n, dtype=np.int64)
    for k in range(L.n - 1, -1, -1):
        succ = np.flatnonzero(dense[k])
        if succ.size:
            depth[k] = depth[succ].max() + 1
    return int(depth.max()) if L.n else 0
