import random

import numpy as np
import pytest

from causet.causal import (
    CausalMatrix, IntegrityError, LinkMatrix, build_causal_matrix, build_link_matrix,
    compare_under_boost, enumerate_chains, height, longest_chain, pack_rows,
    transitive_closure, unpack_rows,
)
from causet.sprinkling import Sprinkle, SprinkleConfig, sprinkle

from oracles import (
    diamond_poset, dfs_paths, pairwise_relations, random_poset, reduction_by_definition,
    three_chain,
)


def sprinkle_of(points):
    pts = np.array(points, dtype=float)
    return Sprinkle(pts[:, 0], pts[:, 1])


def ones_at(n, pairs):
    m = np.zeros((n, n), dtype=bool)
    for i, j in pairs:
        m[i, j] = True
    return m


@pytest.mark.parametrize("n", [0, 1, 63, 64, 65, 130])
def test_pack_round_trip(n):
    rng = np.random.default_rng(n)
    dense = rng.random((n, n)) < 0.3
    assert np.array_equal(unpack_rows(pack_rows(dense), n), dense)


def test_three_chain_matrices():
    C = build_causal_matrix(sprinkle_of(three_chain()))
    assert C.to_dense().astype(int).tolist() == [[0, 1, 1], [0, 0, 1], [0, 0, 0]]
    L = build_link_matrix(C)
    assert L.to_dense().astype(int).tolist() == [[0, 1, 0], [0, 0, 1], [0, 0, 0]]
    assert transitive_closure(L) == C


def test_spacelike_pair_unrelated():
    C = build_causal_matrix(sprinkle_of([(0, 0), (0, 1)]))
    assert C.count() == 0
    assert build_link_matrix(C).count() == 0


def test_diamond_poset():
    C = build_causal_matrix(sprinkle_of(diamond_poset()))
    # 1-based (1,2),(1,3),(1,4),(2,4),(3,4)
    assert np.array_equal(C.to_dense(), ones_at(4, [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]))
    L = build_link_matrix(C)
    assert np.array_equal(L.to_dense(), ones_at(4, [(0, 1), (0, 2), (1, 3), (2, 3)]))
    assert longest_chain(L, 0, 3) == 2
    assert [c.indices for c in enumerate_chains(L, 0, 3)] == [(0, 1, 3), (0, 2, 3)]


def test_empty_relation_reduction_is_itself():
    C = CausalMatrix.from_dense(np.zeros((5, 5), dtype=bool))
    assert build_link_matrix(C).to_dense().sum() == 0
    assert transitive_closure(LinkMatrix.from_dense(np.zeros((5, 5), bool))) == C


def test_link_matrix_rejects_non_transitive():
    C = CausalMatrix.from_dense(ones_at(3, [(0, 1), (1, 2)]))
    with pytest.raises(IntegrityError, match="transitive"):
        build_link_matrix(C)


def test_link_matrix_rejects_lower_entries():
    C = CausalMatrix.from_dense(ones_at(3, [(1, 0)]))
    with pytest.raises(IntegrityError):
        build_link_matrix(C)


def test_sprinkled_relations_match_bruteforce():
    sp = sprinkle(SprinkleConfig(n=120, seed=17))
    C = build_causal_matrix(sp)
    rel = pairwise_relations(sp.t.tolist(), sp.x.tolist())
    assert C.to_dense().tolist() == rel
    L = build_link_matrix(C)
    assert L.to_dense().tolist() == reduction_by_definition(rel)


@pytest.mark.parametrize("seed", range(5))
def test_order_axioms_and_duality(seed):
    sp = sprinkle(SprinkleConfig(n=100, seed=seed))
    C = build_causal_matrix(sp)
    d = C.to_dense()
    assert not np.any(np.diag(d))
    assert not np.any(d & d.T)
    two = (d.astype(int) @ d.astype(int)) > 0
    assert not np.any(two & ~d)
    L = build_link_matrix(C)
    assert not np.any(L.to_dense() & ~d)
    assert transitive_closure(L) == C
    assert build_link_matrix(transitive_closure(L)) == L


def test_closure_and_reduction_on_random_posets():
    rng = random.Random(4)
    for _ in range(30):
        rel = random_poset(12, 0.3, rng)
        C = CausalMatrix.from_dense(np.array(rel))
        L = build_link_matrix(C)
        assert L.to_dense().tolist() == reduction_by_definition(rel)
        assert transitive_closure(L) == C


def test_longest_chain():
    L = build_link_matrix(build_causal_matrix(sprinkle_of(three_chain())))
    assert longest_chain(L, 0, 2) == 2
    spacelike = build_link_matrix(build_causal_matrix(sprinkle_of([(0, 0), (0, 1)])))
    assert longest_chain(spacelike, 0, 1) == 0
    with pytest.raises(ValueError):
        longest_chain(L, 2, 0)


def test_longest_chain_bruteforce_and_positive_on_relations():
    sp = sprinkle(SprinkleConfig(n=40, seed=8))
    C = build_causal_matrix(sp)
    L = build_link_matrix(C)
    adj = L.to_dense().tolist()
    for i in range(40):
        for j in range(i + 1, 40):
            paths = dfs_paths(adj, i, j)
            expected = max((len(p) - 1 for p in paths), default=0)
            assert longest_chain(L, i, j) == expected
            if C[i, j]:
                assert expected >= 1


def test_enumerate_three_chain():
    L = build_link_matrix(build_causal_matrix(sprinkle_of(three_chain())))
    found = enumerate_chains(L, 0, 2)
    assert [c.indices for c in found] == [(0, 1, 2)]
    assert not found.truncated


def test_enumerate_matches_dfs_oracle():
    rng = random.Random(10)
    for _ in range(40):
        rel = random_poset(10, 0.35, rng)
        L = build_link_matrix(CausalMatrix.from_dense(np.array(rel)))
        adj = L.to_dense().tolist()
        for i in range(10):
            for j in range(i + 1, 10):
                expected = sorted(dfs_paths(adj, i, j))
                assert [list(c.indices) for c in enumerate_chains(L, i, j)] == expected


def test_enumeration_cap_flags_truncation():
    sp = sprinkle(SprinkleConfig(n=40, seed=2))
    L = build_link_matrix(build_causal_matrix(sp))
    full = enumerate_chains(L, 0, 39)
    assert len(full) == 182 and not full.truncated
    assert not enumerate_chains(L, 0, 39, cap=182).truncated
    part = enumerate_chains(L, 0, 39, cap=10)
    assert part.truncated and len(part) == 10
    assert part.chains == full.chains[:10]


def test_unreachable_target_gives_empty_enumeration():
    L = build_link_matrix(build_causal_matrix(sprinkle_of([(0, 0), (0, 1)])))
    found = enumerate_chains(L, 0, 1)
    assert len(found) == 0 and not found.truncated


def test_height():
    assert height(build_link_matrix(build_causal_matrix(sprinkle_of(three_chain())))) == 2
    assert height(build_link_matrix(build_causal_matrix(sprinkle_of(diamond_poset())))) == 2


@pytest.mark.parametrize("beta", [0.0, 0.6, -0.6, 0.99, -0.99])
def test_boost_invariance(beta):
    sp = sprinkle(SprinkleConfig(n=300, seed=12))
    res = compare_under_boost(sp, beta)
    assert res.identical and res.guarded == 0


def test_guard_band_excludes_near_lightcone_pairs():
    pts = np.array([(0.0, 0.0), (1.0, 1.0 + 1e-13)])
    res = compare_under_boost(Sprinkle(pts[:, 0], pts[:, 1]), 0.5)
    assert res.guarded == 2 and res.identical


def test_matrix_serialisation_round_trip():
    sp = sprinkle(SprinkleConfig(n=70, seed=6))
    C = build_causal_matrix(sp)
    L = build_link_matrix(C)
    for M in (C, L):
        assert type(M).from_csv(M.to_csv()) == M
        assert type(M).from_json(M.to_json()) == M


def test_matrix_json_is_zero_based_edge_list():
    C = build_causal_matrix(sprinkle_of(three_chain()))
    assert C.to_json() == '{"n": 3, "edges": [[0, 1], [0, 2], [1, 2]]}'
