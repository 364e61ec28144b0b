"""A discrete sum over world lines between two events.

Every chain of links from i to j is a candidate path. With hop amplitude z a
chain of m links contributes z**m, and the total is the (i, j) entry of
(I - zL)^-1. Setting z = 1 simply counts the chains.
"""
from causet.causal import build_causal_matrix, build_link_matrix
from causet.sprinkling import SprinkleConfig, sprinkle
from causet.worldlines import (
    AmplitudeModel, build_ensemble, path_count_matrix, path_counts_by_length, total_amplitude,
)

sp = sprinkle(SprinkleConfig(n=40, seed=2))
L = build_link_matrix(build_causal_matrix(sp))
i, j = 0, 39

count = path_count_matrix(L)[i, j]
print(f"{count} chains from {i} to {j}; counts by number of links:")
print({m: c for m, c in enumerate(path_counts_by_length(L, i, j)) if c})

for z in (1.0, 0.5, 0.3 + 0.4j):
    print(f"hop {z}: total amplitude {total_amplitude(L, AmplitudeModel(z), i, j):.6g}")

ens = build_ensemble(L, AmplitudeModel(0.3 + 0.4j), i, j)
top = sorted(zip(ens.weights, ens.chains), key=lambda p: -p[0])[:3]
for w, chain in top:
    print(f"weight {w:.4f}  chain {chain.indices}")
