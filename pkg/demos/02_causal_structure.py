"""From points to a partial order: causal relations, links and chains."""
from causet.causal import (
    build_causal_matrix, build_link_matrix, enumerate_chains, height, longest_chain,
    transitive_closure,
)
from causet.sprinkling import SprinkleConfig, sprinkle

sp = sprinkle(SprinkleConfig(n=300, seed=1))
C = build_causal_matrix(sp)
L = build_link_matrix(C)
n = len(sp)
print(f"{n} events: {C.count()} causal relations, {L.count()} links")
print(f"fraction of pairs related: {C.count() / (n * (n - 1) / 2):.3f}  (about 1/2 in 1+1 dimensions)")

# the links carry all the information: closing them recovers every relation
assert transitive_closure(L) == C

first, last = 0, n - 1
if C[first, last]:
    found = enumerate_chains(L, first, last, cap=5)
    print(f"longest chain {first} -> {last}: {longest_chain(L, first, last)} links")
    print(f"first of {len(found)} enumerated chains (capped): {found.chains[0].indices}")
print(f"height of the whole set: {height(L)} links")
