"""Seminorms and position expectations of sampled wave functions."""
import math

from causet.schwartz import OpenWindow, SeminormIndex, expectation, gaussian, in_preimage, seminorm, superpose

f = gaussian()
for alpha, beta in [(0, 0), (1, 0), (0, 1), (2, 2)]:
    print(f"sup |x^{alpha} D^{beta} f| = {seminorm(f, SeminormIndex(alpha, beta)):.10f}")
print(f"exact value for (1, 0): {1 / math.sqrt(2 * math.e):.10f}")

moved = gaussian(center=2.0)
print(f"expectation of the packet centred at 2: {expectation(moved):.12f}")
print(f"inside the window (1, 3)? {in_preimage(moved, OpenWindow(1.0, 3.0))}")

# expectations do not add: interference shifts the weight between the bumps
pair = superpose([gaussian(-1.0), gaussian(3.0)], [1.0, 2.0])
print(f"superposition expectation {expectation(pair):.6f}, naive average {(-1 + 2 * 3) / 3:.6f}")
