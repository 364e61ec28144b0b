"""Time dilation and length contraction from light flashes alone.

A resting observer sends a flash at time T to a receding observer who
reflects it. Only straight lines and their intersections are used; the
closed forms appear at the end for comparison.
"""
import math

from causet.kcalculus import contracted_length, measure_moving_ruler, simulate_flash, sr_sweep, sweep_to_csv

ex = simulate_flash(T=1.0, v=0.6)
print(f"v=0.6: flash returns at t={ex.returned.t:.6f}, so k = {ex.k:.6f}")
print(f"radar time t1={ex.t1:.6f}, moving clock t2={ex.t2:.6f}, ratio {ex.t1 / ex.t2:.6f}")
print(f"closed form gamma = {1 / math.sqrt(1 - 0.36):.6f}")

ruler = measure_moving_ruler(1.0, 0.6)
print(f"a unit ruler moving at 0.6 measures {ruler.L:.12f}; closed form {contracted_length(1.0, 0.6).L}")

print()
print(sweep_to_csv(sr_sweep([0.0, 0.2, 0.4, 0.6, 0.8, 0.95])), end="")
