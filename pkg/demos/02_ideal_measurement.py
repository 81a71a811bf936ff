"""Ideal measurement of a filter, with and without reading the result."""
# %%
import numpy as np

from qmdensity import (
    Filter,
    from_pure_vector,
    ideal_measure_conditioned,
    ideal_measure_disregarded,
    info_content,
    measure_observable,
)
from qmdensity.measurement import sample_filter_counts
from qmdensity.observables import SIGMA_Z

plus_x = from_pure_vector([1, 1])
up = Filter(np.diag([1.0, 0.0]))

# %% Reading the result: the state collapses onto the filter's range
out = ideal_measure_conditioned(plus_x, up, 1)
print("P(result 1) =", out.probability)
print("post state:\n", np.real(out.post_state.matrix))

# %% Repeating the measurement confirms the result and changes nothing
again = ideal_measure_conditioned(out.post_state, up, 1)
print("repeat probability:", again.probability)

# %% Ignoring the result: coherences are erased, information can only drop
blurred = ideal_measure_disregarded(plus_x, up)
print("disregarded:\n", np.real(blurred.matrix))
print("I before / after:", info_content(plus_x), info_content(blurred))

# %% Sampling: seeded, reproducible, and addressable per trial
n = 100_000
ones = sample_filter_counts(plus_x, up, n, rng_seed=1)
print(f"frequency of 1: {ones / n:.4f} (expected 0.5 +- {3 * np.sqrt(0.25 / n):.4f})")
print("trial 42:", measure_observable(plus_x, SIGMA_Z, rng_seed=1, trial=42).value)
