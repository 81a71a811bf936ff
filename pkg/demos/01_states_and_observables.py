"""States, observables and expectation values.

Every state is a density operator.  A pure state is just the special case
of an idempotent one.
"""
# %%
import numpy as np

from qmdensity import (
    DensityOperator,
    Direction,
    apply_function,
    expectation,
    from_pure_vector,
    is_pure,
    maximally_mixed,
    spectral_measure,
    spin_component,
)
from qmdensity.observables import SIGMA_Z

# %% A pure state and an unpolarised mixture
up_x = from_pure_vector([1, 1])
mixed = maximally_mixed(2)
print("|+x><+x| =\n", np.round(up_x.matrix, 3))
print("pure?", is_pure(up_x), "| I/2 pure?", is_pure(mixed))

# %% Invalid matrices are refused
try:
    DensityOperator(np.diag([0.7, 0.7]))
except ValueError as exc:
    print("rejected:", exc)

# %% Expectation values Tr(rho G)
for name, n in [("x", Direction(1, 0, 0)), ("z", Direction(0, 0, 1))]:
    print(f"<S_{name}> on |+x>:", expectation(up_x, spin_component(n)))

# %% Spectral measure and functions of an observable
g = np.diag([2.0, 2.0, 5.0])
for value, f in spectral_measure(g):
    print(f"eigenvalue {value}: filter diag {np.real(np.diag(f.matrix))}")
print("sigma_z squared:\n", np.real(apply_function(SIGMA_Z, lambda x: x * x).matrix))
