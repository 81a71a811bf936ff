"""Two subsystems: reduced states, remote conditioning and no-signaling.

Index convention is A-major: for two qubits the basis order is
|00>, |01>, |10>, |11>, so the singlet vector is (0, 1, -1, 0)/sqrt(2).
"""
# %%
import numpy as np

from qmdensity import (
    QUBITS,
    Filter,
    compose,
    is_factorizable,
    maximally_mixed,
    no_signaling_check,
    partial_trace,
    remote_conditional_state,
    singlet,
)
from qmdensity.states import basis_state

# %% A worked 2x2 example of the index convention
ket01 = compose(basis_state(2, 0), basis_state(2, 1))
print("|0>|1> sits at flat index 1:", np.real(np.diag(ket01.matrix)))

# %% The singlet is pure, yet each half is maximally mixed
rho = singlet()
print("rho_A =\n", np.real(partial_trace(rho, QUBITS, "A").matrix))
print("factorizable?", is_factorizable(rho, QUBITS))

# %% Conditioning on a result at A prepares a pure state at B
up = Filter(np.diag([1.0, 0.0]))
print("B given A up:\n", np.real(remote_conditional_state(rho, QUBITS, up, 1).matrix))

# %% Without the result, B is untouched
print("no-signaling deviation:", no_signaling_check(rho, QUBITS, up))

# %% For a product state even the result tells nothing about B
prod = compose(maximally_mixed(2), basis_state(2, 1))
print("B given A up (product):\n", np.real(remote_conditional_state(prod, QUBITS, up, 1).matrix))
