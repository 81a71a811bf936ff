"""Information content I(rho) = Tr(rho ln rho), in nats.

It is additive over independent parts, and for a correlated whole it exceeds
the sum over its parts.
"""
# %%
import math

from qmdensity import (
    QUBITS,
    additivity_check,
    compose,
    info_content,
    maximally_mixed,
    minimality_check,
    random_state,
    singlet,
)

print("I(I/2) =", info_content(maximally_mixed(2)), "= -ln 2 =", -math.log(2))

# %% Independent parts: the whole carries exactly the sum
mm = maximally_mixed(2)
print("additivity deviation:", additivity_check(mm, random_state(3, 3, seed=1)))

# %% The singlet: maximal information about the whole, none about either half
rep = minimality_check(singlet(), QUBITS)
print(rep, "\n2 ln 2 =", 2 * math.log(2))

# %% Random bipartite states never violate the bound
worst = min(minimality_check(random_state(4, 1 + s % 6, s), QUBITS).excess for s in range(1000))
print("smallest excess over 1000 random states:", worst)
