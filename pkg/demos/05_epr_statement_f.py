"""Why spin B cannot secretly be in some pure state of its own.

Measuring S_A along z or along x leaves B in a pure eigenstate of that
component.  If B were already in one pure state that measurement on A could
not alter, it would have to be an eigenstate of both components at once,
which their commutator forbids.  Meanwhile, ignoring A's result leaves B at I/2.
"""
# %%
import numpy as np

from qmdensity import statement_f_falsification

rep = statement_f_falsification()
for axis in ("z", "x"):
    for alpha, st in rep.conditioned[axis].items():
        print(f"A along {axis} gave {alpha:+d}: B =\n{np.round(np.real(st.matrix), 3)}")

# %%
print("commutator norms:", {k: round(v, 6) for k, v in rep.commutators.items()})
print("disregarded-result deviation of rho_B:", rep.disregarded_deviation)
print("facts:", rep.all_pure, rep.distinct, rep.unchanged_when_disregarded)
