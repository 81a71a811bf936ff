"""Closed-system evolution: spin precession in a field along z.

With H = omega S_z and a spin initially along +x, <sigma_x>(t) = cos(omega t).
"""
# %%
import math

from qmdensity import EvolutionSpec, evolve_exact, evolve_stepped, from_pure_vector, info_content
from qmdensity.observables import SIGMA_X, SIGMA_Z, Observable, expectation

omega = 1.0
h = Observable(omega * SIGMA_Z / 2)
rho0 = from_pure_vector([1, 1])

# %% Exact propagator vs fourth-order stepping with omega*dt = 0.01
spec = EvolutionSpec(0.0, 2 * math.pi / omega, 0.01 / omega)
traj = evolve_stepped(rho0, h, spec)
err = max(abs(expectation(s, SIGMA_X) - math.cos(omega * t)) for t, s in zip(traj.times, traj.states))
print(f"{len(traj.states)} steps, max |<sigma_x> - cos(wt)| = {err:.2e}")

# %% Unitary evolution keeps the spectrum, hence the information content
for t in (0.0, 1.0, 2.5):
    st = evolve_exact(rho0, h, t)
    print(f"t={t}: <sigma_x>={expectation(st, SIGMA_X):+.6f}  I={info_content(st):+.2e}")
