"""Numerical tolerances shared by the engine.

These are engine contracts, not user settings.  Report thresholds in the
command line front end may be overridden, these may not.
"""

TAU_HERM = 1e-10      # relative Frobenius Hermiticity residue
TAU_EIG = 1e-9        # eigen-reconstruction / unitarity
TAU_PSD = 1e-10       # most negative eigenvalue still accepted (then clamped)
TAU_TRACE = 1e-10     # trace deviation still accepted (then renormalised)
TAU_PURITY = 1e-9     # ||rho^2 - rho||_F for purity and filter idempotence
TAU_PROB = 1e-12      # zero-probability conditioning threshold
TAU_FACT = 1e-8       # factorizability residue
TAU_DYN = 1e-6        # integrator vs exact evolution
TAU_BELL = 1e-12      # slack on the Bell inequality
TAU_INFO = 1e-9       # information content checks
EIG_ZERO = 1e-14      # eigenvalues below this are exact zeros inside ln
DEGEN_REL = 1e-8      # eigenvalue grouping: |l_i - l_j| <= DEGEN_REL * max(1, |l_max|)
DIRECTION_NORM = 1e-12
