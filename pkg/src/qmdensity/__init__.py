"""Density-operator quantum mechanics engine.

States are always density operators.  The package covers ideal measurement,
bipartite composition and reduction, closed-system dynamics, the spin-singlet
EPR/Bell laboratory and the information content ``Tr(rho ln rho)``.
"""

from .composite import (
    QUBITS,
    SubsystemLayout,
    compose,
    is_factorizable,
    lift_observable,
    no_signaling_check,
    partial_trace,
    remote_conditional_state,
)
from .dynamics import EvolutionSpec, evolve_exact, evolve_stepped
from .epr_bell import (
    LHVStrategy,
    bell_check,
    lhv_estimate,
    qm_correlation,
    qm_sampled_correlation,
    sign_strategy,
    singlet,
    statement_f_falsification,
    table_strategy,
)
from .errors import InvariantError, QMError, ValidationError, ZeroProbabilityError
from .information import additivity_check, info_content, minimality_check, random_state
from .matrix_core import eig_hermitian, kron, unitary_from_generator
from .measurement import (
    MeasurementOutcome,
    ideal_measure_conditioned,
    ideal_measure_disregarded,
    measure_observable,
    sample_filter,
)
from .observables import (
    Direction,
    Filter,
    Observable,
    apply_function,
    expectation,
    spectral_measure,
    spin_component,
)
from .states import DensityOperator, from_pure_vector, is_pure, maximally_mixed

__version__ = "0.1.0"
