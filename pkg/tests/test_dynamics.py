import math

import numpy as np
import pytest

from qmdensity.dynamics import EvolutionSpec, evolve_exact, evolve_stepped
from qmdensity.errors import ValidationError
from qmdensity.information import info_content, random_unitary
from qmdensity.observables import SIGMA_X, SIGMA_Z, Observable, expectation
from qmdensity.states import DensityOperator, from_pure_vector, is_pure

from conftest import rand_density

PLUS_X = from_pure_vector([1, 1])


def larmor_h(omega):
    return Observable(omega * SIGMA_Z / 2)


def test_exact_stationary_and_zero_h(rng):
    rho = DensityOperator(np.diag([0.3, 0.7]))
    for t in (0.1, 1.0, 17.0):
        assert np.allclose(evolve_exact(rho, SIGMA_Z, t).matrix, rho.matrix)
    r = DensityOperator(rand_density(rng, 3))
    assert np.allclose(evolve_exact(r, np.zeros((3, 3)), 5.0).matrix, r.matrix)


def test_exact_larmor():
    omega = 1.3
    for t in np.linspace(0, 2 * math.pi / omega, 25):
        st = evolve_exact(PLUS_X, larmor_h(omega), t)
        assert expectation(st, SIGMA_X) == pytest.approx(math.cos(omega * t), abs=1e-12)


def test_exact_hbar_scaling():
    a = evolve_exact(PLUS_X, larmor_h(1.0), 0.8, hbar=2.0)
    b = evolve_exact(PLUS_X, larmor_h(1.0), 0.4, hbar=1.0)
    assert np.allclose(a.matrix, b.matrix)


def test_exact_invariants(rng):
    for _ in range(20):
        d = int(rng.integers(2, 6))
        rho = DensityOperator(rand_density(rng, d))
        x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        h = x + x.conj().T
        t1, t2 = rng.uniform(0, 3, size=2)
        st = evolve_exact(rho, h, t1)
        assert np.allclose(st.eigenvalues(), rho.eigenvalues(), atol=1e-9)
        assert info_content(st) == pytest.approx(info_content(rho), abs=1e-8)
        two = evolve_exact(st, h, t2)
        assert np.linalg.norm(two.matrix - evolve_exact(rho, h, t1 + t2).matrix) <= 1e-9


def test_exact_preserves_purity(rng):
    v = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    u = random_unitary(4, 3)
    h = 1j * (u - u.conj().T)
    assert is_pure(evolve_exact(from_pure_vector(v), h, 2.5))


def test_exact_rejects_non_hermitian():
    with pytest.raises(ValidationError):
        evolve_exact(PLUS_X, np.array([[0, 1], [0, 0]]), 1.0)


def test_stepped_matches_exact_larmor():
    omega = 2.0
    spec = EvolutionSpec(0.0, 2 * math.pi / omega, 0.01 / omega)
    traj = evolve_stepped(PLUS_X, larmor_h(omega), spec)
    assert traj.times[-1] == pytest.approx(2 * math.pi / omega)
    err = max(abs(expectation(s, SIGMA_X) - math.cos(omega * t))
              for t, s in zip(traj.times, traj.states))
    assert err <= 1e-6
    final = evolve_exact(PLUS_X, larmor_h(omega), spec.t_end)
    assert np.linalg.norm(traj.states[-1].matrix - final.matrix) <= 1e-6


def test_stepped_time_dependent_against_exact_phase():
    # H(t) = f(t) S_z commutes at all times: rotation angle is the integral of f
    f = lambda t: 1.0 + 0.5 * math.sin(t)
    spec = EvolutionSpec(0.0, 3.0, 0.005)
    traj = evolve_stepped(PLUS_X, lambda t: f(t) * SIGMA_Z / 2, spec)
    phase = 3.0 + 0.5 * (1 - math.cos(3.0))
    assert expectation(traj.states[-1], SIGMA_X) == pytest.approx(math.cos(phase), abs=1e-6)


def test_stepped_zero_h_and_trace():
    rho = DensityOperator(np.diag([0.25, 0.75]))
    traj = evolve_stepped(rho, np.zeros((2, 2)), EvolutionSpec(0, 1, 0.1))
    assert len(traj.states) == 11
    for s in traj.states:
        assert np.allclose(s.matrix, rho.matrix)
    traj = evolve_stepped(PLUS_X, larmor_h(1.0), EvolutionSpec(0, 5, 0.05))
    for s in traj.states:
        assert abs(np.trace(s.matrix).real - 1) <= 1e-9


def test_spec_validation():
    with pytest.raises(ValidationError):
        EvolutionSpec(0, 1, 0)
    with pytest.raises(ValidationError):
        EvolutionSpec(1, 0, 0.1)
    with pytest.raises(ValidationError):
        evolve_stepped(PLUS_X, lambda t: np.array([[0, 1], [0, 0]]), EvolutionSpec(0, 1, 0.1))


def test_spec_hamiltonian_fallback():
    spec = EvolutionSpec(0, 1, 0.1, hamiltonian=larmor_h(1.0))
    traj = evolve_stepped(PLUS_X, None, spec)
    assert expectation(traj.states[-1], SIGMA_X) == pytest.approx(math.cos(1.0), abs=1e-6)


def test_times_partial_last_step():
    ts = EvolutionSpec(0, 1, 0.3).times()
    assert list(ts) == pytest.approx([0, 0.3, 0.6, 0.9, 1.0])
