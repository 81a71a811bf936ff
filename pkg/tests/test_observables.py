import math

import numpy as np
import pytest

from qmdensity.composite import QUBITS, lift_observable
from qmdensity.errors import ValidationError
from qmdensity.observables import (
    SIGMA_X,
    SIGMA_Z,
    Direction,
    Filter,
    Observable,
    apply_function,
    expectation,
    spectral_measure,
    spin_component,
    spin_eigenprojector,
)
from qmdensity.states import DensityOperator, basis_state, from_pure_vector, maximally_mixed

from conftest import rand_density, rand_unit

SINGLET = from_pure_vector([0, 1, -1, 0])


def test_expectation_examples():
    assert expectation(maximally_mixed(2), SIGMA_Z) == pytest.approx(0.0, abs=1e-15)
    assert expectation(basis_state(2, 0), SIGMA_Z) == pytest.approx(1.0)
    zz = np.kron(2 * spin_component(Direction(0, 0, 1)).matrix,
                 2 * spin_component(Direction(0, 0, 1)).matrix)
    assert expectation(SINGLET, zz) == pytest.approx(-1.0, abs=1e-12)


def test_expectation_matches_explicit_sum(rng):
    for _ in range(20):
        rho = rand_density(rng, 3)
        x = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        g = x + x.conj().T
        oracle = sum(rho[i, j] * g[j, i] for i in range(3) for j in range(3)).real
        assert expectation(rho, g) == pytest.approx(oracle, abs=1e-12)


def test_expectation_dimension_mismatch():
    with pytest.raises(ValidationError):
        expectation(maximally_mixed(2), np.eye(3))


def test_spectral_measure_sigma_z():
    sm = spectral_measure(SIGMA_Z)
    assert [v for v, _ in sm] == pytest.approx([1, -1])
    assert np.allclose(sm[0][1].matrix, np.diag([1, 0]))
    assert np.allclose(sm[1][1].matrix, np.diag([0, 1]))


def test_spectral_measure_identity():
    sm = spectral_measure(np.eye(3))
    assert len(sm) == 1
    assert sm[0][0] == pytest.approx(1.0)
    assert np.allclose(sm[0][1].matrix, np.eye(3))


def test_spectral_measure_degenerate_grouping():
    sm = spectral_measure(np.diag([2.0, 2.0, 5.0]))
    assert [v for v, _ in sm] == pytest.approx([5, 2])
    assert np.allclose(sm[0][1].matrix, np.diag([0, 0, 1]))
    assert np.allclose(sm[1][1].matrix, np.diag([1, 1, 0]))


def test_spectral_measure_properties(rng):
    for _ in range(30):
        d = int(rng.integers(2, 7))
        # build with forced degeneracies
        q, _ = np.linalg.qr(rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d)))
        lam = rng.integers(-2, 3, size=d).astype(float)
        g = (q * lam) @ q.conj().T
        sm = spectral_measure(g)
        assert len(sm) == len(set(lam))
        total = sum(f.matrix for _, f in sm)
        assert np.linalg.norm(total - np.eye(d)) <= 1e-9
        assert np.linalg.norm(sum(v * f.matrix for v, f in sm) - g) <= 1e-9
        for _, f in sm:
            m = f.matrix
            assert np.linalg.norm(m @ m - m) <= 1e-9
            assert np.linalg.norm(m - m.conj().T) <= 1e-9


def test_functional_calculus_consistency(rng):
    for _ in range(20):
        rho = DensityOperator(rand_density(rng, 4))
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        g = Observable(x + x.conj().T)
        lhs = expectation(rho, apply_function(g, math.cos))
        rhs = sum(math.cos(v) * np.trace(f.matrix @ rho.matrix).real
                  for v, f in spectral_measure(g))
        assert lhs == pytest.approx(rhs, abs=1e-9)


def test_apply_function_examples():
    assert np.allclose(apply_function(SIGMA_Z, lambda x: x * x).matrix, np.eye(2))
    assert np.allclose(apply_function(SIGMA_X, lambda x: x).matrix, SIGMA_X, atol=1e-9)
    out = apply_function(np.diag([0.0, math.log(2)]), math.exp)
    assert np.allclose(out.matrix, np.diag([1, 2]))


def test_apply_function_undefined():
    with pytest.raises(ValidationError):
        apply_function(np.diag([1.0, 0.0]), math.log)
    with pytest.raises(ValidationError):
        apply_function(np.diag([1.0, -1.0]), math.sqrt)


def test_spin_component_examples():
    assert np.allclose(spin_component(Direction(0, 0, 1)).matrix, np.diag([0.5, -0.5]))
    assert np.allclose(spin_component(Direction(1, 0, 0)).matrix, 0.5 * SIGMA_X)
    with pytest.raises(ValidationError):
        spin_component(Direction(1, 1, 0))


def test_spin_component_spectrum_and_anticommutator(rng):
    for _ in range(200):
        a = Direction.from_vector(rand_unit(rng))
        b = Direction.from_vector(rand_unit(rng))
        sa, sb = spin_component(a).matrix, spin_component(b).matrix
        assert np.allclose(np.linalg.eigvalsh(sa), [-0.5, 0.5])
        anti = sa @ sb + sb @ sa
        assert np.linalg.norm(anti - 0.5 * a.dot(b) * np.eye(2)) <= 1e-9


def test_spin_eigenprojector(rng):
    n = Direction.from_vector(rand_unit(rng))
    s = spin_component(n).matrix
    for sign in (1, -1):
        p = spin_eigenprojector(n, sign).matrix
        assert np.allclose(s @ p, sign * 0.5 * p)


def test_filter_rejects_non_projector():
    with pytest.raises(ValidationError):
        Filter(np.diag([1.0, 0.5]))
    assert np.allclose(Filter(np.diag([1.0, 0.0])).complement().matrix, np.diag([0, 1]))


def test_observable_json_roundtrip():
    f = Filter(np.diag([1.0, 0.0]))
    obj = f.to_json()
    assert obj["kind"] == "filter"
    assert isinstance(Observable.from_json(obj), Filter)
    g = Observable.from_json(Observable(SIGMA_X).to_json())
    assert np.allclose(g.matrix, SIGMA_X)


def test_direction_constructors():
    d = Direction.in_plane(90)
    assert np.allclose(d.vector, [1, 0, 0], atol=1e-15)
    with pytest.raises(ValidationError):
        Direction(0, 0, 0.5)


def test_lift_then_expectation_equals_marginal(rng):
    # oracle: expectation on the reduced state, computed with a loop partial trace
    from conftest import ptrace_loops

    for _ in range(20):
        rho = rand_density(rng, 4)
        g = rng.standard_normal((2, 2))
        g = g + g.T
        big = lift_observable(g, QUBITS, "A")
        lhs = expectation(rho, big)
        rhs = np.trace(ptrace_loops(rho, 2, 2, "A") @ g).real
        assert lhs == pytest.approx(rhs, abs=1e-12)
