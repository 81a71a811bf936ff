import math

import numpy as np
import pytest

from qmdensity.composite import QUBITS, SubsystemLayout, compose, is_factorizable
from qmdensity.epr_bell import singlet
from qmdensity.information import (
    additivity_check,
    info_content,
    minimality_check,
    random_state,
    random_unitary,
)
from qmdensity.states import DensityOperator, from_pure_vector, is_pure, maximally_mixed

from conftest import rand_density


def test_info_content_examples(rng):
    for d in (2, 3, 5):
        v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        assert info_content(from_pure_vector(v)) == pytest.approx(0.0, abs=1e-9)
    assert info_content(maximally_mixed(2)) == pytest.approx(-math.log(2), abs=1e-12)
    oracle = 0.75 * math.log(0.75) + 0.25 * math.log(0.25)
    assert oracle == pytest.approx(-0.562335, abs=1e-6)
    assert info_content(DensityOperator(np.diag([0.75, 0.25]))) == pytest.approx(oracle, abs=1e-12)


def test_info_content_bounds(rng):
    for _ in range(100):
        d = int(rng.integers(1, 7))
        rho = DensityOperator(rand_density(rng, d, int(rng.integers(1, d + 1))))
        i = info_content(rho)
        assert -math.log(d) - 1e-9 <= i <= 1e-9
        assert (abs(i) <= 1e-9) == is_pure(rho)


def test_info_content_unitary_invariance(rng):
    for seed in range(20):
        rho = DensityOperator(rand_density(rng, 4))
        u = random_unitary(4, seed)
        rotated = DensityOperator(u @ rho.matrix @ u.conj().T)
        assert info_content(rotated) == pytest.approx(info_content(rho), abs=1e-9)


def test_additivity_examples(rng):
    mm = maximally_mixed(2)
    assert info_content(compose(mm, mm)) == pytest.approx(-2 * math.log(2), abs=1e-12)
    assert additivity_check(mm, mm) <= 1e-9
    p = from_pure_vector([1, 2j])
    assert additivity_check(p, p) <= 1e-9
    worst = 0.0
    for _ in range(200):
        da, db = rng.integers(1, 5, size=2)
        ra = DensityOperator(rand_density(rng, int(da)))
        rb = DensityOperator(rand_density(rng, int(db)))
        worst = max(worst, additivity_check(ra, rb))
    assert worst <= 1e-9


def test_minimality_examples(rng):
    rep = minimality_check(singlet(), QUBITS)
    assert rep.i_joint == pytest.approx(0.0, abs=1e-12)
    assert rep.i_a + rep.i_b == pytest.approx(-2 * math.log(2), abs=1e-12)
    assert rep.excess == pytest.approx(2 * math.log(2), abs=1e-9)
    assert rep.units == "nats"
    prod = compose(DensityOperator(rand_density(rng, 2)), DensityOperator(rand_density(rng, 3)))
    assert abs(minimality_check(prod, SubsystemLayout(2, 3)).excess) <= 1e-9


def test_minimality_sweep():
    for seed in range(1000):
        rho = random_state(4, 1 + seed % 6, seed)
        rep = minimality_check(rho, QUBITS)
        assert rep.excess >= -1e-9
        assert rep.i_joint <= 1e-9 and rep.i_a <= 1e-9 and rep.i_b <= 1e-9


def test_entangled_states_have_positive_excess():
    count = 0
    for seed in range(300):
        rho = random_state(4, 1 + seed % 3, seed)
        ok, dev = is_factorizable(rho, QUBITS)
        if not ok and dev > 0.1:
            count += 1
            assert minimality_check(rho, QUBITS).excess > 0.01
    assert count > 50


def test_random_state_contract():
    assert is_pure(random_state(3, 1, 0))
    a, b = random_state(2, 2, 17), random_state(2, 2, 17)
    assert np.array_equal(a.matrix, b.matrix)
    assert not np.array_equal(a.matrix, random_state(2, 2, 18).matrix)
    for seed in range(100):
        rho = random_state(3, 3, seed)
        DensityOperator(rho.matrix)
        assert rho.eigenvalues().min() > 1e-12  # full rank
