"""Information content ``I(rho) = Tr(rho ln rho)`` (nats) and its bipartite properties."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .composite import SubsystemLayout, compose, marginals
from .errors import ValidationError
from .matrix_core import unitary_from_generator
from .rng import generator
from .states import DensityOperator, as_density
from .tolerances import EIG_ZERO


@dataclass(frozen=True)
class InfoReport:
    """Information contents of a bipartite state and its marginals, in nats."""

    i_joint: float
    i_a: float
    i_b: float
    excess: float
    units: str = "nats"

    def to_json(self) -> dict:
        return asdict(self)


def info_content(rho) -> float:
    """``sum_k l_k ln l_k`` over the spectrum, with ``0 ln 0 = 0``.

    Non-positive; zero exactly for pure states, ``-ln d`` for ``I/d``.
    """
    lam = as_density(rho).eigenvalues()
    lam = lam[lam > EIG_ZERO]
    return float(np.sum(lam * np.log(lam)))


def additivity_check(rho_a, rho_b) -> float:
    """``|I(rho_a (x) rho_b) - I(rho_a) - I(rho_b)|``."""
    joint = compose(rho_a, rho_b)
    return abs(info_content(joint) - info_content(rho_a) - info_content(rho_b))


def minimality_check(rho, layout: SubsystemLayout) -> InfoReport:
    """Compare the whole with its parts: ``excess = I(rho) - I(rho_A) - I(rho_B) >= 0``."""
    rho = as_density(rho)
    ra, rb = marginals(rho, layout)
    ij, ia, ib = info_content(rho), info_content(ra), info_content(rb)
    return InfoReport(ij, ia, ib, ij - ia - ib)


def random_state(d: int, ancilla: int, seed: int) -> DensityOperator:
    """Random ``d``-dimensional state: Gaussian pure state on ``d * ancilla``, ancilla traced out.

    ``ancilla = 1`` gives a pure state; ``ancilla >= d`` gives full rank with
    probability one.
    """
    d, ancilla = int(d), int(ancilla)
    if d < 1 or ancilla < 1:
        raise ValidationError("dimensions must be at least 1")
    rng = generator(seed, stream=1)
    psi = rng.standard_normal((d, ancilla)) + 1j * rng.standard_normal((d, ancilla))
    psi /= np.linalg.norm(psi)
    # psi[i, k] = <i|<k|psi>; tracing the ancilla leaves psi psi^dagger
    return DensityOperator(psi @ psi.conj().T)


def random_unitary(d: int, seed: int) -> np.ndarray:
    """Random unitary ``exp(-i H)`` from a random Hermitian generator."""
    rng = generator(seed, stream=2)
    x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return unitary_from_generator(0.5 * (x + x.conj().T), 1.0)
