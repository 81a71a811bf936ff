"""Closed-system evolution, ``i hbar d(rho)/dt = [H, rho]``."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional, Union

import numpy as np

from .errors import ValidationError
from .matrix_core import dagger, unitary_from_generator
from .observables import Observable, as_observable
from .states import DensityOperator, as_density

Generator = Union[Observable, np.ndarray, Callable[[float], object]]


@dataclass(frozen=True)
class EvolutionSpec:
    """Time grid for stepped evolution (``hbar = 1`` unless overridden)."""

    t_start: float
    t_end: float
    step: float
    hbar: float = 1.0
    hamiltonian: Optional[Generator] = None

    def __post_init__(self):
        if not self.step > 0:
            raise ValidationError("step must be positive")
        if self.t_end < self.t_start:
            raise ValidationError("t_end must not precede t_start")
        if self.hbar == 0:
            raise ValidationError("hbar must be nonzero")

    def times(self) -> np.ndarray:
        span = self.t_end - self.t_start
        n = max(0, math.ceil(span / self.step - 1e-9))
        ts = self.t_start + self.step * np.arange(n + 1, dtype=float)
        if n:
            ts[-1] = self.t_end
        return ts


class Trajectory(NamedTuple):
    times: np.ndarray
    states: list


def evolve_exact(rho0, h, t: float, hbar: float = 1.0) -> DensityOperator:
    """``U rho0 U^dagger`` with ``U = exp(-i H t / hbar)`` for constant ``H``."""
    rho0 = as_density(rho0)
    h = as_observable(h)
    if h.dim != rho0.dim:
        raise ValidationError("Hamiltonian and state dimensions differ")
    u = unitary_from_generator(h.matrix, t, hbar)
    return DensityOperator(u @ rho0.matrix @ dagger(u))


def _hamiltonian_at(h_of_t, t: float) -> np.ndarray:
    h = h_of_t(t) if callable(h_of_t) else h_of_t
    return as_observable(h).matrix


def evolve_stepped(rho0, h_of_t: Optional[Generator], spec: EvolutionSpec) -> Trajectory:
    """Classical fourth-order Runge-Kutta on ``d(rho)/dt = -(i/hbar)[H(t), rho]``.

    After every step the state is re-Hermitised and its trace renormalised
    before it is validated as a density operator.  ``h_of_t`` may be a fixed
    operator or a callable of time; ``None`` falls back to ``spec.hamiltonian``.
    """
    rho = as_density(rho0)
    if h_of_t is None:
        h_of_t = spec.hamiltonian
    if h_of_t is None:
        raise ValidationError("no Hamiltonian given")
    c = -1j / spec.hbar

    def deriv(t, m):
        h = _hamiltonian_at(h_of_t, t)
        if h.shape != m.shape:
            raise ValidationError("Hamiltonian and state dimensions differ")
        return c * (h @ m - m @ h)

    ts = spec.times()
    states = [rho]
    m = rho.matrix
    for t0, t1 in zip(ts[:-1], ts[1:]):
        dt = t1 - t0
        k1 = deriv(t0, m)
        k2 = deriv(t0 + dt / 2, m + dt / 2 * k1)
        k3 = deriv(t0 + dt / 2, m + dt / 2 * k2)
        k4 = deriv(t1, m + dt * k3)
        m = m + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        m = 0.5 * (m + dagger(m))
        m = m / np.trace(m).real
        st = DensityOperator(m)
        states.append(st)
        m = st.matrix
    return Trajectory(ts, states)
