"""Bipartite composition and reduction.

Index convention is A-major: basis state ``|i>_A |k>_B`` has flat index
``i * dim_b + k``.  For two qubits the order is ``|00>, |01>, |10>, |11>``,
so ``rho[1, 2]`` is ``<01|rho|10>``.  Reshaping a density matrix to
``(dim_a, dim_b, dim_a, dim_b)`` gives ``rho4[i, k, j, l] = <ik|rho|jl>``,
and the partial traces are the contractions over the B pair ``(k, l)`` or
the A pair ``(i, j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError, ZeroProbabilityError
from .matrix_core import frobenius, kron
from .observables import Observable, as_filter, as_observable
from .states import DensityOperator, as_density
from .tolerances import TAU_FACT, TAU_PROB

SIDES = ("A", "B")


@dataclass(frozen=True)
class SubsystemLayout:
    dim_a: int
    dim_b: int

    def __post_init__(self):
        if int(self.dim_a) < 1 or int(self.dim_b) < 1:
            raise ValidationError("factor dimensions must be positive")

    @property
    def total(self) -> int:
        return self.dim_a * self.dim_b

    def dim(self, side: str) -> int:
        return self.dim_a if _side(side) == "A" else self.dim_b

    def to_json(self) -> dict:
        return {"dim_a": self.dim_a, "dim_b": self.dim_b}

    @classmethod
    def from_json(cls, obj: dict) -> "SubsystemLayout":
        try:
            return cls(int(obj["dim_a"]), int(obj["dim_b"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed layout: {exc}") from exc


QUBITS = SubsystemLayout(2, 2)


def _side(side: str) -> str:
    s = str(side).upper()
    if s not in SIDES:
        raise ValidationError(f"side must be 'A' or 'B', got {side!r}")
    return s


def _other(side: str) -> str:
    return "B" if _side(side) == "A" else "A"


def _check_layout(n: int, layout: SubsystemLayout) -> None:
    if layout.total != n:
        raise ValidationError(
            f"layout {layout.dim_a}x{layout.dim_b} inconsistent with dimension {n}"
        )


def compose(rho_a, rho_b) -> DensityOperator:
    """Product state ``rho_a (x) rho_b``."""
    return DensityOperator(kron(as_density(rho_a).matrix, as_density(rho_b).matrix))


def lift_observable(g, layout: SubsystemLayout, side: str = "A") -> Observable:
    """Embed a one-sided observable: ``G (x) I`` for A, ``I (x) G`` for B."""
    g = as_observable(g)
    side = _side(side)
    if g.dim != layout.dim(side):
        raise ValidationError(f"observable has dimension {g.dim}, side {side} has {layout.dim(side)}")
    if side == "A":
        m = kron(g.matrix, np.eye(layout.dim_b))
    else:
        m = kron(np.eye(layout.dim_a), g.matrix)
    return type(g)(m)


def _ptrace_matrix(m: np.ndarray, layout: SubsystemLayout, keep: str) -> np.ndarray:
    _check_layout(m.shape[0], layout)
    m4 = m.reshape(layout.dim_a, layout.dim_b, layout.dim_a, layout.dim_b)
    if keep == "A":
        return np.einsum("ikjk->ij", m4)
    return np.einsum("ikil->kl", m4)


def partial_trace(rho, layout: SubsystemLayout, keep: str = "A") -> DensityOperator:
    """Reduced state of the ``keep`` factor."""
    rho = as_density(rho)
    return DensityOperator(_ptrace_matrix(rho.matrix, layout, _side(keep)))


def marginals(rho, layout: SubsystemLayout) -> tuple[DensityOperator, DensityOperator]:
    return partial_trace(rho, layout, "A"), partial_trace(rho, layout, "B")


def remote_conditional_state(rho, layout: SubsystemLayout, f, result: int,
                             side: str = "A") -> DensityOperator:
    """State of the far factor after an ideal measurement of ``f`` on ``side``.

    With ``F = F_A (x) I`` the far state is ``Tr_A(F rho F) / Tr(rho_A F_A)``
    for result 1 and the same with ``I - F`` for result 0.  ``side='B'`` swaps
    the roles and returns the conditioned A state.
    """
    rho = as_density(rho)
    side = _side(side)
    _check_layout(rho.dim, layout)
    if result not in (0, 1):
        raise ValidationError("filter result must be 0 or 1")
    fs = as_filter(f)
    big = lift_observable(fs if result == 1 else fs.complement(), layout, side).matrix
    proj = big @ rho.matrix @ big
    prob = float(np.trace(proj).real)
    if prob <= TAU_PROB:
        raise ZeroProbabilityError(
            f"result {result} on side {side} has probability {prob:.3e}"
        )
    return DensityOperator(_ptrace_matrix(proj, layout, _other(side)) / prob)


def no_signaling_check(rho, layout: SubsystemLayout, f, side: str = "A") -> float:
    """``|| Tr_A[F rho F + (I-F) rho (I-F)] - rho_B ||_F`` for a filter on ``side``."""
    rho = as_density(rho)
    side = _side(side)
    _check_layout(rho.dim, layout)
    fs = as_filter(f)
    big = lift_observable(fs, layout, side).matrix
    q = np.eye(layout.total) - big
    after = big @ rho.matrix @ big + q @ rho.matrix @ q
    far = _other(side)
    return frobenius(_ptrace_matrix(after, layout, far) - _ptrace_matrix(rho.matrix, layout, far))


def factorization_residue(rho, layout: SubsystemLayout) -> float:
    """``|| rho - rho_A (x) rho_B ||_F``."""
    rho = as_density(rho)
    ra, rb = marginals(rho, layout)
    return frobenius(rho.matrix - kron(ra.matrix, rb.matrix))


def is_factorizable(rho, layout: SubsystemLayout, tol: float = TAU_FACT) -> tuple[bool, float]:
    dev = factorization_residue(rho, layout)
    return dev <= tol, dev
