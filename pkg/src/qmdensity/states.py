"""Density operators: the only state representation used by the engine."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .matrix_core import (
    as_square,
    check_hermitian,
    dagger,
    eig_hermitian,
    frobenius,
    matrix_from_json,
    matrix_to_json,
)
from .tolerances import TAU_PSD, TAU_PURITY, TAU_TRACE


class DensityOperator:
    """Hermitian, positive semidefinite, unit-trace operator.

    Construction validates the matrix and repairs only what floating point
    can break: the matrix is symmetrised, eigenvalues in ``[-TAU_PSD, 0)``
    are clamped to zero and the trace is rescaled to exactly one when it is
    within ``TAU_TRACE``.  Anything worse raises :class:`ValidationError`.

    Instances are immutable; ``matrix`` is a read-only array.
    """

    __slots__ = ("_m", "_eigvals")

    def __init__(self, matrix):
        m = check_hermitian(as_square(matrix))
        tr = float(np.trace(m).real)
        if abs(tr - 1.0) > TAU_TRACE:
            raise ValidationError(f"trace is {tr!r}, expected 1")
        vals, vecs = eig_hermitian(m)
        if vals[-1] < -TAU_PSD:
            raise ValidationError(f"negative eigenvalue {vals[-1]:.3e}")
        if vals[-1] < 0:
            vals = np.clip(vals, 0.0, None)
            m = (vecs * vals) @ dagger(vecs)
            m = 0.5 * (m + dagger(m))
        m = m / np.trace(m).real
        vals = vals / vals.sum()
        m.setflags(write=False)
        vals.setflags(write=False)
        self._m = m
        self._eigvals = vals

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def eigenvalues(self) -> np.ndarray:
        """Spectrum, sorted descending."""
        return self._eigvals

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._m.copy() if copy else self._m
        return self._m.astype(dtype)

    def __repr__(self):
        return f"DensityOperator(dim={self.dim})"

    def allclose(self, other, atol: float = 1e-9) -> bool:
        return bool(np.allclose(self._m, np.asarray(other), atol=atol, rtol=0))

    def to_json(self) -> dict:
        return {"kind": "density", **matrix_to_json(self._m)}

    @classmethod
    def from_json(cls, obj: dict) -> "DensityOperator":
        kind = obj.get("kind", "density")
        if kind != "density":
            raise ValidationError(f"expected kind 'density', got {kind!r}")
        return cls(matrix_from_json(obj))


def as_density(rho) -> DensityOperator:
    return rho if isinstance(rho, DensityOperator) else DensityOperator(rho)


def from_pure_vector(v) -> DensityOperator:
    """Projector ``v v^dagger / ||v||^2``."""
    v = np.asarray(v, dtype=complex).ravel()
    norm2 = float(np.vdot(v, v).real)
    if v.size == 0 or norm2 == 0.0:
        raise ValidationError("cannot build a state from the zero vector")
    return DensityOperator(np.outer(v, v.conj()) / norm2)


def maximally_mixed(d: int) -> DensityOperator:
    if int(d) < 1:
        raise ValidationError("dimension must be at least 1")
    return DensityOperator(np.eye(int(d), dtype=complex) / int(d))


def basis_state(d: int, k: int) -> DensityOperator:
    """``|k><k|`` in dimension ``d``."""
    v = np.zeros(d, dtype=complex)
    v[k] = 1.0
    return from_pure_vector(v)


def purity_residue(rho) -> float:
    """``||rho^2 - rho||_F``."""
    m = np.asarray(rho)
    return frobenius(m @ m - m)


def is_pure(rho) -> bool:
    return purity_residue(as_density(rho)) <= TAU_PURITY
