"""Observables, filters and spin components.

Pauli convention: ``sigma_z = diag(1, -1)``; basis index 0 is spin +1/2.
Spin operators are in units of hbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

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
from .states import as_density
from .tolerances import DEGEN_REL, DIRECTION_NORM, TAU_EIG, TAU_PURITY

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
for _p in (SIGMA_X, SIGMA_Y, SIGMA_Z):
    _p.setflags(write=False)


class Observable:
    """Self-adjoint operator.  Immutable."""

    __slots__ = ("_m",)
    kind = "observable"

    def __init__(self, matrix):
        m = check_hermitian(as_square(matrix))
        m.setflags(write=False)
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @property
    def dim(self) -> int:
        return self._m.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self._m.copy() if copy else self._m
        return self._m.astype(dtype)

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim})"

    def to_json(self) -> dict:
        return {"kind": self.kind, **matrix_to_json(self._m)}

    @classmethod
    def from_json(cls, obj: dict):
        kind = obj.get("kind", cls.kind)
        if kind not in ("observable", "filter"):
            raise ValidationError(f"expected an observable or filter, got kind {kind!r}")
        m = matrix_from_json(obj)
        return Filter(m) if kind == "filter" else cls(m)


class Filter(Observable):
    """Two-valued observable (values 0 and 1): an orthogonal projector."""

    __slots__ = ()
    kind = "filter"

    def __init__(self, matrix):
        super().__init__(matrix)
        m = self._m
        if frobenius(m @ m - m) > TAU_PURITY:
            raise ValidationError("filter operator is not idempotent")

    def complement(self) -> "Filter":
        return Filter(np.eye(self.dim) - self._m)


def as_observable(g) -> Observable:
    return g if isinstance(g, Observable) else Observable(g)


def as_filter(f) -> Filter:
    return f if isinstance(f, Filter) else Filter(np.asarray(f))


def projector(v) -> Filter:
    """Filter onto the span of vector ``v``."""
    v = np.asarray(v, dtype=complex).ravel()
    n2 = float(np.vdot(v, v).real)
    if n2 == 0:
        raise ValidationError("cannot project onto the zero vector")
    return Filter(np.outer(v, v.conj()) / n2)


@dataclass(frozen=True)
class Direction:
    """Unit 3-vector selecting a spin component."""

    nx: float
    ny: float
    nz: float

    def __post_init__(self):
        n = math.sqrt(self.nx**2 + self.ny**2 + self.nz**2)
        if abs(n - 1.0) > DIRECTION_NORM:
            raise ValidationError(f"direction must be a unit vector (norm {n!r})")

    @classmethod
    def from_vector(cls, v, normalize: bool = False) -> "Direction":
        v = np.asarray(v, dtype=float).ravel()
        if v.shape != (3,):
            raise ValidationError("direction needs three components")
        if normalize:
            n = float(np.linalg.norm(v))
            if n == 0:
                raise ValidationError("cannot normalise the zero vector")
            v = v / n
        return cls(float(v[0]), float(v[1]), float(v[2]))

    @classmethod
    def spherical(cls, theta: float, phi: float = 0.0) -> "Direction":
        """Polar angle ``theta`` from +z, azimuth ``phi`` (radians)."""
        st = math.sin(theta)
        return cls.from_vector([st * math.cos(phi), st * math.sin(phi), math.cos(theta)],
                               normalize=True)

    @classmethod
    def in_plane(cls, degrees: float) -> "Direction":
        """Direction in the x-z plane at ``degrees`` from +z."""
        return cls.spherical(math.radians(degrees), 0.0)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.nx, self.ny, self.nz])

    def dot(self, other: "Direction") -> float:
        return self.nx * other.nx + self.ny * other.ny + self.nz * other.nz


X_HAT = Direction(1.0, 0.0, 0.0)
Y_HAT = Direction(0.0, 1.0, 0.0)
Z_HAT = Direction(0.0, 0.0, 1.0)


def expectation(rho, g) -> float:
    """``Tr(rho G)``; the imaginary part must vanish to within TAU_EIG."""
    rho = as_density(rho)
    g = as_observable(g)
    if rho.dim != g.dim:
        raise ValidationError(f"dimension mismatch: state {rho.dim}, observable {g.dim}")
    val = np.einsum("ij,ji->", rho.matrix, g.matrix)
    scale = max(1.0, frobenius(g.matrix))
    if abs(val.imag) > TAU_EIG * scale:
        raise ValidationError(f"expectation has imaginary residue {val.imag:.3e}")
    return float(val.real)


def spectral_measure(g) -> list[tuple[float, Filter]]:
    """Eigenvalues of ``g`` with the filters onto their eigenspaces.

    Degenerate eigenvalues (within ``DEGEN_REL * max(1, |l_max|)``) share a
    single filter.  Entries are in descending eigenvalue order.
    """
    g = as_observable(g)
    vals, vecs = eig_hermitian(g.matrix)
    tol = DEGEN_REL * max(1.0, float(np.max(np.abs(vals))))
    out = []
    start, n = 0, len(vals)
    while start < n:
        stop = start + 1
        while stop < n and vals[start] - vals[stop] <= tol:
            stop += 1
        v = vecs[:, start:stop]
        out.append((float(np.mean(vals[start:stop])), Filter(v @ dagger(v))))
        start = stop
    return out


def apply_function(g, f: Callable[[float], float]) -> Observable:
    """Operator ``f(G)`` obtained by applying ``f`` on the spectrum of ``G``."""
    g = as_observable(g)
    vals, vecs = eig_hermitian(g.matrix)
    fvals = []
    for lam in vals:
        try:
            with np.errstate(all="raise"):
                y = float(f(float(lam)))
        except (ValueError, ZeroDivisionError, OverflowError, FloatingPointError) as exc:
            raise ValidationError(f"function undefined at eigenvalue {lam!r}: {exc}") from exc
        if not math.isfinite(y):
            raise ValidationError(f"function undefined at eigenvalue {lam!r} (got {y!r})")
        fvals.append(y)
    return Observable((vecs * np.array(fvals)) @ dagger(vecs))


def spin_component(n: Direction) -> Observable:
    """``S . n = (n_x sigma_x + n_y sigma_y + n_z sigma_z) / 2``."""
    if not isinstance(n, Direction):
        n = Direction.from_vector(n)
    return Observable(0.5 * (n.nx * SIGMA_X + n.ny * SIGMA_Y + n.nz * SIGMA_Z))


def spin_eigenprojector(n: Direction, sign: int) -> Filter:
    """Filter onto ``|S.n = sign/2>``."""
    if sign not in (1, -1):
        raise ValidationError("sign must be +1 or -1")
    s = spin_component(n).matrix
    return Filter(0.5 * np.eye(2) + sign * s)
