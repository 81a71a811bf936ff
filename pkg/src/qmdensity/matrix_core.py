"""Dense complex-matrix substrate.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  Tensor products
use the A-major convention of :func:`numpy.kron`: for ``a`` of size ``dA`` and
``b`` of size ``dB``::

    kron(a, b)[i*dB + k, j*dB + l] == a[i, j] * b[k, l]

so the first factor indexes the slow axis.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .tolerances import DEGEN_REL, TAU_EIG, TAU_HERM


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a 2-D complex array (no copy when already one)."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValidationError(f"expected a 2-D matrix, got shape {arr.shape}")
    return arr


def as_square(m) -> np.ndarray:
    arr = as_matrix(m)
    if arr.shape[0] != arr.shape[1]:
        raise ValidationError(f"expected a square matrix, got shape {arr.shape}")
    return arr


def frobenius(m) -> float:
    return float(np.linalg.norm(m, "fro"))


def dagger(m: np.ndarray) -> np.ndarray:
    return m.conj().T


def hermiticity_residue(m) -> float:
    """Relative Frobenius residue ``||m - m^dagger|| / ||m||`` (0 for the zero matrix)."""
    m = as_square(m)
    norm = frobenius(m)
    if norm == 0.0:
        return 0.0
    return frobenius(m - dagger(m)) / norm


def check_hermitian(m, tol: float = TAU_HERM) -> np.ndarray:
    """Validate Hermiticity and return the symmetrised matrix ``(m + m^dagger)/2``."""
    m = as_square(m)
    res = hermiticity_residue(m)
    if res > tol:
        raise ValidationError(f"matrix is not Hermitian (relative residue {res:.3e} > {tol:.1e})")
    return 0.5 * (m + dagger(m))


def _phase_fix(vecs: np.ndarray) -> np.ndarray:
    # make the first non-negligible component of every column real positive
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        idx = int(np.argmax(np.abs(col) > 1e-12))
        c = col[idx]
        if abs(c) > 0:
            out[:, j] = col * (abs(c) / c)
    return out


def eig_hermitian(m) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns
    -------
    eigenvalues : ndarray of float, sorted descending
    eigenvectors : ndarray, orthonormal columns with ``m = V diag(l) V^dagger``

    Eigenvector phases are fixed so the first non-negligible entry of each
    column is real positive.  Within a degenerate group columns are ordered
    lexicographically on their entries, which makes outputs reproducible.
    """
    h = check_hermitian(m)
    vals, vecs = np.linalg.eigh(h)
    vals = vals[::-1].copy()
    vecs = _phase_fix(vecs[:, ::-1])

    n = len(vals)
    if n > 1:
        scale = DEGEN_REL * max(1.0, float(np.max(np.abs(vals))))
        order = []
        start = 0
        while start < n:
            stop = start + 1
            while stop < n and vals[start] - vals[stop] <= scale:
                stop += 1
            group = list(range(start, stop))
            if len(group) > 1:
                def key(j):
                    col = np.round(vecs[:, j], 12)
                    return tuple(x for z in col for x in (-z.real, -z.imag))
                group.sort(key=key)
            order.extend(group)
            start = stop
        vecs = vecs[:, order]
    return vals, vecs


def kron(a, b) -> np.ndarray:
    """Kronecker product, A-major (``a`` indexes the slow axis)."""
    return np.kron(as_matrix(a), as_matrix(b))


def unitary_from_generator(h, t: float, hbar: float = 1.0) -> np.ndarray:
    """``exp(-i h t / hbar)`` for Hermitian ``h``, built from its eigendecomposition."""
    if hbar == 0:
        raise ValidationError("hbar must be nonzero")
    vals, vecs = eig_hermitian(h)
    phases = np.exp(-1j * vals * (t / hbar))
    u = (vecs * phases) @ dagger(vecs)
    d = u.shape[0]
    if frobenius(dagger(u) @ u - np.eye(d)) > TAU_EIG * max(1.0, np.sqrt(d)):
        raise ValidationError("generated operator failed the unitarity check")
    return u


def matrix_to_json(m) -> dict:
    """Encode as ``{"rows", "cols", "data": [[re, im], ...]}`` in row-major order."""
    m = as_matrix(m)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in m.ravel()],
    }


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        rows, cols, data = int(obj["rows"]), int(obj["cols"]), obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed matrix encoding: {exc}") from exc
    if rows < 0 or cols < 0 or len(data) != rows * cols:
        raise ValidationError(
            f"matrix encoding has {len(data)} entries, expected {rows}x{cols}"
        )
    try:
        flat = np.array([complex(float(re), float(im)) for re, im in data], dtype=complex)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"matrix entries must be [re, im] pairs: {exc}") from exc
    return flat.reshape(rows, cols)
