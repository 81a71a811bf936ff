"""Ideal (minimal-disturbance) measurement channels and outcome sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError, ZeroProbabilityError
from .observables import as_filter, as_observable, spectral_measure
from .rng import trial_uniforms
from .states import DensityOperator, as_density
from .tolerances import TAU_PROB


@dataclass(frozen=True)
class MeasurementOutcome:
    """One measurement record.

    ``result`` is 1/0 for a filter, or the index into the spectral measure
    (descending eigenvalues) for an observable; ``value`` is the numeric
    reading (1.0/0.0 for a filter, the eigenvalue for an observable).
    """

    result: int
    probability: float
    post_state: DensityOperator
    value: float


def _check_dims(rho: DensityOperator, f) -> None:
    if rho.dim != f.dim:
        raise ValidationError(f"dimension mismatch: state {rho.dim}, operator {f.dim}")


def branch_probability(rho, f) -> float:
    """``Tr(F rho)`` clipped to [0, 1]."""
    rho, f = as_density(rho), as_filter(f)
    _check_dims(rho, f)
    p = float(np.einsum("ij,ji->", f.matrix, rho.matrix).real)
    return min(1.0, max(0.0, p))


def _project(rho: DensityOperator, p: np.ndarray) -> np.ndarray:
    return p @ rho.matrix @ p


def ideal_measure_conditioned(rho, f, result: int) -> MeasurementOutcome:
    """State after an ideal measurement of ``f`` that gave ``result``.

    Result 1 gives ``F rho F / Tr(F rho)``; result 0 the same with ``I - F``.
    """
    rho, f = as_density(rho), as_filter(f)
    _check_dims(rho, f)
    if result not in (0, 1):
        raise ValidationError("filter result must be 0 or 1")
    p_op = f.matrix if result == 1 else np.eye(f.dim) - f.matrix
    prob = float(np.einsum("ij,ji->", p_op, rho.matrix).real)
    if prob <= TAU_PROB:
        raise ZeroProbabilityError(
            f"result {result} has probability {prob:.3e}; conditional state undefined"
        )
    post = DensityOperator(_project(rho, p_op) / prob)
    return MeasurementOutcome(result, min(1.0, prob), post, float(result))


def ideal_measure_disregarded(rho, f) -> DensityOperator:
    """``F rho F + (I-F) rho (I-F)``: the measurement happened, result unknown."""
    rho, f = as_density(rho), as_filter(f)
    _check_dims(rho, f)
    q = np.eye(f.dim) - f.matrix
    return DensityOperator(_project(rho, f.matrix) + _project(rho, q))


def sample_filter(rho, f, rng_seed: int, trial: int = 0, stream: int = 0) -> MeasurementOutcome:
    """Draw the result of measuring ``f`` with probability ``Tr(F rho)`` for result 1.

    The draw is fixed by ``(rng_seed, stream, trial)``.
    """
    rho, f = as_density(rho), as_filter(f)
    p1 = branch_probability(rho, f)
    u = trial_uniforms(rng_seed, trial, 1, stream)[0, 0]
    result = 1 if u < p1 else 0
    return ideal_measure_conditioned(rho, f, result)


def sample_filter_counts(rho, f, n: int, rng_seed: int, stream: int = 0, start: int = 0) -> int:
    """Number of 1-results in trials ``start .. start+n-1``.

    Uses the same per-trial draws as :func:`sample_filter`.
    """
    p1 = branch_probability(rho, f)
    u = trial_uniforms(rng_seed, start, n, stream)[:, 0]
    return int(np.count_nonzero(u < p1))


def _observable_probs(rho, g):
    rho, g = as_density(rho), as_observable(g)
    _check_dims(rho, g)
    measure = spectral_measure(g)
    probs = np.array([branch_probability(rho, fk) for _, fk in measure])
    probs = probs / probs.sum()
    return rho, measure, probs


def _pick(cum: np.ndarray, u):
    # u < cum[k] selects outcome k; guard the last bin against rounding
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, len(cum) - 1)


def measure_observable(rho, g, rng_seed: int, trial: int = 0, stream: int = 0) -> MeasurementOutcome:
    """Measure ``g`` through its spectral measure.

    The eigenvalue index is drawn with probabilities ``Tr(F_k rho)``; the post
    state is the ideal conditioned state for the drawn filter.
    """
    rho, measure, probs = _observable_probs(rho, g)
    u = trial_uniforms(rng_seed, trial, 1, stream)[0, 0]
    k = int(_pick(np.cumsum(probs), u))
    value, fk = measure[k]
    out = ideal_measure_conditioned(rho, fk, 1)
    return MeasurementOutcome(k, out.probability, out.post_state, value)


def sample_observable_counts(rho, g, n: int, rng_seed: int, stream: int = 0, start: int = 0):
    """Histogram of outcomes over ``n`` trials.

    Returns ``(eigenvalues, probabilities, counts)`` in spectral-measure order,
    consistent draw-for-draw with :func:`measure_observable`.
    """
    rho, measure, probs = _observable_probs(rho, g)
    u = trial_uniforms(rng_seed, start, n, stream)[:, 0]
    idx = _pick(np.cumsum(probs), u)
    counts = np.bincount(idx, minlength=len(measure))
    return np.array([v for v, _ in measure]), probs, counts
