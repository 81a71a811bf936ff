"""Spin-singlet laboratory: correlations, remote preparation and Bell audits.

Outcomes are the values of ``2 S.n``, i.e. +1 or -1.  A local hidden variable
strategy predetermines ``A(n, i)`` for every direction and trial, and the
perfect anticorrelation of the singlet fixes ``B(n, i) = -A(n, i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .composite import QUBITS, marginals, no_signaling_check, remote_conditional_state
from .errors import InvariantError, ValidationError
from .matrix_core import frobenius, kron
from .observables import (
    X_HAT,
    Z_HAT,
    Direction,
    expectation,
    spin_component,
    spin_eigenprojector,
)
from .rng import trial_uniforms
from .states import DensityOperator, from_pure_vector, maximally_mixed, purity_residue
from .tolerances import TAU_BELL, TAU_EIG, TAU_PURITY

_SINGLET = from_pure_vector(np.array([0.0, 1.0, -1.0, 0.0]) / math.sqrt(2.0))


def singlet() -> DensityOperator:
    """Projector on ``(|+1/2,-1/2> - |-1/2,+1/2>)/sqrt(2)``."""
    return _SINGLET


def _dir(n) -> Direction:
    return n if isinstance(n, Direction) else Direction.from_vector(n)


def correlation_observable(a: Direction, b: Direction) -> np.ndarray:
    """``(2 S_A.a) (x) (2 S_B.b)``."""
    return kron(2 * spin_component(_dir(a)).matrix, 2 * spin_component(_dir(b)).matrix)


def qm_correlation(a: Direction, b: Direction) -> float:
    """Singlet expectation of ``(2 S_A.a)(2 S_B.b)``; checked against ``-a.b``."""
    a, b = _dir(a), _dir(b)
    val = expectation(_SINGLET, correlation_observable(a, b))
    if abs(val + a.dot(b)) > TAU_EIG:
        raise InvariantError(f"singlet correlation {val!r} differs from -a.b = {-a.dot(b)!r}")
    return val


@dataclass(frozen=True)
class CorrelationRecord:
    a: Direction
    b: Direction
    P: float
    n_trials: int
    std_error: float

    def __post_init__(self):
        if abs(self.P) > 1.0 + 1e-12:
            raise InvariantError(f"correlation {self.P!r} outside [-1, 1]")


def _record(a, b, products: np.ndarray) -> CorrelationRecord:
    n = len(products)
    p = float(np.mean(products))
    se = math.sqrt(max(0.0, 1.0 - p * p) / n)
    return CorrelationRecord(a, b, p, n, se)


# -- local hidden variable strategies ---------------------------------------

Rule = Callable[[np.ndarray, np.ndarray], np.ndarray]
Sampler = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class LHVStrategy:
    """Predetermined-outcome model.

    ``lambda_sampler`` maps per-trial uniforms, shape ``(n, 4)``, to hidden
    variables (any array with leading axis ``n``).  ``rule(dirs, lam)`` maps
    unit vectors of shape ``(k, 3)`` and the hidden variables to A-outcomes of
    shape ``(n, k)``.  B outcomes are always ``-A``.
    """

    name: str
    rule: Rule
    lambda_sampler: Sampler

    def outcomes_a(self, dirs: np.ndarray, lam) -> np.ndarray:
        out = np.asarray(self.rule(dirs, lam))
        if not np.all(np.abs(out) == 1):
            raise InvariantError(f"strategy {self.name!r} produced outcomes other than +-1")
        return out.astype(np.int8)

    def outcomes_b(self, dirs: np.ndarray, lam) -> np.ndarray:
        return -self.outcomes_a(dirs, lam)


def _sphere_sampler(u: np.ndarray) -> np.ndarray:
    z = 2.0 * u[:, 0] - 1.0
    phi = 2.0 * math.pi * u[:, 1]
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _sign_rule(dirs: np.ndarray, lam: np.ndarray) -> np.ndarray:
    # sign(0) -> +1
    return np.where(lam @ dirs.T >= 0.0, 1, -1)


def sign_strategy() -> LHVStrategy:
    """``A(n, lam) = sign(lam . n)`` with ``lam`` uniform on the sphere."""
    return LHVStrategy("sign-lhv", _sign_rule, _sphere_sampler)


def table_strategy(directions: Sequence[Direction], table, weights=None) -> LHVStrategy:
    """Lookup-table strategy: the hidden variable picks a row of ``table``.

    ``table[r, k]`` is ``A(directions[k])`` when row ``r`` is drawn.  Rows are
    drawn with probabilities ``weights`` (uniform by default).  Directions not
    in the list raise :class:`ValidationError`.
    """
    known = np.array([_dir(d).vector for d in directions], dtype=float).reshape(-1, 3)
    tab = np.asarray(table, dtype=np.int8)
    if tab.ndim == 1:
        tab = tab[None, :]
    if tab.shape[1] != len(known):
        raise ValidationError("table needs one column per direction")
    if not np.all(np.abs(tab) == 1):
        raise ValidationError("table entries must be +1 or -1")
    if weights is None:
        cum = np.arange(1, tab.shape[0] + 1) / tab.shape[0]
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (tab.shape[0],) or np.any(w < 0) or w.sum() <= 0:
            raise ValidationError("weights must be non-negative, one per row")
        cum = np.cumsum(w / w.sum())

    def sampler(u):
        return np.minimum(np.searchsorted(cum, u[:, 0], side="right"), len(cum) - 1)

    def rule(dirs, rows):
        cols = []
        for d in dirs:
            hit = np.flatnonzero(np.all(np.abs(known - d) <= 1e-12, axis=1))
            if hit.size == 0:
                raise ValidationError(f"direction {tuple(d)} is not in the table")
            cols.append(hit[0])
        return tab[np.asarray(rows)][:, cols]

    return LHVStrategy("table", rule, sampler)


def custom_strategy(rule: Rule, lambda_sampler: Optional[Sampler] = None,
                    name: str = "custom") -> LHVStrategy:
    """Wrap a user rule; the default hidden variable is the raw uniform block."""
    return LHVStrategy(name, rule, lambda_sampler or (lambda u: u))


def lhv_estimate(strategy: LHVStrategy, pairs, n: int, seed: int,
                 stream: int = 0) -> list[CorrelationRecord]:
    """``P(a, b) = (1/N) sum_i A(a, i) B(b, i)`` for each pair.

    One hidden variable is drawn per trial and shared by every pair, so all
    records refer to the same ensemble.
    """
    if n < 1:
        raise ValidationError("need at least one trial")
    pairs = [(_dir(a), _dir(b)) for a, b in pairs]
    uniq: list[Direction] = []
    for a, b in pairs:
        for d in (a, b):
            if d not in uniq:
                uniq.append(d)
    dirs = np.array([d.vector for d in uniq])
    lam = strategy.lambda_sampler(trial_uniforms(seed, 0, n, stream))
    a_out = strategy.outcomes_a(dirs, lam).astype(np.int64)
    col = {d: k for k, d in enumerate(uniq)}
    return [_record(a, b, a_out[:, col[a]] * -a_out[:, col[b]]) for a, b in pairs]


def bell_check(p_ab: float, p_ac: float, p_bc: float,
               tol: float = TAU_BELL) -> tuple[bool, float]:
    """Audit ``|P(a,b) - P(a,c)| <= 1 + P(b,c)``.

    Returns ``(satisfied, margin)`` with ``margin = 1 + P(b,c) - |P(a,b) - P(a,c)|``.
    """
    vals = []
    for p in (p_ab, p_ac, p_bc):
        p = float(p)
        if not abs(p) <= 1.0 + TAU_BELL:
            raise ValidationError(f"correlation {p!r} outside [-1, 1]")
        vals.append(p)
    ab, ac, bc = vals
    margin = 1.0 + bc - abs(ab - ac)
    return margin >= -tol, margin


def bell_triple_pairs(a, b, c) -> list[tuple[Direction, Direction]]:
    """The pairs ``(a,b), (a,c), (b,c)`` in the order :func:`bell_check` expects."""
    return [(a, b), (a, c), (b, c)]


def joint_probabilities(a: Direction, b: Direction) -> np.ndarray:
    """Singlet probabilities for ``(2S_A.a, 2S_B.b)`` in the order (++, +-, -+, --)."""
    rho = _SINGLET.matrix
    probs = []
    for sa in (1, -1):
        pa = spin_eigenprojector(_dir(a), sa).matrix
        for sb in (1, -1):
            pb = spin_eigenprojector(_dir(b), sb).matrix
            probs.append(float(np.einsum("ij,ji->", kron(pa, pb), rho).real))
    p = np.clip(np.array(probs), 0.0, None)
    return p / p.sum()


_PRODUCTS = np.array([1, -1, -1, 1], dtype=np.int64)


def qm_sampled_correlation(a: Direction, b: Direction, n: int, seed: int,
                           stream: int = 0) -> CorrelationRecord:
    """Monte Carlo estimate of the singlet correlation from sampled joint outcomes."""
    if n < 1:
        raise ValidationError("need at least one trial")
    a, b = _dir(a), _dir(b)
    cum = np.cumsum(joint_probabilities(a, b))
    u = trial_uniforms(seed, 0, n, stream)[:, 0]
    idx = np.minimum(np.searchsorted(cum, u, side="right"), 3)
    return _record(a, b, _PRODUCTS[idx])


# -- statement F -------------------------------------------------------------

@dataclass
class StatementFReport:
    """Evidence that no single pure state of spin B is compatible with remote preparation.

    ``conditioned[axis][alpha]`` is the B state after measuring ``2 S_A.axis``
    with outcome ``alpha``.  ``commutators`` holds the Frobenius norms of
    ``[P_z, P_x]`` between z- and x-conditioned states.
    """

    conditioned: dict
    purity_residues: dict
    commutators: dict
    disregarded_deviation: dict
    marginal_b: DensityOperator
    all_pure: bool = False
    distinct: bool = False
    unchanged_when_disregarded: bool = False
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "conditioned_states": {
                ax: {str(k): v.to_json() for k, v in d.items()}
                for ax, d in self.conditioned.items()
            },
            "purity_residues": {ax: {str(k): v for k, v in d.items()}
                                for ax, d in self.purity_residues.items()},
            "commutator_norms": self.commutators,
            "disregarded_deviation": self.disregarded_deviation,
            "marginal_b": self.marginal_b.to_json(),
            "all_pure": self.all_pure,
            "distinct": self.distinct,
            "unchanged_when_disregarded": self.unchanged_when_disregarded,
            "notes": self.notes,
        }


def statement_f_falsification(commutator_floor: float = 0.1,
                              deviation_tol: float = 1e-12) -> StatementFReport:
    """Run the remote-preparation argument on the singlet and check its three facts.

    1. Measuring ``S_A.z`` or ``S_A.x`` leaves B in a pure state for either result.
    2. The z- and x-conditioned pure states are non-commuting projectors, so no
       single pure state of B can be an eigenstate of both components.
    3. Disregarding the result leaves ``rho_B`` unchanged.

    Raises :class:`InvariantError` if any fact fails.
    """
    rho = _SINGLET
    axes = {"z": Z_HAT, "x": X_HAT}
    conditioned: dict = {}
    residues: dict = {}
    for name, n in axes.items():
        conditioned[name] = {}
        residues[name] = {}
        for alpha in (1, -1):
            f = spin_eigenprojector(n, alpha)
            st = remote_conditional_state(rho, QUBITS, f, 1)
            conditioned[name][alpha] = st
            residues[name][alpha] = purity_residue(st)
    comms = {}
    for az in (1, -1):
        for ax in (1, -1):
            pz = conditioned["z"][az].matrix
            px = conditioned["x"][ax].matrix
            comms[f"z{az:+d},x{ax:+d}"] = frobenius(pz @ px - px @ pz)
    dev = {name: no_signaling_check(rho, QUBITS, spin_eigenprojector(n, 1))
           for name, n in axes.items()}
    _, rho_b = marginals(rho, QUBITS)

    rep = StatementFReport(conditioned, residues, comms, dev, rho_b)
    rep.all_pure = all(r <= TAU_PURITY for d in residues.values() for r in d.values())
    rep.distinct = all(c > commutator_floor for c in comms.values())
    rep.unchanged_when_disregarded = (
        all(v <= deviation_tol for v in dev.values())
        and rho_b.allclose(maximally_mixed(2), atol=deviation_tol)
    )
    rep.notes.append("outcomes labelled by the value of 2 S_A.n (+1/-1)")
    if not rep.all_pure:
        raise InvariantError(f"a remotely prepared state is not pure: {residues}")
    if not rep.distinct:
        raise InvariantError(f"conditioned states commute: {comms}")
    if not rep.unchanged_when_disregarded:
        raise InvariantError(f"disregarded measurement changed rho_B: {dev}")
    return rep
