"""Batch scenarios behind the command line front end.

Each ``run_<kind>`` takes a parameter dict plus the common options and
returns ``{filename: text}``; nothing is written here, so a failure part way
through leaves no partial output.

Scenario files look like::

    {"kind": "bell", "seed": 7, "output_path": "out",
     "parameters": {"angles": [0, 60, 120], "strategy": "qm", "trials": 100000}}

States are given as a matrix encoding (``{"kind": "density", "rows": ..}``),
as ``{"vector": [[re, im], ...]}`` for a pure state, or by preset name
(``zero``, ``one``, ``plus_x``, ``minus_x``, ``mixed:<d>``, ``singlet``).
Operators are a matrix encoding or a preset (``sigma_x``, ``sigma_y``,
``sigma_z``, ``S_x``, ``S_y``, ``S_z``, ``identity:<d>``), optionally as
``{"preset": "S_z", "scale": 2.0}``.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
import math

import numpy as np

from . import __version__
from .composite import QUBITS, SubsystemLayout, marginals, remote_conditional_state
from .dynamics import EvolutionSpec, evolve_exact, evolve_stepped
from .epr_bell import (
    bell_check,
    lhv_estimate,
    qm_correlation,
    qm_sampled_correlation,
    sign_strategy,
    singlet,
    statement_f_falsification,
    table_strategy,
)
from .errors import InvariantError, ValidationError
from .information import minimality_check
from .matrix_core import matrix_from_json
from .measurement import (
    ideal_measure_conditioned,
    ideal_measure_disregarded,
    sample_filter_counts,
    sample_observable_counts,
)
from .observables import (
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    Direction,
    Filter,
    Observable,
    expectation,
    spectral_measure,
)
from .states import DensityOperator, from_pure_vector, is_pure, maximally_mixed, purity_residue
from .tolerances import TAU_BELL, TAU_INFO

KINDS = ("evolve", "measure", "bell", "epr", "info", "cat")
DEFAULT_TRIALS = 100_000

BELL_HEADER = ["pair", "P", "std_error", "margin", "satisfied"]
MEASURE_HEADER = ["outcome", "value", "probability", "count", "frequency"]


# -- parsing helpers ---------------------------------------------------------

_OPERATOR_PRESETS = {
    "sigma_x": SIGMA_X, "sigma_y": SIGMA_Y, "sigma_z": SIGMA_Z,
    "S_x": SIGMA_X / 2, "S_y": SIGMA_Y / 2, "S_z": SIGMA_Z / 2,
}


def parse_state(spec) -> DensityOperator:
    if isinstance(spec, str):
        name = spec.strip()
        if name == "singlet":
            return singlet()
        if name.startswith("mixed:"):
            return maximally_mixed(int(name.split(":", 1)[1]))
        vecs = {
            "zero": [1, 0], "one": [0, 1],
            "plus_x": [1, 1], "minus_x": [1, -1],
            "plus_y": [1, 1j], "minus_y": [1, -1j],
        }
        if name in vecs:
            return from_pure_vector(vecs[name])
        raise ValidationError(f"unknown state preset {name!r}")
    if isinstance(spec, dict):
        if "vector" in spec:
            try:
                v = [complex(float(re), float(im)) for re, im in spec["vector"]]
            except (TypeError, ValueError) as exc:
                raise ValidationError(f"vector entries must be [re, im] pairs: {exc}") from exc
            return from_pure_vector(v)
        return DensityOperator.from_json(spec)
    raise ValidationError(f"cannot interpret state {spec!r}")


def _operator_matrix(spec) -> np.ndarray:
    scale = 1.0
    if isinstance(spec, dict) and "preset" in spec:
        scale = float(spec.get("scale", 1.0))
        spec = spec["preset"]
    if isinstance(spec, str):
        if spec.startswith("identity:"):
            m = np.eye(int(spec.split(":", 1)[1]), dtype=complex)
        elif spec in _OPERATOR_PRESETS:
            m = _OPERATOR_PRESETS[spec]
        else:
            raise ValidationError(f"unknown operator preset {spec!r}")
        return scale * m
    if isinstance(spec, dict):
        return matrix_from_json(spec)
    raise ValidationError(f"cannot interpret operator {spec!r}")


def parse_observable(spec) -> Observable:
    return Observable(_operator_matrix(spec))


def parse_filter(spec) -> Filter:
    return Filter(_operator_matrix(spec))


def _require(params: dict, key: str):
    if key not in params:
        raise ValidationError(f"missing required parameter {key!r}")
    return params[key]


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(x) for x in r])
    return buf.getvalue()


def _fmt(x):
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return repr(x)
    return x


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _angles(value) -> list[float]:
    if isinstance(value, str):
        try:
            return [float(x) for x in value.split(",") if x.strip()]
        except ValueError as exc:
            raise ValidationError(f"bad angle list {value!r}") from exc
    return [float(x) for x in value]


# -- scenario kinds ------------------------------------------------------------

def run_bell(params: dict, seed: int, trials: int, tol: float | None) -> dict:
    """Correlations for every angle triple and their Bell-inequality margins."""
    angles = _angles(params.get("angles", [0.0, 60.0, 120.0]))
    if len(angles) < 3:
        raise ValidationError("bell needs at least three angles")
    strategy = params.get("strategy", "qm")
    tol = TAU_BELL if tol is None else tol
    dirs = [Direction.in_plane(a) for a in angles]

    if strategy == "sign-lhv":
        lhv = sign_strategy()
    elif strategy == "table":
        table = params.get("table")
        if table is None:
            # every sign assignment, uniformly weighted
            table = list(itertools.product((1, -1), repeat=len(dirs)))
        lhv = table_strategy(dirs, table, params.get("weights"))
    elif strategy == "qm":
        lhv = None
    else:
        raise ValidationError(f"unknown strategy {strategy!r}")

    rows, summary = [], []
    for t, (i, j, k) in enumerate(itertools.combinations(range(len(dirs)), 3)):
        pairs = [(i, j), (i, k), (j, k)]
        if lhv is None:
            recs = [qm_sampled_correlation(dirs[p], dirs[q], trials, seed, stream=3 * t + s)
                    for s, (p, q) in enumerate(pairs)]
        else:
            recs = lhv_estimate(lhv, [(dirs[p], dirs[q]) for p, q in pairs], trials, seed)
        ok, margin = bell_check(*(r.P for r in recs), tol=tol)
        combined = math.sqrt(sum(r.std_error ** 2 for r in recs))
        entry = {
            "angles": [angles[i], angles[j], angles[k]],
            "margin": margin,
            "satisfied": ok,
            "combined_std_error": combined,
        }
        if lhv is None:
            exact = [qm_correlation(dirs[p], dirs[q]) for p, q in pairs]
            entry["exact_margin"] = bell_check(*exact, tol=tol)[1]
        summary.append(entry)
        for (p, q), r in zip(pairs, recs):
            rows.append([f"{_num(angles[p])}-{_num(angles[q])}", r.P, r.std_error, margin, ok])
    report = {"strategy": strategy, "trials": trials, "seed": seed, "tolerance": tol,
              "triples": summary, "version": __version__}
    if lhv is not None:
        report["note"] = ("hidden-variable strategies sample the set of all predetermined "
                          "assignments; they do not exhaust it")
    return {"bell.csv": _csv(BELL_HEADER, rows), "bell.json": _json(report)}


def _num(a: float) -> str:
    return str(int(a)) if float(a).is_integer() else repr(a)


def run_measure(params: dict, seed: int, trials: int, tol: float | None) -> dict:
    """Sample an observable (or a filter) and report frequencies and post-measurement states."""
    rho = parse_state(params.get("state", "mixed:2"))
    out = {"state": rho.to_json(), "seed": seed, "trials": trials}
    if "filter" in params:
        f = parse_filter(params["filter"])
        ones = sample_filter_counts(rho, f, trials, seed)
        p1 = float(np.real(np.trace(f.matrix @ rho.matrix)))
        rows = [[0, 0.0, 1.0 - p1, trials - ones, (trials - ones) / trials],
                [1, 1.0, p1, ones, ones / trials]]
        measure = [(0.0, f.complement()), (1.0, f)]
        out["disregarded"] = ideal_measure_disregarded(rho, f).to_json()
    else:
        g = parse_observable(params.get("observable", "sigma_z"))
        values, probs, counts = sample_observable_counts(rho, g, trials, seed)
        rows = [[k, float(values[k]), float(probs[k]), int(counts[k]), int(counts[k]) / trials]
                for k in range(len(values))]
        measure = spectral_measure(g)
        mixed = sum((fk.matrix @ rho.matrix @ fk.matrix for _, fk in measure),
                    np.zeros_like(rho.matrix))
        out["disregarded"] = DensityOperator(mixed).to_json()
    posts = {}
    for value, fk in measure:
        p = float(np.real(np.trace(fk.matrix @ rho.matrix)))
        if p > 1e-12:
            posts[repr(float(value))] = ideal_measure_conditioned(rho, fk, 1).post_state.to_json()
    out["post_states"] = posts
    return {"measure.csv": _csv(MEASURE_HEADER, rows), "measure.json": _json(out)}


def run_evolve(params: dict, seed: int, trials: int, tol: float | None) -> dict:
    """Trajectory CSV: time, chosen expectation values, trace deviation, purity."""
    omega = float(params.get("omega", 1.0))
    rho0 = parse_state(params.get("state", "plus_x"))
    h = parse_observable(params.get("hamiltonian", {"preset": "S_z", "scale": omega}))
    spec = EvolutionSpec(
        t_start=float(params.get("t_start", 0.0)),
        t_end=float(params.get("t_end", 2 * math.pi / omega)),
        step=float(params.get("step", 0.01 / omega)),
        hbar=float(params.get("hbar", 1.0)),
    )
    observables = params.get("observables", {"sigma_x": "sigma_x"})
    obs = {name: parse_observable(o) for name, o in sorted(observables.items())}
    method = params.get("method", "stepped")
    if method == "stepped":
        traj = evolve_stepped(rho0, h, spec)
        times, states = traj.times, traj.states
    elif method == "exact":
        times = spec.times()
        states = [evolve_exact(rho0, h, t - spec.t_start, spec.hbar) for t in times]
    else:
        raise ValidationError(f"unknown method {method!r}")
    header = ["t", *obs, "trace_deviation", "purity"]
    rows = []
    for t, st in zip(times, states):
        m = st.matrix
        rows.append([float(t), *(expectation(st, g) for g in obs.values()),
                     abs(float(np.trace(m).real) - 1.0),
                     float(np.real(np.einsum("ij,ji->", m, m)))])
    return {"evolve.csv": _csv(header, rows)}


def run_epr(params: dict, seed: int, trials: int, tol: float | None) -> dict:
    rep = statement_f_falsification(deviation_tol=1e-12 if tol is None else tol)
    return {"epr.json": _json(rep.to_json())}


def run_info(params: dict, seed: int, trials: int, tol: float | None) -> dict:
    rho = parse_state(params.get("state", "singlet"))
    layout = SubsystemLayout.from_json(params.get("layout", QUBITS.to_json()))
    rep = minimality_check(rho, layout)
    tol = TAU_INFO if tol is None else tol
    out = rep.to_json()
    out["superadditive"] = rep.excess >= -tol
    if not out["superadditive"]:
        raise InvariantError(f"information excess {rep.excess!r} is negative")
    return {"info.json": _json(out)}


def cat_demo(seed: int = 0) -> dict:
    """Atom (decayed/undecayed) entangled with a pointer (dead/alive).

    The 2x2 layout has the atom as factor A and the cat as factor B, with
    index 0 = decayed / dead and index 1 = undecayed / alive.  The state is
    ``(|decayed>|dead> + |undecayed>|alive>)/sqrt(2)``.  ``seed`` is accepted
    for interface uniformity; the demo draws no random numbers.
    """
    rho = from_pure_vector(np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0))
    atom, cat = marginals(rho, QUBITS)
    dead = Filter(np.diag([1.0, 0.0]))
    given_dead = remote_conditional_state(rho, QUBITS, dead, 1, side="B")
    given_alive = remote_conditional_state(rho, QUBITS, dead, 0, side="B")
    return {
        "state": rho.to_json(),
        "labels": {"atom": ["decayed", "undecayed"], "cat": ["dead", "alive"]},
        "cat_marginal": cat.to_json(),
        "cat_marginal_is_pure": is_pure(cat),
        "cat_marginal_purity_residue": purity_residue(cat),
        "atom_marginal": atom.to_json(),
        "atom_given_dead": given_dead.to_json(),
        "atom_given_alive": given_alive.to_json(),
        "atom_given_dead_is_pure": is_pure(given_dead),
    }


def run_cat(params: dict, seed: int, trials: int, tol: float | None) -> dict:
    return {"cat.json": _json(cat_demo(seed))}


RUNNERS = {
    "evolve": run_evolve,
    "measure": run_measure,
    "bell": run_bell,
    "epr": run_epr,
    "info": run_info,
    "cat": run_cat,
}
