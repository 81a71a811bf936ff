"""Command line front end.

    qmdensity bell --angles 0,60,120 --trials 100000 --strategy qm --out results
    qmdensity run scenario.json

Exit status: 0 success, 2 input error (unreadable or malformed scenario),
3 validation failure, 4 zero-probability conditioning, 5 invariant breach.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import tempfile
from pathlib import Path

from .errors import InvariantError, ValidationError, ZeroProbabilityError
from .scenarios import DEFAULT_TRIALS, KINDS, RUNNERS

log = logging.getLogger("qmdensity")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VALIDATION = 3
EXIT_ZERO_PROB = 4
EXIT_INVARIANT = 5


class InputError(Exception):
    pass


def load_scenario(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            sc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read scenario {path}: {exc}") from exc
    if not isinstance(sc, dict):
        raise InputError("scenario must be a JSON object")
    if sc.get("kind") not in KINDS:
        raise InputError(f"scenario kind must be one of {', '.join(KINDS)}")
    params = sc.get("parameters", {})
    if not isinstance(params, dict):
        raise InputError("'parameters' must be an object")
    return sc


def _write_outputs(outputs: dict, out_dir: Path) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, text in outputs.items():
        fd, tmp = tempfile.mkstemp(dir=out_dir, prefix=f".{name}.")
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, out_dir / name)


def execute(kind: str, params: dict, seed: int = 0, trials: int | None = None,
            tol: float | None = None) -> dict:
    """Run one scenario in memory and return ``{filename: text}``."""
    if trials is None:
        trials = int(params.get("trials", DEFAULT_TRIALS))
    if trials < 1:
        raise ValidationError("trials must be positive")
    return RUNNERS[kind](params, int(seed), int(trials), tol)


def run_scenario(path, out: str | None = None, seed: int | None = None,
                 trials: int | None = None, tol: float | None = None) -> int:
    """Execute a scenario file; returns the process exit status."""
    try:
        sc = load_scenario(path)
    except InputError as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    params = sc.get("parameters", {})
    seed = sc.get("seed", 0) if seed is None else seed
    out_dir = Path(out or sc.get("output_path") or ".")
    return _guarded(lambda: execute(sc["kind"], params, seed, trials, tol), out_dir)


def _guarded(job, out_dir: Path) -> int:
    try:
        outputs = job()
    except ZeroProbabilityError as exc:
        log.error("zero-probability conditioning: %s", exc)
        return EXIT_ZERO_PROB
    except InvariantError as exc:
        log.error("invariant breach: %s", exc)
        return EXIT_INVARIANT
    except ValidationError as exc:
        log.error("validation failure: %s", exc)
        return EXIT_VALIDATION
    except (TypeError, ValueError, KeyError) as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT
    _write_outputs(outputs, out_dir)
    for name in outputs:
        print(out_dir / name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default 0)")
    common.add_argument("--trials", type=int, default=None,
                        help=f"Monte Carlo trials (default {DEFAULT_TRIALS})")
    common.add_argument("--tol", type=float, default=None,
                        help="report threshold override; engine tolerances are fixed")
    common.add_argument("--out", default=None, help="output directory (default .)")
    common.add_argument("--scenario", default=None,
                        help="JSON file whose 'parameters' (or the whole object) set the run")

    p = argparse.ArgumentParser(prog="qmdensity", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run a scenario file")
    run.add_argument("path")

    sub.add_parser("evolve", parents=[common], help="time evolution trajectory (CSV)")
    sub.add_parser("measure", parents=[common], help="ideal measurement sampling")
    bell = sub.add_parser("bell", parents=[common], help="Bell inequality audit (CSV)")
    bell.add_argument("--angles", default=None, help="coplanar angles in degrees, e.g. 0,60,120")
    bell.add_argument("--strategy", choices=["qm", "sign-lhv", "table"], default=None)
    sub.add_parser("epr", parents=[common], help="remote preparation / statement F report")
    sub.add_parser("info", parents=[common], help="information content of a bipartite state")
    sub.add_parser("cat", parents=[common], help="toy atom-pointer entanglement demo")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    if args.command == "run":
        return run_scenario(args.path, args.out, args.seed, args.trials, args.tol)

    params: dict = {}
    file_seed = None
    if args.scenario:
        try:
            obj = _load_params(args.scenario)
        except InputError as exc:
            log.error("%s", exc)
            return EXIT_INPUT
        if "kind" in obj:
            if obj["kind"] != args.command:
                log.error("scenario kind %r does not match subcommand %r", obj["kind"], args.command)
                return EXIT_INPUT
            params = dict(obj.get("parameters", {}))
            file_seed = obj.get("seed")
        else:
            params = dict(obj)
    if args.command == "bell":
        if args.angles is not None:
            params["angles"] = args.angles
        if args.strategy is not None:
            params["strategy"] = args.strategy
    seed = args.seed if args.seed is not None else (file_seed or 0)
    return _guarded(lambda: execute(args.command, params, seed, args.trials, args.tol),
                    Path(args.out or "."))


def _load_params(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    if not isinstance(obj, dict):
        raise InputError("scenario must be a JSON object")
    return obj


if __name__ == "__main__":
    sys.exit(main())
