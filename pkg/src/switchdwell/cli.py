"""Command-line front end: ``switchdwell {analyze,curve,verify,simulate} problem.json``.

Exit codes: 0 success, 1 bad input, 2 matrices rejected (not Hurwitz /
not unstable / degenerate), 3 verification failed.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import numpy as np

from . import mat2
from .dwellflee import PairError, SolverFailure, build_pair, dwell_flee, tau_curve
from .extend import BilinearInput, build_star, sbs_tau, star_tau
from .simulate import (BadParams, Signal, decay_envelope, flow, geometric_mean, make_signal,
                       signal_in_class)
from .verify import verify_rect

DIGITS = 12
EXIT_OK, EXIT_INPUT, EXIT_REJECTED, EXIT_FAIL = 0, 1, 2, 3


class InputError(ValueError):
    pass


def _num(x):
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None if math.isnan(x) else ("inf" if x > 0 else "-inf")
        return float(f"{x:.{DIGITS}g}")
    if isinstance(x, np.ndarray):
        return _num(x.tolist())
    if isinstance(x, dict):
        return {str(k): _num(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_num(v) for v in x]
    if hasattr(x, "value") and hasattr(x, "name"):
        return x.value if isinstance(x.value, str) else x.name
    return x


def dumps(obj) -> str:
    return json.dumps(_num(obj), indent=2, sort_keys=True)


def _fmt(x) -> str:
    return f"{x:.{DIGITS}g}"


def _matrix(doc: dict, key: str, required: bool = True):
    if key not in doc:
        if required:
            raise InputError(f"missing field '{key}'")
        return None
    try:
        A = np.array(doc[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InputError(f"field '{key}' is not a numeric matrix") from exc
    if A.shape != (2, 2) or not np.all(np.isfinite(A)):
        raise InputError(f"field '{key}' must be a finite 2x2 matrix")
    return A


def load_problem(path: str) -> dict:
    try:
        with (sys.stdin if path == "-" else open(path)) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("problem file must hold a JSON object")
    return doc


def _eta(doc: dict, args) -> float:
    eta = args.eta if getattr(args, "eta", None) is not None else doc.get("eta")
    if eta is None:
        raise InputError("missing field 'eta' (or pass --eta)")
    try:
        eta = float(eta)
    except (TypeError, ValueError) as exc:
        raise InputError("field 'eta' must be a number") from exc
    if not eta > 0:
        raise InputError("field 'eta' must be positive")
    return eta


def _eta_grid(doc: dict) -> np.ndarray:
    g = doc.get("eta_grid")
    if g is None:
        raise InputError("missing field 'eta_grid'")
    if isinstance(g, list):
        vals = np.array(g, dtype=float)
    else:
        try:
            lo, hi, step = float(g["from"]), float(g["to"]), float(g["step"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("field 'eta_grid' needs numeric 'from', 'to', 'step'") from exc
        if not step > 0 or hi < lo:
            raise InputError("field 'eta_grid' needs step > 0 and to >= from")
        vals = lo + step * np.arange(int(math.floor((hi - lo) / step + 1e-9)) + 1)
    if np.any(vals < 0):
        raise InputError("field 'eta_grid' must be nonnegative")
    return vals


def _options(doc: dict, args) -> dict:
    opts = dict(doc.get("options") or {})
    for key in ("margin", "tol", "seed", "span"):
        v = getattr(args, key, None)
        if v is not None:
            opts[key] = v
    if getattr(args, "grid", None):
        try:
            n_t, n_s = (int(v) for v in args.grid.lower().split("x"))
        except ValueError as exc:
            raise InputError("--grid must look like 400x400") from exc
        opts["grid"] = [n_t, n_s]
    return opts


def _pair_info(pair) -> dict:
    def dec(d):
        return {"class": d.cls.name, "params": list(d.params), "P": d.P, "J": d.J}
    return {"case": pair.case, "A1": pair.A1, "A2": pair.A2, "M": pair.M,
            "jordan1": dec(pair.d1), "jordan2": dec(pair.d2)}


def _result_dict(r) -> dict:
    return {"eta": r.eta, "tau12": r.tau12, "tau21": r.tau21, "tau": r.tau,
            "tau_branch": r.branch, "subcase": r.subcase, "margin": r.margin,
            "scaling": r.scaling, "unavailable": r.unavailable}


def cmd_analyze(doc: dict, args, out) -> int:
    opts = _options(doc, args)
    eta = _eta(doc, args)
    if "leaves" in doc:
        A1 = _matrix(doc, "A1")
        leaves = doc["leaves"]
        if not isinstance(leaves, list) or not leaves:
            raise InputError("field 'leaves' must be a nonempty list of matrices")
        mats = [_matrix({"leaf": L}, "leaf") for L in leaves]
        star = build_star(A1, mats)
        tau, params = star_tau(star, eta, eps0=opts.get("margin"))
        out.write(dumps({"A1": A1, "leaves": mats, "eta": eta, "center": star.center_class.name,
                         "leaf_classes": [lf.decomp.cls.name for lf in star.leaves],
                         "tau": tau, "params": params}) + "\n")
        return EXIT_OK
    pair = build_pair(_matrix(doc, "A1"), _matrix(doc, "A2"))
    r = dwell_flee(pair, eta, eps0=opts.get("margin"), tol=opts.get("tol", 1e-10))
    body = _pair_info(pair)
    body.update(_result_dict(r))
    if "u_lo" in opts or "u_hi" in opts:
        bi = BilinearInput(pair, float(opts.get("u_lo", 1.0)), float(opts.get("u_hi", 1.0)))
        body["bilinear_tau"] = sbs_tau(bi, eta)
    out.write(dumps(body) + "\n")
    return EXIT_OK


def cmd_curve(doc: dict, args, out) -> int:
    opts = _options(doc, args)
    pair = build_pair(_matrix(doc, "A1"), _matrix(doc, "A2"))
    rows = tau_curve(pair, _eta_grid(doc), eps0=opts.get("margin"), tol=opts.get("tol", 1e-10))
    if args.format == "json":
        out.write(dumps([_result_dict(r) for r in rows]) + "\n")
        return EXIT_OK
    out.write("eta,tau12,tau21,tau,subcase\n")
    for r in rows:
        out.write(f"{_fmt(r.eta)},{_fmt(r.tau12)},{_fmt(r.tau21)},{_fmt(r.tau)},{r.subcase}\n")
    return EXIT_OK


def cmd_verify(doc: dict, args, out) -> int:
    opts = _options(doc, args)
    pair = build_pair(_matrix(doc, "A1"), _matrix(doc, "A2"))
    eta = _eta(doc, args)
    res = dwell_flee(pair, eta, eps0=opts.get("margin"))
    tau = args.tau if args.tau is not None else doc.get("tau", res.tau)
    try:
        tau = float(tau)
    except (TypeError, ValueError) as exc:
        raise InputError("tau must be a number") from exc
    if not tau > 0:
        raise InputError("tau must be positive")
    n_t, n_s = opts.get("grid", (400, 400))
    prescribed = doc.get("scaling", res.scaling)
    rep = verify_rect(pair, tau, eta, grid=(n_t, n_s, opts.get("span")),
                      scaling_policy=args.policy, prescribed=prescribed)
    out.write(dumps({"pass": rep.passed, "max_norm": rep.max_norm, "argmax": rep.argmax,
                     "grid": rep.grid, "order": rep.order,
                     "scaling_used": vars(rep.scaling_used), "tau": tau, "eta": eta}) + "\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def _floats(text: str, what: str) -> list[float]:
    try:
        return [float(v) for v in text.replace(" ", "").split(",") if v]
    except ValueError as exc:
        raise InputError(f"{what} must be a comma-separated list of numbers") from exc


def cmd_simulate(doc: dict, args, out) -> int:
    opts = _options(doc, args)
    pair = build_pair(_matrix(doc, "A1"), _matrix(doc, "A2"))
    x0 = _floats(args.x0, "--x0") if args.x0 else doc.get("x0", [1.0, 0.0])
    if len(x0) != 2:
        raise InputError("x0 must have two entries")
    lengths = _floats(args.durations, "--durations") if args.durations else doc.get("durations")
    try:
        if lengths:
            sig = Signal.from_lengths(lengths)
            eta = float(doc.get("eta", max(sig.flee, default=1.0))) if args.eta is None else args.eta
            tau = dwell_flee(pair, eta).tau
        else:
            eta = _eta(doc, args)
            tau = dwell_flee(pair, eta, eps0=opts.get("margin")).tau
            sig = make_signal(tau, eta, args.policy, args.periods, delta=args.delta,
                              seed=opts.get("seed"))
    except BadParams as exc:
        raise InputError(str(exc)) from exc
    traj = flow(pair, sig, x0, args.samples)
    if args.summary:
        r = decay_envelope(traj)
        out.write(dumps({"tau": tau, "eta": eta, "x0": x0,
                         "final_norm": float(np.linalg.norm(traj.states[-1])),
                         "initial_norm": float(np.linalg.norm(x0)),
                         "envelope": r, "geometric_mean": geometric_mean(r) if r else None,
                         "signal_class": signal_in_class(sig, tau, eta).value}) + "\n")
        return EXIT_OK
    traj.to_csv(out, DIGITS)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="switchdwell", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("problem", help="problem JSON file, or - for stdin")
        p.add_argument("--eta", type=float)
        p.add_argument("--margin", type=float, help="margin added where the infimum is not attained")
        p.add_argument("--tol", type=float)
        p.add_argument("--grid", help="verification grid NxM")
        p.add_argument("--span", type=float, help="t-span of the verification rectangle")
        p.add_argument("--seed", type=int)
        p.add_argument("--format", choices=("json", "csv"), default="csv")
        return p

    common(sub.add_parser("analyze", help="case, Jordan data and dwell-flee values"))
    common(sub.add_parser("curve", help="dwell-flee values over an eta grid"))
    v = common(sub.add_parser("verify", help="sampled check of a (tau, eta) certificate"))
    v.add_argument("--tau", type=float)
    v.add_argument("--policy", choices=("prescribed", "sweep", "both"), default="both")
    s = common(sub.add_parser("simulate", help="exact trajectory for a switching signal"))
    s.add_argument("--policy", choices=("corner", "jitter", "random"), default="jitter")
    s.add_argument("--periods", type=int, default=10)
    s.add_argument("--delta", type=float, default=0.1)
    s.add_argument("--durations", help="comma-separated interval lengths, starting in mode 1")
    s.add_argument("--x0", help="initial state, e.g. 10,-5")
    s.add_argument("--samples", type=int, default=16)
    s.add_argument("--summary", action="store_true", help="print a JSON summary instead of the CSV")
    return ap


COMMANDS = {"analyze": cmd_analyze, "curve": cmd_curve, "verify": cmd_verify, "simulate": cmd_simulate}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        doc = load_problem(args.problem)
        return COMMANDS[args.command](doc, args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (PairError, mat2.Mat2Error) as exc:
        print(f"rejected: {exc}", file=sys.stderr)
        return EXIT_REJECTED
    except (SolverFailure, mat2.Overflow) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
