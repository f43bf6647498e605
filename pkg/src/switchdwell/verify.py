"""Sampled certification of dwell-flee pairs and a brute-force dwell-time oracle.

Everything here works from the Jordan data of a ``SwitchedPair`` and never
calls the relations in ``dwellflee``; that independence is the point.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from . import mat2
from .mat2 import JordanClass

TOL_PASS = 1e-9
SWEEP_LAMBDA = np.logspace(-4.0, 4.0, 64)
SWEEP_EPS = np.linspace(-100.0, 100.0, 64)


@dataclass(frozen=True)
class ScalingParams:
    lambda1: float = 1.0
    lambda2: float = 1.0
    eps1: float = 0.0
    eps2: float = 0.0

    @classmethod
    def from_dict(cls, d: dict | None) -> "ScalingParams":
        d = d or {}
        return cls(**{k: float(v) for k, v in d.items() if k in ("lambda1", "lambda2", "eps1", "eps2")})


@dataclass
class VerifyReport:
    passed: bool
    max_norm: float
    argmax: tuple
    grid: tuple
    scaling_used: ScalingParams
    order: str

    @property
    def pass_(self) -> bool:
        return self.passed


def scaling_matrix(d: mat2.JordanDecomp, lam: float, eps: float) -> np.ndarray:
    """Matrix commuting with the Jordan block of ``d`` used to rescale its basis."""
    if d.cls is JordanClass.REAL:
        if lam == 0:
            raise ValueError("diagonal scaling must be nonzero")
        return np.diag([lam, 1.0 / lam])
    if d.cls is JordanClass.DEFECTIVE:
        return np.array([[1.0, eps], [0.0, 1.0]])
    return np.eye(2)


def scaled_transition(pair, sc: ScalingParams, order: str) -> np.ndarray:
    if order == "12":
        return pair.M @ scaling_matrix(pair.d1, sc.lambda1, sc.eps1)
    if order == "21":
        return mat2.inv(scaling_matrix(pair.d2, sc.lambda2, sc.eps2)) @ pair.M
    raise ValueError(f"order must be '12' or '21', got {order!r}")


def _norm_grid(pair, Ms: np.ndarray, order: str, t: np.ndarray, s: np.ndarray) -> np.ndarray:
    """Grouped norm on the outer grid t x s, shape (len(t), len(s))."""
    Mi = mat2.inv(Ms)
    E1 = mat2.expm(pair.d1.J, t)
    E2 = mat2.expm(pair.d2.J, s)
    if order == "12":
        # Mi E2(s) Ms E1(t): left factor varies along s, right along t
        out = _outer_norms(Mi @ E2 @ Ms, E1).T
    else:
        # Ms E1(t) Mi E2(s)
        out = _outer_norms(Ms @ E1 @ Mi, E2)
    if not np.all(np.isfinite(out)):
        raise mat2.Overflow("grouped norm overflowed")
    return out


def _outer_norms(L: np.ndarray, R: np.ndarray) -> np.ndarray:
    """Spectral norms of L[i] @ R[j] for stacks of 2x2 matrices, shape (len(L), len(R))."""
    with np.errstate(over="ignore", invalid="ignore"):
        # each product entry is a rank-2 outer product; keeping them as
        # separate contiguous arrays is what makes this fast
        R0, R1 = np.ascontiguousarray(R[:, :, 0].T), np.ascontiguousarray(R[:, :, 1].T)
        L0, L1 = L[:, 0, :], L[:, 1, :]
        x00, x01, x10, x11 = L0 @ R0, L0 @ R1, L1 @ R0, L1 @ R1
        u, v, w, z = x00 + x11, x10 - x01, x00 - x11, x01 + x10
        big = max(np.abs(L).max(), 1.0) * max(np.abs(R).max(), 1.0)
        if not big < 1e150:
            return 0.5 * (np.hypot(u, v) + np.hypot(w, z))
        u *= u
        v *= v
        u += v
        w *= w
        z *= z
        w += z
        out = np.sqrt(u)
        out += np.sqrt(w)
        out *= 0.5
        return out


def grouping_norm(pair, sc: ScalingParams, t, s, order: str):
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    s_arr = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(t_arr < 0) or np.any(s_arr < 0):
        raise ValueError("times must be nonnegative")
    vals = _norm_grid(pair, scaled_transition(pair, sc, order), order, t_arr, s_arr)
    if np.ndim(t) == 0 and np.ndim(s) == 0:
        return float(vals[0, 0])
    return vals


def _sweep(pair, order: str) -> list[ScalingParams]:
    d = pair.d1 if order == "12" else pair.d2
    key_l, key_e = ("lambda1", "eps1") if order == "12" else ("lambda2", "eps2")
    if d.cls is JordanClass.REAL and not d.scalar:
        return [ScalingParams(**{key_l: float(v)}) for v in SWEEP_LAMBDA]
    if d.cls is JordanClass.DEFECTIVE:
        return [ScalingParams(**{key_e: float(v)}) for v in SWEEP_EPS]
    return [ScalingParams()]


def candidate_scalings(pair, order: str, policy: str, prescribed: ScalingParams | None):
    if policy not in ("prescribed", "sweep", "both"):
        raise ValueError(f"unknown scaling policy {policy!r}")
    out = []
    if policy in ("prescribed", "both"):
        out.append(prescribed or ScalingParams())
    if policy in ("sweep", "both"):
        out.extend(_sweep(pair, order))
    return out


def verify_rect(pair, tau: float, eta: float, grid: tuple = (400, 400, None),
                scaling_policy: str = "both", prescribed: ScalingParams | dict | None = None,
                orders: tuple = ("12", "21"), tol_pass: float = TOL_PASS) -> VerifyReport:
    """Check that some grouping and some single scaling keep the norm <= 1 on the rectangle.

    The rectangle is ``[tau, tau + t_span] x [0, eta]``; ``t_span`` defaults
    to ``3 tau + 10``. The report describes the best (order, scaling) found.
    """
    n_t, n_s, t_span = grid
    if t_span is None:
        t_span = 3.0 * tau + 10.0
    if isinstance(prescribed, dict):
        prescribed = ScalingParams.from_dict(prescribed)
    t = np.linspace(tau, tau + t_span, int(n_t))
    s = np.linspace(0.0, eta, int(n_s))
    best = None
    # cheap candidates first: the prescribed scaling on every grouping, then the sweeps
    plan = []
    if scaling_policy in ("prescribed", "both"):
        plan += [(o, sc) for o in orders for sc in candidate_scalings(pair, o, "prescribed", prescribed)]
    if scaling_policy in ("sweep", "both"):
        plan += [(o, sc) for o in orders for sc in candidate_scalings(pair, o, "sweep", None)]
    if not plan:
        candidate_scalings(pair, orders[0], scaling_policy, prescribed)
    for order, sc in plan:
        try:
            vals = _norm_grid(pair, scaled_transition(pair, sc, order), order, t, s)
        except mat2.Overflow:
            continue
        k = int(np.argmax(vals))
        m = float(vals.flat[k])
        if best is None or m < best[0]:
            i, j = np.unravel_index(k, vals.shape)
            best = (m, (float(t[i]), float(s[j])), sc, order)
        if m <= 1.0 + tol_pass:
            break
    if best is None:
        return VerifyReport(False, math.inf, (math.nan, math.nan), (n_t, n_s, t_span), ScalingParams(), "")
    m, arg, sc, order = best
    return VerifyReport(m <= 1.0 + tol_pass, m, arg, (n_t, n_s, t_span), sc, order)


def brute_force_tau(pair, eta: float, t_grid=None, s_grid=None, scaling_grid: dict | None = None,
                    prescribed: ScalingParams | dict | None = None, tol_pass: float = TOL_PASS,
                    t_max: float | None = None, n_t: int = 2000, n_s: int = 200) -> float:
    """Smallest grid time from which the grouped norm stays <= 1 for every s in [0, eta].

    For each grouping and candidate scaling the running maximum over later
    t is taken, so the answer certifies the whole sampled tail. ``inf`` if no
    grid point works. ``scaling_grid`` may override the sweep values with
    keys ``"lambda"`` and ``"eps"``.
    """
    if t_grid is None:
        t_grid = np.linspace(0.0, t_max if t_max is not None else 200.0, n_t)
    if s_grid is None:
        s_grid = np.linspace(0.0, eta, n_s)
    t_grid = np.asarray(t_grid, dtype=float)
    s_grid = np.asarray(s_grid, dtype=float)
    if isinstance(prescribed, dict):
        prescribed = ScalingParams.from_dict(prescribed)
    best = math.inf
    for order in ("12", "21"):
        scs = _sweep_override(pair, order, scaling_grid) if scaling_grid else _sweep(pair, order)
        if prescribed is not None:
            scs = [prescribed] + scs
        for sc in scs:
            try:
                vals = _norm_grid(pair, scaled_transition(pair, sc, order), order, t_grid, s_grid)
            except mat2.Overflow:
                continue
            n = vals.max(axis=1)
            tail = np.maximum.accumulate(n[::-1])[::-1]
            ok = np.nonzero(tail <= 1.0 + tol_pass)[0]
            if len(ok):
                best = min(best, float(t_grid[ok[0]]))
    return best


def _sweep_override(pair, order, grid):
    d = pair.d1 if order == "12" else pair.d2
    key_l, key_e = ("lambda1", "eps1") if order == "12" else ("lambda2", "eps2")
    if d.cls is JordanClass.REAL and not d.scalar:
        return [ScalingParams(**{key_l: float(v)}) for v in grid.get("lambda", SWEEP_LAMBDA)]
    if d.cls is JordanClass.DEFECTIVE:
        return [ScalingParams(**{key_e: float(v)}) for v in grid.get("eps", SWEEP_EPS)]
    return [ScalingParams()]


def prescribed_scaling(result) -> ScalingParams:
    """Scaling recipe attached to a dwell-flee result (identity where none applies)."""
    return ScalingParams.from_dict(result.scaling)


def replace_scaling(sc: ScalingParams, **kw) -> ScalingParams:
    return replace(sc, **kw)
