"""Two extensions of the bimodal relations.

* Symmetric bilinear systems x' = u(t) A_sigma x with a scalar input u that
  eventually stays in [u_lo, u_hi]: a bimodal certificate at flee time
  u_hi * eta, divided by u_lo, gives the dwell time.
* Star-graph multimodal systems: one Hurwitz centre and several unstable
  leaves, every switch going through the centre. One centre scaling is
  shared by all leaves, so the dwell time is a minimax over that scaling.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import mat2
from .dwellflee import (SolverFailure, SwitchedPair, _asinh_ksinh, _increasing_root, default_margin,
                        dwell_flee)
from .mat2 import JordanClass, Stability, log_theta
from .simulate import Signal, Trajectory, UnsupportedBranch
from .solve1d import SolverError, minimize_scalar
from .verify import ScalingParams, verify_rect

# groupings whose certificate does not depend on any scaling choice
SCALING_FREE = {("RC", "21"), ("CR", "12"), ("CC", "12"), ("CC", "21"), ("CN", "12"), ("NC", "21")}
LAMBDA_RANGE = (1e-4, 1e4)


# --- bilinear ---------------------------------------------------------------

@dataclass
class BilinearInput:
    pair: SwitchedPair
    u_lo: float
    u_hi: float
    u: list = field(default_factory=list)

    def __post_init__(self):
        if not (0 < self.u_lo <= self.u_hi < math.inf):
            raise ValueError("need 0 < u_lo <= u_hi < inf")
        self.u = [(float(dt), float(v)) for dt, v in self.u]
        if any(dt <= 0 or v <= 0 for dt, v in self.u):
            raise ValueError("input pieces need positive length and value")

    def integral(self, a: float, b: float) -> float:
        """Exact integral of u over [a, b]; u keeps its last value (1 if empty) afterwards."""
        total, t0 = 0.0, 0.0
        last = self.u[-1][1] if self.u else 1.0
        for dt, v in self.u:
            lo, hi = max(a, t0), min(b, t0 + dt)
            if hi > lo:
                total += v * (hi - lo)
            t0 += dt
        if b > t0:
            total += last * (b - max(a, t0))
        return total


def sbs_tau(bi: BilinearInput, eta: float) -> float:
    """Dwell time for the bilinear system from a fixed-basis bimodal certificate."""
    eta_u = bi.u_hi * eta
    res = dwell_flee(bi.pair, eta_u)
    best = None
    for key, t in (("12", res.tau12), ("21", res.tau21)):
        if (bi.pair.case, key) in SCALING_FREE:
            ok = True
        else:
            rep = verify_rect(bi.pair, t + 1e-6, eta_u, scaling_policy="prescribed",
                              prescribed=res.scaling, orders=(key,))
            ok = rep.passed
        if ok and (best is None or t < best):
            best = t
    if best is None:
        raise UnsupportedBranch(f"no fixed-basis certificate for case {bi.pair.case} at flee {eta_u:g}")
    return best / bi.u_lo


def flow_bilinear(bi: BilinearInput, sig: Signal, x0, samples_per_interval: int = 16) -> Trajectory:
    """Exact flow with each interval's exponent replaced by the integral of u."""
    x = np.asarray(x0, dtype=float).reshape(2)
    decs = {1: bi.pair.d1, 2: bi.pair.d2}
    times, states, modes, switches = [], [], [], []
    t0 = 0.0
    n = max(int(samples_per_interval), 1)
    for k, (m, dt) in enumerate(sig.durations):
        d = decs[m]
        ts = np.linspace(0.0, dt, n + 1)
        ws = np.array([bi.integral(t0, t0 + h) for h in ts])
        try:
            E = d.P @ mat2.expm(d.J, ws) @ mat2.inv(d.P)
        except mat2.Overflow as exc:
            raise mat2.Overflow(f"interval {k} overflowed") from exc
        xs = E @ x
        switches.append(len(times))
        times.extend(t0 + ts)
        states.extend(xs)
        modes.extend([m] * (n + 1))
        x = xs[-1]
        t0 += dt
    switches.append(len(times) - 1)
    return Trajectory(np.array(times), np.array(states), np.array(modes), switches)


# --- star graph ---------------------------------------------------------------

@dataclass(frozen=True)
class Leaf:
    decomp: mat2.JordanDecomp
    M: np.ndarray

    @property
    def abcd(self):
        M = self.M
        return float(M[0, 0]), float(M[0, 1]), float(M[1, 0]), float(M[1, 1])


@dataclass(frozen=True)
class StarSystem:
    A1: np.ndarray
    center: mat2.JordanDecomp
    leaves: tuple

    @property
    def center_class(self) -> JordanClass:
        return self.center.cls


def build_star(A1, leaves, tol_decomp: float = 1e-9) -> StarSystem:
    A1 = mat2.as_mat2(A1)
    d1 = mat2.real_jordan(A1, tol_decomp)
    if mat2.stability_class(d1) is not Stability.HURWITZ:
        raise ValueError("centre matrix must be Hurwitz")
    if not leaves:
        raise ValueError("a star needs at least one leaf")
    ds = []
    for A in leaves:
        d = mat2.real_jordan(mat2.as_mat2(A), tol_decomp)
        if d.stable or mat2.stability_class(d) is not Stability.UNSTABLE:
            raise ValueError("every leaf must be unstable")
        ds.append(d)
    if d1.scalar:
        first = next((d for d in ds if not d.scalar), None)
        if first is not None:
            d1 = d1.with_basis(first.P)
    out = []
    for d in ds:
        if d.scalar:
            d = d.with_basis(d1.P)
        P = d.P.copy()
        if mat2.det(mat2.inv(P) @ d1.P) < 0 and d.cls is JordanClass.REAL:
            P[:, 1] *= -1.0
        P = P * math.sqrt(abs(mat2.det(mat2.inv(P) @ d1.P)))
        d = d.with_basis(P)
        out.append(Leaf(d, mat2.inv(P) @ d1.P))
    return StarSystem(A1, d1, tuple(out))


def _real_center_leaf(leaf: Leaf, p1: float, eta: float, lam):
    """Leaf dwell time for centre diag(-p1, -q1) and centre scaling lambda (vectorised)."""
    lam = np.asarray(lam, dtype=float)
    l2 = lam * lam
    a, b, c, d = leaf.abcd
    dj = leaf.decomp
    if dj.cls is JordanClass.COMPLEX:
        # arg - 1 written as a sum of nonnegative terms (|det M| = 1); arccosh is
        # too sensitive near 1 to take it from the raw quadratic form
        u, v = math.sqrt(a * a + c * c) * lam, math.sqrt(b * b + d * d) / lam
        R2 = (a * b + c * d) ** 2
        x = 0.5 * (u - v) ** 2 + R2 / (1.0 + math.sqrt(1.0 + R2))
        return (dj.params[0] * eta + np.log1p(x + np.sqrt(x * (x + 2.0)))) / p1
    if dj.cls is JordanClass.DEFECTIVE:
        w = 0.5 * (c * c * l2 + d * d / l2)
        return (dj.params[0] * eta + np.arcsinh(w * eta)) / p1
    p, q = dj.params
    W2 = (b * d / l2 + a * c * l2) ** 2
    # sinh(x) sinh(x + delta) = W^2 sinh^2(delta/2) with x = p1 tau - q eta
    delta = (q - p) * eta
    rhs = np.cosh(delta) + 2.0 * W2 * math.sinh(0.5 * delta) ** 2
    x = 0.5 * (np.arccosh(np.maximum(rhs, 1.0)) - delta)
    return (q * eta + np.maximum(x, 0.0)) / p1


def _defective_center_rhs(leaf: Leaf, eta: float, eps):
    """Right side of n1 tau - ln theta(tau) = rhs for centre shear eps (vectorised)."""
    eps = np.asarray(eps, dtype=float)
    a, b, c, d = leaf.abcd
    dj = leaf.decomp
    col1 = a * a + (b + eps * a) ** 2
    col2 = c * c + (d + eps * c) ** 2
    if dj.cls is JordanClass.COMPLEX:
        return dj.params[0] * eta + np.arccosh(np.maximum(0.5 * (col1 + col2), 1.0))
    if dj.cls is JordanClass.DEFECTIVE:
        return dj.params[0] * eta + np.arcsinh(0.5 * col2 * eta)
    p, q = dj.params
    rk = np.sqrt(col1 * col2)
    y = 0.5 * (q - p) * eta
    return 0.5 * (p + q) * eta + np.vectorize(_asinh_ksinh)(rk, y)


def _complex_center_leaf(leaf: Leaf, alpha1: float, eta: float) -> float:
    a, b, c, d = leaf.abcd
    dj = leaf.decomp
    if dj.cls is JordanClass.COMPLEX:
        return (dj.params[0] * eta + math.acosh(max(1.0, 0.5 * (a * a + b * b + c * c + d * d)))) / alpha1
    if dj.cls is JordanClass.DEFECTIVE:
        return (dj.params[0] * eta + math.asinh(0.5 * (c * c + d * d) * eta)) / alpha1
    p, q = dj.params
    rk = math.sqrt((a * a + b * b) * (c * c + d * d))
    return (0.5 * (p + q) * eta + _asinh_ksinh(rk, 0.5 * (q - p) * eta)) / alpha1


def star_objective(star: StarSystem, eta: float, x):
    """max over leaves of the leaf dwell time at centre parameter x (log lambda or eps).

    For a defective centre the value returned is the largest right-hand side;
    the dwell time follows from one root solve.
    """
    cls = star.center.cls
    if cls is JordanClass.REAL:
        lam = np.exp(np.asarray(x, dtype=float))
        p1 = star.center.params[0]
        return np.max([_real_center_leaf(lf, p1, eta, lam) for lf in star.leaves], axis=0)
    if cls is JordanClass.DEFECTIVE:
        return np.max([_defective_center_rhs(lf, eta, x) for lf in star.leaves], axis=0)
    raise ValueError("a complex centre has no free scaling")


def _eps_window(star: StarSystem) -> float:
    scale = 10.0
    for lf in star.leaves:
        a, b, c, d = lf.abcd
        for num, den in ((b, a), (d, c)):
            if abs(den) > 1e-12:
                scale = max(scale, abs(num / den))
    return 4.0 * scale


def star_tau(star: StarSystem, eta: float, eps0: float | None = None, tol: float = 1e-10,
             n_grid: int = 1025):
    """Minimax dwell time for the star; returns (tau, params) with the centre scaling used."""
    if not eta >= 0:
        raise ValueError("flee time must be nonnegative")
    eps0 = default_margin(eta) if eps0 is None else eps0
    cls = star.center.cls
    if cls is JordanClass.COMPLEX:
        alpha1 = -star.center.params[0]
        vals = [_complex_center_leaf(lf, alpha1, eta) for lf in star.leaves]
        return max(vals), {"leaf_taus": vals}
    if cls is JordanClass.REAL:
        lo, hi = math.log(LAMBDA_RANGE[0]), math.log(LAMBDA_RANGE[1])
        f = lambda x: float(star_objective(star, eta, x))
        res = minimize_scalar(f, lo, hi, tol=tol, n_grid=n_grid)
        tau = res.fun + (eps0 if res.boundary else 0.0)
        return tau, {"lambda1": math.exp(res.x), "boundary": res.boundary}
    n1 = star.center.params[0]
    L = _eps_window(star)
    f = lambda x: float(star_objective(star, eta, x))
    res = minimize_scalar(f, -L, L, tol=tol, n_grid=n_grid)
    g = lambda t: n1 * t - log_theta(t)
    try:
        tau = _increasing_root(g, res.fun, tol)
    except SolverError as exc:
        raise SolverFailure("star/defective-centre", exc) from exc
    tau += eps0 if res.boundary else 0.0
    return tau, {"eps1": res.x, "boundary": res.boundary}


def leaf_pair(star: StarSystem, j: int) -> SwitchedPair:
    """The bimodal (centre, leaf j) pair in the star's shared centre basis."""
    lf = star.leaves[j]
    case = {JordanClass.REAL: "R", JordanClass.COMPLEX: "C", JordanClass.DEFECTIVE: "N"}
    name = case[star.center.cls] + case[lf.decomp.cls]
    return SwitchedPair(star.A1, lf.decomp.matrix(), star.center, lf.decomp, lf.M, name)


def star_scaling(params: dict) -> ScalingParams:
    return ScalingParams(lambda1=params.get("lambda1", 1.0), eps1=params.get("eps1", 0.0))
