"""Dwell-time / flee-time relations for a Hurwitz A1 and an unstable A2.

For a flee time eta, ``tau12(eta)`` bounds the product grouped as
(unstable after stable) and ``tau21(eta)`` the product grouped as
(stable after unstable). Either one certifies stability for signals that
stay at least tau in A1 and at most eta in A2; the reported ``tau`` is the
smaller of the two.

Each case is named by the Jordan classes of (A1, A2): R real-diagonalisable,
C complex pair, N defective.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import mat2
from .mat2 import JordanClass, Stability, log_theta
from .solve1d import (NoRoot, SolverError, largest_root, minimize_scalar, solve_decreasing,
                      solve_monotone)

ZERO_TOL = 1e-12
CASES = ("RR", "RC", "CR", "NN", "NC", "CN", "NR", "RN", "CC")
_LETTER = {JordanClass.REAL: "R", JordanClass.COMPLEX: "C", JordanClass.DEFECTIVE: "N"}


class PairError(ValueError):
    pass


class NotHurwitz(PairError):
    pass


class NotUnstable(PairError):
    pass


class ZeroMatrix(PairError):
    pass


class SolverFailure(SolverError):
    def __init__(self, subcase: str, cause: Exception):
        super().__init__(f"[{subcase}] {cause}")
        self.subcase = subcase
        self.cause = cause


@dataclass(frozen=True)
class SwitchedPair:
    A1: np.ndarray
    A2: np.ndarray
    d1: mat2.JordanDecomp
    d2: mat2.JordanDecomp
    M: np.ndarray
    case: str

    @property
    def abcd(self) -> tuple[float, float, float, float]:
        M = self.M
        return float(M[0, 0]), float(M[0, 1]), float(M[1, 0]), float(M[1, 1])


@dataclass
class DwellFleeResult:
    eta: float
    tau12: float | None
    tau21: float | None
    tau: float
    case: str
    subcase: str
    margin: float = 0.0
    scaling: dict = field(default_factory=dict)
    unavailable: dict = field(default_factory=dict)

    @property
    def branch(self) -> str:
        if self.tau21 is None:
            return "12"
        if self.tau12 is None:
            return "21"
        return "12" if self.tau12 < self.tau21 else "21"


def default_margin(eta: float) -> float:
    return 1e-6 * (1.0 + eta)


def build_pair(A1, A2, tol_decomp: float = 1e-9, tol_disc: float | None = None) -> SwitchedPair:
    """Decompose both matrices, align their bases and assign the case.

    A multiple of the identity admits any basis as a Jordan basis, so it
    takes the basis of the other subsystem (making M the identity).
    """
    A1 = mat2.as_mat2(A1)
    A2 = mat2.as_mat2(A2)
    if not np.any(A1) or not np.any(A2):
        raise ZeroMatrix("both subsystem matrices must be nonzero")
    d1 = mat2.real_jordan(A1, tol_decomp, tol_disc)
    if mat2.stability_class(d1) is not Stability.HURWITZ:
        raise NotHurwitz("A1 is not Hurwitz stable")
    d2 = mat2.real_jordan(A2, tol_decomp, tol_disc)
    if d2.stable or mat2.stability_class(d2) is not Stability.UNSTABLE:
        raise NotUnstable("A2 has no admissible growth direction")
    if d1.scalar:
        d1 = d1.with_basis(d2.P)
    elif d2.scalar:
        d2 = d2.with_basis(d1.P)
    P1, P2 = d1.P.copy(), d2.P.copy()
    if mat2.det(mat2.inv(P2) @ P1) < 0:
        if d2.cls is JordanClass.REAL:
            P2[:, 1] *= -1.0
        elif d1.cls is JordanClass.REAL:
            P1[:, 1] *= -1.0
    k = math.sqrt(abs(mat2.det(mat2.inv(P2) @ P1)))
    P2 = P2 * k
    d1, d2 = d1.with_basis(P1), d2.with_basis(P2)
    M = mat2.transition(P1, P2)
    case = _LETTER[d1.cls] + _LETTER[d2.cls]
    return SwitchedPair(A1, A2, d1, d2, M, case)


# --- numerically careful pieces -------------------------------------------

def _asinh_ksinh(k: float, y: float) -> float:
    """asinh(k * sinh(y)) for k >= 0, y >= 0 without overflow."""
    if k == 0.0 or y == 0.0:
        return 0.0
    if y < 350.0:
        return math.asinh(k * math.sinh(y))
    L = math.log(k) + y - math.log(2.0)
    return L + math.log1p(math.sqrt(1.0 + math.exp(-2.0 * L)))


def _asinh_rcosh_sinh(R: float, y: float) -> float:
    """asinh(R cosh(y) + sinh(y)) for R >= 0, y >= 0 without overflow."""
    if y < 350.0:
        return math.asinh(R * math.cosh(y) + math.sinh(y))
    return y + math.log1p(R)


def _exp(x):
    with np.errstate(over="ignore"):
        try:
            return math.exp(x)
        except OverflowError:
            return math.inf


def _increasing_root(G, target: float, tol: float) -> float:
    """Root of G(t) = target on the branch where G increases for good.

    G is one of the relations with G(0) <= 0 that may dip below zero before
    rising; the bracket starts at the positive zero of G in that case.
    """
    t0 = 0.0
    h = 1e-9
    if G(h) < 0.0:
        t0 = solve_monotone(G, 0.0, h, tol)
    return solve_monotone(G, target, t0, tol)


def _last_root(F, hint: float, tol: float) -> float:
    """Largest root of F (F eventually positive); 0 if F never changes sign."""
    try:
        return largest_root(F, max(hint, 1.0), tol=tol, tail_sign=1)
    except NoRoot:
        return 0.0


def _sinh_over_cosh(x: float, y: float) -> float:
    """sinh(x) / cosh(y) without overflow."""
    y = abs(y)
    return (_exp(x - y) - _exp(-x - y)) / (1.0 + math.exp(-2.0 * y))


def _is_zero(x: float) -> bool:
    return abs(x) <= ZERO_TOL


# --- RR --------------------------------------------------------------------

def _rr(pair, eta, eps0, tol):
    p1, q1 = pair.d1.params
    p2, q2 = pair.d2.params
    a, b, c, d = pair.abcd
    if p1 == q1 or p2 == q2:
        t = max(p2 / p1, q2 / q1) * eta
        return t, t, "RR/commuting", 0.0, {"lambda1": 1.0, "lambda2": 1.0}
    if _is_zero(b) or _is_zero(c):
        t = max(q2 / q1, p2 / p1) * eta + eps0
        return t, t, "RR/offdiag-zero", eps0, {}
    if _is_zero(a) or _is_zero(d):
        t = (q2 / p1) * eta + eps0
        return t, t, "RR/diag-zero", eps0, {}
    ad = a * d
    eq2, ep2 = _exp(q2 * eta), _exp(p2 * eta)
    span = eq2 - ep2

    def lam1(T):
        return (b * b * d * d / (a * a * c * c) * _exp(-2.0 * (q1 - p1) * T)) ** 0.125

    lam2 = (a * a * b * b / (c * c * d * d) * _exp(2.0 * (q2 - p2) * eta)) ** 0.125

    if 0.0 < ad < 1.0:
        sub = "RR/eps=-1"

        def R_plus(t):
            num = -(_exp(q2 * eta - p1 * t) - 1.0) * (_exp(p2 * eta - q1 * t) - 1.0)
            return num - ad * (_exp(-p1 * t) - _exp(-q1 * t)) * span

        t0 = max(p2 / p1, q2 / q1) * eta
        T = _solve(sub, lambda: solve_decreasing(R_plus, 0.0, t0, tol))
        return T, T, sub, 0.0, {"lambda1": lam1(T), "lambda2": lam2}

    pt2 = max(0.0, p2)
    ept = _exp(pt2 * eta)
    if ad < 0.0:
        sub = "RR/eps=+1/ad<0"

        def l_minus_12(t):
            num = (_exp(q2 * eta - p1 * t) - 1.0) * (1.0 + _exp(p2 * eta - q1 * t))
            return num - ad * (_exp(-p1 * t) + _exp(-q1 * t)) * span

        def l_plus_21(t):
            num = (1.0 + _exp(pt2 * eta - q1 * t)) * (1.0 - _exp(q2 * eta - p1 * t))
            return num - ad * (ept + eq2) * (_exp(-q1 * t) - _exp(-p1 * t))

        t0 = q2 * eta / p1
        t12 = _solve(sub, lambda: solve_decreasing(l_minus_12, 0.0, t0, tol))
        t21 = _solve(sub, lambda: solve_monotone(l_plus_21, 0.0, t0, tol))
        return t12, t21, sub, 0.0, {"lambda1": lam1(t12), "lambda2": lam2}

    sub = "RR/eps=+1/ad>1"

    def l_plus_12(t):
        num = (1.0 + _exp(q2 * eta - p1 * t)) * (1.0 - _exp(p2 * eta - q1 * t))
        return num - ad * (_exp(-p1 * t) + _exp(-q1 * t)) * span

    def l_minus_21(t):
        # the denominator is negative, so this is |den| * (l_minus - ad)
        num = (_exp(pt2 * eta - q1 * t) - 1.0) * (1.0 + _exp(q2 * eta - p1 * t))
        return ad * (ept + eq2) * (_exp(-q1 * t) - _exp(-p1 * t)) - num

    T12 = _solve(sub, lambda: solve_monotone(l_plus_12, 0.0, 0.0, tol))
    t12 = max(p2 * eta / p1, T12)
    T21 = _solve(sub, lambda: _last_root(l_minus_21, 2.0 * q2 * eta / p1, tol))
    t21 = max(q2 * eta / p1, T21)
    return t12, t21, sub, 0.0, {"lambda1": lam1(t12), "lambda2": lam2}


def _solve(subcase, fn):
    try:
        return fn()
    except SolverError as exc:
        raise SolverFailure(subcase, exc) from exc


def tau_rr(pair: SwitchedPair, eta: float, eps0: float | None = None, tol: float = 1e-10):
    eps0 = default_margin(eta) if eps0 is None else eps0
    t12, t21, sub, _, _ = _rr(pair, eta, eps0, tol)
    return t12, t21, sub


# --- RC / CR ---------------------------------------------------------------

def _rc_tau12(R: float, p1: float, q1: float, alpha2: float, eta: float, tol: float) -> float:
    g, s = 0.5 * (q1 - p1), 0.5 * (q1 + p1)
    R = abs(R)

    G = lambda t: s * t - _asinh_rcosh_sinh(R, g * t)
    return solve_monotone(G, alpha2 * eta, 0.0, tol)


def _rc_tau21(K: float, p1: float, q1: float, alpha2: float, eta: float, tol: float) -> float:
    g, s = 0.5 * (q1 - p1), 0.5 * (q1 + p1)
    rk = math.sqrt(K)
    G = lambda t: s * t - _asinh_ksinh(rk, g * t)
    return _increasing_root(G, alpha2 * eta, tol)


def _rc(pair, eta, eps0, tol):
    p1, q1 = pair.d1.params
    alpha2 = pair.d2.params[0]
    a, b, c, d = pair.abcd
    if p1 == q1:
        t = alpha2 * eta / p1
        return t, t, "RC/commuting", 0.0, {"lambda1": 1.0}
    R = a * b + c * d
    K = (a * a + c * c) * (b * b + d * d)
    t12 = _solve("RC/12", lambda: _rc_tau12(R, p1, q1, alpha2, eta, tol))
    t21 = _solve("RC/21", lambda: _rc_tau21(K, p1, q1, alpha2, eta, tol))
    lam1 = ((b * b + d * d) / (a * a + c * c) * _exp(-(q1 - p1) * t12)) ** 0.25
    return t12, t21, "RC", 0.0, {"lambda1": lam1}


def tau_rc(pair: SwitchedPair, eta: float, tol: float = 1e-10):
    t12, t21, *_ = _rc(pair, eta, 0.0, tol)
    return t12, t21


def _cr_parts(a, b, c, d, alpha1, p2, q2, eta):
    g = 0.5 * (q2 - p2)
    base = (q2 + p2) / (2.0 * alpha1) * eta
    rk = math.sqrt((a * a + b * b) * (c * c + d * d))
    t12 = base + _asinh_ksinh(rk, g * eta) / alpha1
    R = abs(a * c + b * d)
    t21 = base + _asinh_rcosh_sinh(R, g * eta) / alpha1
    return t12, t21


def _cr(pair, eta, eps0, tol):
    alpha1 = -pair.d1.params[0]
    p2, q2 = pair.d2.params
    a, b, c, d = pair.abcd
    if p2 == q2:
        t = p2 * eta / alpha1
        return t, t, "CR/commuting", 0.0, {"lambda2": 1.0}
    t12, t21 = _cr_parts(a, b, c, d, alpha1, p2, q2, eta)
    lam2 = ((a * a + b * b) / (c * c + d * d) * _exp((q2 - p2) * eta)) ** 0.25
    return t12, t21, "CR", 0.0, {"lambda2": lam2}


def tau_cr(pair: SwitchedPair, eta: float, tol: float = 1e-10):
    t12, t21, *_ = _cr(pair, eta, 0.0, tol)
    return t12, t21


# --- defective stable side -------------------------------------------------

def _nn(pair, eta, eps0, tol):
    n1 = pair.d1.params[0]
    n2 = pair.d2.params[0]
    a, b, c, d = pair.abcd
    if _is_zero(c):
        K, L = d * d / 2.0, a * a / 2.0
        e1, e2 = -b / a, b / d
    else:
        K = L = c * c / 2.0
        e1, e2 = -d / c, a / c
    g12 = lambda t: n1 * t - log_theta(t)
    g21 = lambda t: n1 * t - math.asinh(L * t)
    t12 = _solve("NN/12", lambda: _increasing_root(g12, n2 * eta + math.asinh(K * eta), tol))
    t21 = _solve("NN/21", lambda: _increasing_root(g21, n2 * eta + log_theta(eta), tol))
    return t12, t21, "NN", 0.0, {"eps1": e1, "eps2": e2}


def tau_nn(pair: SwitchedPair, eta: float, tol: float = 1e-10):
    t12, t21, *_ = _nn(pair, eta, 0.0, tol)
    return t12, t21


def _radical(s: float) -> float:
    # sqrt((s + 1/s)^2 / 4 - 1) written without cancellation
    return abs(s - 1.0 / s) / 2.0


def _nc(pair, eta, eps0, tol):
    n1 = pair.d1.params[0]
    alpha2 = pair.d2.params[0]
    a, b, c, d = pair.abcd
    s = a * a + c * c
    g12 = lambda t: n1 * t - log_theta(t)
    g21 = lambda t: n1 * t - math.asinh(0.5 * s * t)
    t12 = _solve("NC/12", lambda: _increasing_root(g12, alpha2 * eta + math.asinh(_radical(s)), tol))
    t21 = _solve("NC/21", lambda: _increasing_root(g21, alpha2 * eta, tol))
    return t12, t21, "NC", 0.0, {"eps1": -(a * b + c * d) / s}


def tau_nc(pair: SwitchedPair, eta: float, tol: float = 1e-10):
    t12, t21, *_ = _nc(pair, eta, 0.0, tol)
    return t12, t21


def _cn(pair, eta, eps0, tol):
    alpha1 = -pair.d1.params[0]
    n2 = pair.d2.params[0]
    a, b, c, d = pair.abcd
    s = c * c + d * d
    t12 = (n2 * eta + math.asinh(0.5 * s * eta)) / alpha1
    t21 = (n2 * eta + log_theta(eta) + math.asinh(_radical(s))) / alpha1
    return t12, t21, "CN", 0.0, {"eps2": (a * c + b * d) / s}


def tau_cn(pair: SwitchedPair, eta: float, tol: float = 1e-10):
    t12, t21, *_ = _cn(pair, eta, 0.0, tol)
    return t12, t21


def optimal_shear(x: float, y: float, u: float, v: float) -> float:
    """Shear minimising (x^2 + (u + e x)^2)(y^2 + (v + e y)^2) when x v - y u = 1.

    For a pair with ``k = x y`` the minimum is ``((r + 1/r) / 2)^2`` with
    ``r = max(2|k|, 1)``.
    """
    if _is_zero(x):
        return -v / y
    if _is_zero(y):
        return -u / x
    k = x * y
    m = min(2.0 * abs(k), 1.0)
    return -(x * v + u * y) / (2.0 * k) + math.sqrt(max(1.0 / (m * m) - 1.0, 0.0))


def _nr(pair, eta, eps0, tol):
    n1 = pair.d1.params[0]
    p2, q2 = pair.d2.params
    a, b, c, d = pair.abcd
    ac = a * c
    r = max(2.0 * abs(ac), 1.0)
    rk = 0.5 * (1.0 / r + r)
    g12 = lambda t: n1 * t - log_theta(t)
    target = 0.5 * (p2 + q2) * eta + _asinh_ksinh(rk, 0.5 * (q2 - p2) * eta)
    t12 = _solve("NR/12", lambda: _increasing_root(g12, target, tol))
    scaling = {"eps1": optimal_shear(a, c, b, d)}
    margin = 0.0
    if p2 == q2:
        if _is_zero(ac):
            sub, t21, margin = "NR/21/equal/ac=0", q2 * eta / n1 + eps0, eps0
        else:
            sub = "NR/21/equal"
            g = lambda t: n1 * t - math.asinh(abs(ac) * t)
            t21 = _solve(sub, lambda: _increasing_root(g, q2 * eta, tol))
        return t12, t21, sub, margin, scaling
    pt2 = max(0.0, p2)
    mu, nu = 0.5 * (q2 - pt2), 0.5 * (q2 + pt2)
    ch, sh = math.cosh(mu * eta), math.sinh(mu * eta)
    if _is_zero(ac):
        return t12, q2 * eta / n1 + eps0, "NR/21/ac=0", eps0, scaling
    scaling["lambda2"] = (a * a / (c * c) * _exp(2.0 * mu * eta)) ** 0.25
    start = nu * eta / n1
    if ac > 0.0 or ac <= -n1:
        sub = "NR/21/ac-outside"
        if ac > 0.0:
            F = lambda t: np.sinh(n1 * t - nu * eta) - sh - ac * t * ch
        else:
            F = lambda t: np.sinh(n1 * t - nu * eta) + sh + ac * t * ch
        t21 = _solve(sub, lambda: _last_root(F, 2.0 * start, tol))
        return t12, t21, sub, 0.0, scaling
    sub = "NR/21/ac-inside"
    Fp = lambda t: np.sinh(n1 * t - nu * eta) - sh - ac * t * ch
    Fm = lambda t: np.sinh(n1 * t - nu * eta) + sh - n1 * t * ch
    tp = _solve(sub, lambda: _last_root(Fp, 2.0 * start, tol))
    tm = _solve(sub, lambda: _last_root(Fm, 2.0 * q2 * eta / n1, tol))
    return t12, max(tp, tm), sub, 0.0, scaling


def tau_nr(pair: SwitchedPair, eta: float, eps0: float | None = None, tol: float = 1e-10):
    eps0 = default_margin(eta) if eps0 is None else eps0
    t12, t21, sub, *_ = _nr(pair, eta, eps0, tol)
    return t12, t21, sub


def _rn(pair, eta, eps0, tol):
    p1, q1 = pair.d1.params
    n2 = pair.d2.params[0]
    a, b, c, d = pair.abcd
    cd = c * d
    g, s = 0.5 * (q1 - p1), 0.5 * (q1 + p1)
    r = max(2.0 * abs(cd), 1.0)
    rk = 0.5 * (1.0 / r + r)
    G = lambda t: s * t - _asinh_ksinh(rk, g * t)
    t21 = _solve("RN/21", lambda: _increasing_root(G, n2 * eta + log_theta(eta), tol))
    # E2^{-1} M has entries (a - e c, b - e d; c, d)
    scaling = {"eps2": optimal_shear(c, d, -a, -b)}
    if _is_zero(cd):
        return n2 * eta / p1 + eps0, t21, "RN/12/cd=0", eps0, scaling
    t12, lam1 = _solve("RN/12", lambda: _rn_tau12(p1, q1, n2, c, d, eta, tol))
    scaling["lambda1"] = lam1
    return t12, t21, "RN/12/fixed-lambda", 0.0, scaling


def _rn_excess(t, kappa, s, p1, q1, n2, c, d):
    """1 - ||X||_F^2 + det(X)^2 with the sign flipped, on a (t, s) outer grid.

    X is the order-12 product with D1 = diag(lambda, 1/lambda), kappa = lambda^4.
    For a planar matrix with det(X) < 1, ||X|| < 1 iff this is negative.
    """
    t = np.asarray(t, dtype=float)[:, None]
    s = np.asarray(s, dtype=float)[None, :]
    k = c * d
    u2, v2 = np.exp(-2.0 * p1 * t), np.exp(-2.0 * q1 * t)
    E = np.exp(2.0 * n2 * s)
    B = ((1.0 + s * k) ** 2 * u2 + (1.0 - s * k) ** 2 * v2
         + s * s * (d**4 * v2 / kappa + c**4 * kappa * u2))
    return E * B - 1.0 - E * E * u2 * v2


def _rn_tau12(p1, q1, n2, c, d, eta, tol):
    """Dwell time for the (A2 after A1) grouping with one fixed diagonal scaling.

    The value is minimised over the scaling; the worst flee time is s = eta
    when cd > 0 and is located on a grid of s otherwise.
    """
    ss = np.array([eta]) if c * d > 0 else np.linspace(0.0, eta, 129)
    t_det = 2.0 * n2 * eta / (p1 + q1)

    def last_bad(kappa):
        worst = lambda t: _rn_excess(t, kappa, ss, p1, q1, n2, c, d).max(axis=1)
        T = max(4.0 * (n2 * eta + 1.0) / p1, 1.0)
        for _ in range(60):
            ts = np.linspace(0.0, T, 513)[1:]
            w = worst(ts)
            if np.all(w[-64:] < 0.0) and worst(np.array([2.0 * T]))[0] < 0.0:
                break
            T *= 2.0
        else:
            return math.inf
        bad = np.nonzero(w >= 0.0)[0]
        i = int(bad[-1]) if len(bad) else -1
        lo, hi = (float(ts[i]), float(ts[i + 1])) if i >= 0 else (0.0, float(ts[0]))
        if hi <= t_det or lo <= t_det:
            # det X = 1 at (t_det, eta), so the excess only grazes zero just
            # above it; rescan that stretch finely instead of trusting t_det
            j = int(np.searchsorted(ts, t_det, side="right"))
            top = float(ts[j]) if j < len(ts) else 2.0 * T
            fine = np.linspace(t_det, top, 1025)
            wf = worst(fine)
            badf = np.nonzero(wf >= 0.0)[0]
            if len(badf) == 0:
                return t_det
            k = int(badf[-1])
            if k == len(fine) - 1:
                return top
            lo, hi = float(fine[k]), float(fine[k + 1])
        while hi - lo > tol * (1.0 + hi):
            mid = 0.5 * (lo + hi)
            if worst(np.array([mid]))[0] >= 0.0:
                lo = mid
            else:
                hi = mid
        return max(hi, t_det)

    centre = math.log(d * d / (c * c))
    res = minimize_scalar(lambda x: last_bad(math.exp(x)), centre - 12.0, centre + 12.0,
                          tol=1e-6, n_grid=33)
    return res.fun, math.exp(res.x / 4.0)


def tau_rn(pair: SwitchedPair, eta: float, eps0: float | None = None, tol: float = 1e-10):
    eps0 = default_margin(eta) if eps0 is None else eps0
    t12, t21, sub, *_ = _rn(pair, eta, eps0, tol)
    return t12, t21, sub


def _cc(pair, eta, eps0, tol):
    alpha1 = -pair.d1.params[0]
    alpha2 = pair.d2.params[0]
    t = (alpha2 * eta + math.acosh(max(1.0, float(np.sum(pair.M**2)) / 2.0))) / alpha1
    return t, t, "CC", 0.0, {}


def tau_cc(pair: SwitchedPair, eta: float, tol: float = 1e-10):
    t12, t21, *_ = _cc(pair, eta, 0.0, tol)
    return t12, t21


_DISPATCH = {"RR": _rr, "RC": _rc, "CR": _cr, "NN": _nn, "NC": _nc, "CN": _cn,
             "NR": _nr, "RN": _rn, "CC": _cc}


def dwell_flee(pair: SwitchedPair, eta: float, eps0: float | None = None,
               tol: float = 1e-10) -> DwellFleeResult:
    if not eta >= 0.0:
        raise ValueError("flee time must be nonnegative")
    eps0 = default_margin(eta) if eps0 is None else eps0
    t12, t21, sub, margin, scaling = _DISPATCH[pair.case](pair, float(eta), eps0, tol)
    t12, t21 = float(t12), float(t21)
    scaling = {k: float(v) for k, v in scaling.items()}
    return DwellFleeResult(float(eta), t12, t21, min(t12, t21), pair.case, sub, margin, scaling)


def tau_curve(pair: SwitchedPair, etas, eps0: float | None = None,
              tol: float = 1e-10) -> list[DwellFleeResult]:
    etas = [float(e) for e in etas]
    if any(e < 0 for e in etas):
        raise ValueError("flee times must be nonnegative")
    out = [dwell_flee(pair, e, eps0, tol) for e in etas]
    order = np.argsort(etas)
    for i, j in zip(order[:-1], order[1:]):
        for key in ("tau12", "tau21"):
            if getattr(out[j], key) < getattr(out[i], key) - 1e-8:
                raise ArithmeticError(f"{key} decreased between eta={etas[i]} and eta={etas[j]}")
    return out
