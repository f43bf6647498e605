"""Scalar root finding and minimisation used by the dwell-flee relations."""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class SolverError(ArithmeticError):
    pass


class NoBracket(SolverError):
    pass


class NoRoot(SolverError):
    pass


class InvalidInterval(ValueError):
    pass


class Bracket(NamedTuple):
    lo: float
    hi: float
    f_lo: float
    f_hi: float


class MinResult(NamedTuple):
    x: float
    fun: float
    boundary: bool


def _value(f, t) -> float:
    with np.errstate(over="ignore", invalid="ignore"):
        v = float(f(t))
    if math.isnan(v):
        raise SolverError(f"function returned NaN at t={t!r}")
    return v


def bisect(g: Callable[[float], float], br: Bracket, tol: float) -> float:
    """Shrink a sign-change bracket of ``g``; returns the upper end.

    The upper end is the side on which ``g`` has the sign of ``br.f_hi``,
    which for the increasing relations solved here is the conservative side.
    """
    lo, hi, f_lo, f_hi = br
    if f_lo == 0.0:
        return lo
    s_lo = f_lo > 0
    for _ in range(400):
        if hi - lo <= tol * (1.0 + abs(hi)):
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        fm = _value(g, mid)
        if fm == 0.0:
            return mid
        if (fm > 0) == s_lo:
            lo = mid
        else:
            hi = mid
    return hi


def solve_monotone(f: Callable[[float], float], target: float, t_start: float = 0.0,
                   tol: float = 1e-10) -> float:
    """Root of ``f(t) = target`` on ``[t_start, inf)`` for an eventually increasing f.

    Brackets by doubling ``hi - t_start`` from 1, then bisects. If
    ``f(t_start) >= target`` already, ``t_start`` is returned.
    """
    g = lambda t: _value(f, t) - target
    g0 = g(t_start)
    if g0 >= 0.0:
        return float(t_start)
    lo, f_lo = float(t_start), g0
    step = 1.0
    while step <= 2.0**60:
        hi = t_start + step
        f_hi = g(hi)
        if f_hi >= 0.0:
            return bisect(g, Bracket(lo, hi, f_lo, f_hi), tol)
        lo, f_lo = hi, f_hi
        step *= 2.0
    raise NoBracket(f"no sign change up to t={lo:.6g}; last value {f_lo:.6g}")


def solve_decreasing(f: Callable[[float], float], target: float, t_start: float = 0.0,
                     tol: float = 1e-10) -> float:
    """Root of ``f(t) = target`` past ``t_start`` for an eventually decreasing f."""
    return solve_monotone(lambda t: -f(t), -target, t_start, tol)


def largest_root(f: Callable[[float], float], t_max_hint: float, n_scan: int = 4096,
                 tol: float = 1e-10, guard: int = 64, max_doublings: int = 60,
                 tail_sign: int | None = None) -> float:
    """Largest root of ``f`` in ``(0, T)``; T grows from the hint until the tail is single-signed.

    The tail counts as settled when the last ``guard`` scan samples below T
    and the value at 2T all share one sign. Passing ``tail_sign`` insists on
    that sign, for functions known to end up positive (or negative).
    """
    if not t_max_hint > 0:
        raise InvalidInterval("t_max_hint must be positive")
    n_scan = max(int(n_scan), 2 * guard)
    T = float(t_max_hint)
    for _ in range(max_doublings):
        ts = np.linspace(0.0, T, n_scan + 1)[1:]
        with np.errstate(over="ignore", invalid="ignore"):
            vals = np.array([float(f(t)) for t in ts])
        if np.any(np.isnan(vals)):
            raise SolverError("function returned NaN during scan")
        tail = np.sign(vals[-guard:])
        far = np.sign(_value(f, 2.0 * T))
        settled = tail[0] != 0 and np.all(tail == tail[0]) and far == tail[0]
        if settled and tail_sign is not None and tail[0] != np.sign(tail_sign):
            settled = False
        if settled:
            sg = np.sign(vals)
            idx = np.nonzero(sg[:-1] * sg[1:] <= 0)[0]
            if len(idx) == 0:
                raise NoRoot(f"no sign change of f in (0, {T:.6g}]")
            i = int(idx[-1])
            if vals[i + 1] == 0.0:
                return float(ts[i + 1])
            return bisect(f, Bracket(ts[i], ts[i + 1], vals[i], vals[i + 1]), tol)
        T *= 2.0
    raise NoRoot("tail sign never settled")


def golden_section(g: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10,
                   max_iter: int = 500) -> tuple[float, float]:
    a, b = lo, hi
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    gc, gd = g(c), g(d)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if gc <= gd:
            b, d, gd = d, c, gc
            c = b - GOLDEN * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + GOLDEN * (b - a)
            gd = g(d)
    return (c, gc) if gc <= gd else (d, gd)


def minimize_scalar(g: Callable[[float], float], lo: float, hi: float, tol: float = 1e-10,
                    n_grid: int = 257) -> MinResult:
    """Grid search on ``[lo, hi]`` followed by golden-section refinement of the best cell."""
    if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
        raise InvalidInterval(f"bad interval [{lo}, {hi}]")
    xs = np.linspace(lo, hi, n_grid)
    vals = np.array([float(g(x)) for x in xs])
    vals = np.where(np.isnan(vals), np.inf, vals)
    k = int(np.argmin(vals))
    x_best, g_best = float(xs[k]), float(vals[k])
    a = xs[max(k - 1, 0)]
    b = xs[min(k + 1, n_grid - 1)]
    x_ref, g_ref = golden_section(g, a, b, tol)
    if g_ref < g_best:
        x_best, g_best = float(x_ref), float(g_ref)
    boundary = abs(x_best - lo) <= max(tol, (hi - lo) * 1e-9) or abs(x_best - hi) <= max(tol, (hi - lo) * 1e-9)
    return MinResult(x_best, g_best, boundary)
