"""Closed-form linear algebra for real 2x2 matrices.

Matrices are plain ``numpy`` arrays of shape (2, 2). Functions that take a
time argument accept arrays and broadcast, returning stacks of shape
``t.shape + (2, 2)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Mat2Error(ValueError):
    pass


class NonFinite(Mat2Error):
    pass


class DegenerateBasis(Mat2Error):
    pass


class SingularBasis(Mat2Error):
    pass


class NegativeArgument(Mat2Error):
    pass


class Overflow(ArithmeticError):
    pass


class EigenKind(enum.Enum):
    REAL_DISTINCT = "RealDistinct"
    REAL_REPEATED = "RealRepeatedDiagonalizable"
    DEFECTIVE = "Defective"
    COMPLEX = "ComplexPair"


class JordanClass(enum.Enum):
    REAL = "RealDiag"
    COMPLEX = "ComplexPair"
    DEFECTIVE = "Defective"


class Stability(enum.Enum):
    HURWITZ = "Hurwitz"
    UNSTABLE = "UnstableAdmissible"
    REJECTED = "Rejected"


def as_mat2(A) -> np.ndarray:
    M = np.array(A, dtype=float)
    if M.shape != (2, 2):
        raise Mat2Error(f"expected a 2x2 matrix, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise NonFinite("matrix has NaN or infinite entries")
    return M


def det(A) -> float:
    return float(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])


def inv(A) -> np.ndarray:
    D = det(A)
    if D == 0.0:
        raise SingularBasis("matrix is singular")
    return np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]]) / D


def spectral_norm(A) -> np.ndarray | float:
    """Largest singular value; works on stacks of shape (..., 2, 2)."""
    A = np.asarray(A, dtype=float)
    a, b = A[..., 0, 0], A[..., 0, 1]
    c, d = A[..., 1, 0], A[..., 1, 1]
    # sigma_max = (|z1| + |z2|) / 2 with z1 = (a+d, c-b), z2 = (a-d, b+c)
    out = 0.5 * (np.hypot(a + d, c - b) + np.hypot(a - d, b + c))
    return float(out) if out.ndim == 0 else out


def fleming_lt1(K) -> bool:
    """True iff ||K|| < 1, decided from the trace and determinant of K^T K."""
    K = as_mat2(K)
    G = K.T @ K
    dg = det(G)
    return bool(abs(dg) < 1.0 and abs(np.trace(G)) < 1.0 + dg)


def theta(t):
    """Spectral norm of the unit shear [[1, t], [0, 1]]."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise NegativeArgument("theta needs t >= 0")
    out = np.sqrt(1.0 + t_arr**2 / 2.0 + t_arr * np.sqrt(1.0 + t_arr**2 / 4.0))
    return float(out) if out.ndim == 0 else out


def log_theta(t):
    # ln theta(t) = asinh(t/2); avoids overflow of t**2 for huge t
    out = np.arcsinh(np.asarray(t, dtype=float) / 2.0)
    return float(out) if out.ndim == 0 else out


def default_tol_disc(A) -> float:
    return 1e-9 * (1.0 + spectral_norm(A) ** 2)


def classify_eigen(A, tol_disc: float | None = None) -> EigenKind:
    A = as_mat2(A)
    if tol_disc is None:
        tol_disc = default_tol_disc(A)
    tr = A[0, 0] + A[1, 1]
    disc = tr * tr - 4.0 * det(A)
    if disc < -tol_disc:
        return EigenKind.COMPLEX
    if abs(disc) <= tol_disc:
        lam = tr / 2.0
        if np.all(np.abs(A - lam * np.eye(2)) <= tol_disc):
            return EigenKind.REAL_REPEATED
        return EigenKind.DEFECTIVE
    return EigenKind.REAL_DISTINCT


@dataclass(frozen=True)
class JordanDecomp:
    """Real Jordan data with ``P @ J @ inv(P) == A``.

    ``params`` holds ``(p, q)`` for RealDiag, ``(alpha, beta)`` for
    ComplexPair and ``(n,)`` for Defective. For a Hurwitz RealDiag matrix
    the pair is the positive rates with ``J = diag(-p, -q)``, ``p <= q``;
    otherwise ``J = diag(p, q)`` with ``p <= q``. For Defective the
    eigenvalue is ``-n`` when stable and ``n`` otherwise.
    """

    cls: JordanClass
    params: tuple
    P: np.ndarray
    J: np.ndarray
    stable: bool

    @property
    def eigs(self) -> tuple[float, float]:
        if self.cls is JordanClass.COMPLEX:
            return (self.params[0], self.params[0])
        return (float(self.J[0, 0]), float(self.J[1, 1]))

    @property
    def scalar(self) -> bool:
        """True for a multiple of the identity (any basis is a Jordan basis)."""
        return self.cls is JordanClass.REAL and self.params[0] == self.params[1]

    def with_basis(self, P) -> "JordanDecomp":
        return JordanDecomp(self.cls, self.params, np.array(P, dtype=float), self.J, self.stable)

    def matrix(self) -> np.ndarray:
        return self.P @ self.J @ inv(self.P)


def _unit(v):
    return v / np.linalg.norm(v)


def real_jordan(A, tol_decomp: float = 1e-9, tol_disc: float | None = None) -> JordanDecomp:
    A = as_mat2(A)
    kind = classify_eigen(A, tol_disc)
    tr = A[0, 0] + A[1, 1]
    if kind is EigenKind.COMPLEX:
        alpha = tr / 2.0
        beta = math.sqrt(max(det(A) - alpha * alpha, 0.0))
        # eigenvector z = u + i v for alpha + i beta gives J = [[alpha, beta], [-beta, alpha]]
        if abs(A[0, 1]) >= abs(A[1, 0]):
            u = np.array([A[0, 1], alpha - A[0, 0]])
            v = np.array([0.0, beta])
        else:
            u = np.array([alpha - A[1, 1], A[1, 0]])
            v = np.array([beta, 0.0])
        scale = math.hypot(np.linalg.norm(u), np.linalg.norm(v))
        P = np.column_stack([u, v]) / scale
        J = np.array([[alpha, beta], [-beta, alpha]])
        dec = JordanDecomp(JordanClass.COMPLEX, (alpha, beta), P, J, alpha < 0)
    elif kind is EigenKind.DEFECTIVE:
        lam = tr / 2.0
        N = A - lam * np.eye(2)
        col = 0 if np.linalg.norm(N[:, 0]) >= np.linalg.norm(N[:, 1]) else 1
        v = _unit(N[:, col])
        # minimal-norm solution of N w = v using only the rank-one part of N;
        # the second singular value is rounding noise and must not be inverted
        U, S, Vt = np.linalg.svd(N)
        w = Vt[0] * (U[:, 0] @ v) / S[0]
        P = np.column_stack([v, w])
        J = np.array([[lam, 1.0], [0.0, lam]])
        stable = lam < 0
        dec = JordanDecomp(JordanClass.DEFECTIVE, (-lam if stable else lam,), P, J, stable)
    elif kind is EigenKind.REAL_REPEATED:
        lam = tr / 2.0
        stable = lam < 0
        r = -lam if stable else lam
        dec = JordanDecomp(JordanClass.REAL, (r, r), np.eye(2), lam * np.eye(2), stable)
    else:
        root = math.sqrt(tr * tr - 4.0 * det(A))
        # avoid cancellation in the smaller-magnitude eigenvalue
        big = (tr + math.copysign(root, tr)) / 2.0 if tr != 0 else root / 2.0
        small = det(A) / big
        lo, hi = sorted((big, small))
        stable = hi < 0
        order = (hi, lo) if stable else (lo, hi)
        cols = []
        for lam in order:
            N = A - lam * np.eye(2)
            # kernel of a rank-one 2x2 matrix: orthogonal to its dominant row
            row = N[0] if np.linalg.norm(N[0]) >= np.linalg.norm(N[1]) else N[1]
            v = _unit(np.array([-row[1], row[0]]))
            # fix the sign so the dominant entry is positive
            cols.append(v if v[np.argmax(np.abs(v))] > 0 else -v)
        P = np.column_stack(cols)
        J = np.diag(order)
        params = (-order[0], -order[1]) if stable else order
        dec = JordanDecomp(JordanClass.REAL, tuple(float(x) for x in params), P, J, stable)
    if abs(det(dec.P)) < 1e-14:
        raise DegenerateBasis("Jordan basis is numerically singular")
    err = spectral_norm(dec.matrix() - A)
    if err > max(tol_decomp * spectral_norm(A), 1e-300) and err > tol_decomp:
        raise DegenerateBasis(f"Jordan reconstruction error {err:.3g} exceeds tolerance")
    return dec


def stability_class(d: JordanDecomp) -> Stability:
    if d.cls is JordanClass.COMPLEX:
        alpha = d.params[0]
        return Stability.HURWITZ if alpha < 0 else (Stability.UNSTABLE if alpha > 0 else Stability.REJECTED)
    if d.cls is JordanClass.DEFECTIVE:
        lam = d.J[0, 0]
        return Stability.HURWITZ if lam < 0 else Stability.UNSTABLE
    lo, hi = sorted(d.eigs)
    if hi < 0:
        return Stability.HURWITZ
    if hi > 0:
        return Stability.UNSTABLE
    return Stability.REJECTED


def transition(P1, P2, prefer_plus: bool = False, flip: str | None = None) -> np.ndarray:
    """Normalized transition matrix ``s * inv(P2) @ P1`` with ``|det| = 1``.

    With ``prefer_plus`` and a negative determinant, ``flip`` says which
    basis may have a column negated without changing its Jordan form:
    ``"P2"`` (RealDiag unstable side), ``"P1"`` (RealDiag stable side) or
    ``"P2conj"`` for a ComplexPair, which post-multiplies P2 by
    ``diag(1, -1)`` and so reverses the sign of beta.
    """
    P1 = as_mat2(P1)
    P2 = as_mat2(P2)
    if abs(det(P1)) == 0.0 or abs(det(P2)) == 0.0:
        raise SingularBasis("transition needs invertible bases")
    M = inv(P2) @ P1
    D = det(M)
    if prefer_plus and D < 0:
        if flip in ("P2", "P2conj"):
            M = np.diag([1.0, -1.0]) @ M
        elif flip == "P1":
            M = M @ np.diag([1.0, -1.0])
        D = det(M)
    return M / math.sqrt(abs(D))


def _check_finite(X, what="matrix exponential"):
    if not np.all(np.isfinite(X)):
        raise Overflow(f"{what} overflowed")
    return X


def expm(J, t):
    """Exponential of a canonical real Jordan block, vectorised over ``t``."""
    J = np.asarray(J, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.zeros(t.shape + (2, 2))
    with np.errstate(over="ignore", invalid="ignore"):
        if J[1, 0] == 0.0 and J[0, 1] == 0.0:
            out[..., 0, 0] = np.exp(J[0, 0] * t)
            out[..., 1, 1] = np.exp(J[1, 1] * t)
        elif J[1, 0] == 0.0:
            lam = J[0, 0]
            g = np.exp(lam * t)
            out[..., 0, 0] = g
            out[..., 1, 1] = g
            out[..., 0, 1] = g * t * J[0, 1]
        else:
            alpha, beta = J[0, 0], J[0, 1]
            g = np.exp(alpha * t)
            cs, sn = np.cos(beta * t), np.sin(beta * t)
            out[..., 0, 0] = g * cs
            out[..., 0, 1] = g * sn
            out[..., 1, 0] = -g * sn
            out[..., 1, 1] = g * cs
    return _check_finite(out)


def sup_expm_norm(J, t_max: float = math.inf) -> float:
    """sup of ||expm(J, t)|| over t in [0, t_max]."""
    J = np.asarray(J, dtype=float)
    lam_max = max(J[0, 0], J[1, 1])
    if J[1, 0] == 0.0 and J[0, 1] == 0.0:
        return float(math.exp(lam_max * t_max)) if lam_max > 0 else 1.0
    if J[1, 0] != 0.0:
        alpha = J[0, 0]
        return float(math.exp(alpha * t_max)) if alpha > 0 else 1.0
    lam = J[0, 0]
    if lam >= 0:
        return float(math.exp(lam * t_max) * theta(t_max))
    # e^{lam t} theta(t): maximise on a grid then refine with the derivative sign
    n = -lam
    h = lambda s: -n * s + log_theta(s)
    hi = min(t_max, 10.0 / n + 10.0)
    grid = np.linspace(0.0, hi, 4001)
    vals = h(grid)
    k = int(np.argmax(vals))
    lo_, hi_ = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    for _ in range(100):
        m1 = lo_ + (hi_ - lo_) / 3
        m2 = hi_ - (hi_ - lo_) / 3
        if h(m1) < h(m2):
            lo_ = m1
        else:
            hi_ = m2
    return float(math.exp(max(vals[k], h(0.5 * (lo_ + hi_)))))
