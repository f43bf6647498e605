"""Shared constructors for tests: pairs with a chosen transition matrix."""

import numpy as np

from switchdwell import mat2
from switchdwell.dwellflee import SwitchedPair
from switchdwell.mat2 import JordanClass

_CLS = {"R": JordanClass.REAL, "C": JordanClass.COMPLEX, "N": JordanClass.DEFECTIVE}


def block(letter, params, stable):
    if letter == "R":
        p, q = params
        return np.diag([-p, -q]) if stable else np.diag([p, q])
    if letter == "C":
        a, b = params
        return np.array([[a, b], [-b, a]])
    (n,) = params
    lam = -n if stable else n
    return np.array([[lam, 1.0], [0.0, lam]])


def synthetic_pair(case, params1, params2, M):
    """Pair with Jordan data as given and ``P1 = I``, ``P2 = inv(M)``."""
    M = np.array(M, dtype=float)
    J1 = block(case[0], params1, True)
    J2 = block(case[1], params2, False)
    P1, P2 = np.eye(2), mat2.inv(M)
    d1 = mat2.JordanDecomp(_CLS[case[0]], tuple(params1), P1, J1, True)
    d2 = mat2.JordanDecomp(_CLS[case[1]], tuple(params2), P2, J2, False)
    return SwitchedPair(J1, P2 @ J2 @ M, d1, d2, M, case)


def unimodular(rng, max_entry=3.0):
    while True:
        a, b, c = rng.uniform(-max_entry, max_entry, 3)
        if abs(a) > 0.2:
            d = (1.0 + b * c) / a
            if abs(d) <= 2 * max_entry:
                return np.array([[a, b], [c, d]])
