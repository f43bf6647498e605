"""Random admissible pairs for each case, used by tests, demos and benchmarks."""

from __future__ import annotations

import numpy as np

from .dwellflee import CASES, build_pair


def _basis(rng: np.random.Generator, max_cond: float = 20.0) -> np.ndarray:
    while True:
        P = rng.normal(size=(2, 2))
        if np.linalg.cond(P) < max_cond:
            return P


def _block(letter: str, stable: bool, rng: np.random.Generator) -> np.ndarray:
    if letter == "R":
        if stable:
            p = rng.uniform(0.1, 1.0)
            return np.diag([-p, -(p + rng.uniform(0.05, 1.0))])
        p = rng.uniform(-0.5, 0.5)
        return np.diag([p, max(p, 0.0) + rng.uniform(0.05, 1.0)])
    if letter == "C":
        alpha = rng.uniform(-1.0, -0.1) if stable else rng.uniform(0.05, 0.5)
        beta = rng.uniform(0.2, 2.0)
        return np.array([[alpha, beta], [-beta, alpha]])
    lam = -rng.uniform(0.1, 1.0) if stable else rng.uniform(0.02, 0.5)
    return np.array([[lam, 1.0], [0.0, lam]])


def random_matrices(case: str, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    if case not in CASES:
        raise ValueError(f"unknown case {case!r}")
    out = []
    for letter, stable in ((case[0], True), (case[1], False)):
        P = _basis(rng)
        out.append(P @ _block(letter, stable, rng) @ np.linalg.inv(P))
    return out[0], out[1]


def random_pair(case: str, rng: np.random.Generator):
    """Random pair of the requested case; resamples until classification agrees."""
    for _ in range(100):
        A1, A2 = random_matrices(case, rng)
        try:
            pair = build_pair(A1, A2)
        except ValueError:
            continue
        if pair.case == case:
            return pair
    raise RuntimeError(f"could not sample a {case} pair")
