"""Exact simulation of switched trajectories and switching-signal bookkeeping.

Each interval is propagated with ``P expm(J, dt) P^-1`` in the Jordan frame of
the active mode, so no integrator error enters the diagnostics.
"""

from __future__ import annotations

import csv
import enum
import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import mat2
from .dwellflee import dwell_flee
from .verify import ScalingParams, scaling_matrix

EPS_CLASS = 1e-9
# (case, grouping) pairs whose fixed-basis recipe also certifies a varying flee time
DYNAMIC_BRANCHES = {
    "RC": {"21"}, "CR": {"12"}, "NN": {"12", "21"}, "NC": {"12", "21"},
    "CN": {"12", "21"}, "NR": {"12"}, "RN": {"21"}, "CC": {"12", "21"},
}


class BadParams(ValueError):
    pass


class UnsupportedBranch(ValueError):
    pass


class SignalClass(enum.Enum):
    S_PRIME = "S_prime"
    S_ONLY = "S_only"
    NOT_IN_S = "NotInS"


@dataclass
class Signal:
    durations: list

    def __post_init__(self):
        self.durations = [(int(m), float(dt)) for m, dt in self.durations]
        if not self.durations:
            raise BadParams("a signal needs at least one interval")
        if self.durations[0][0] != 1:
            raise BadParams("signals start in mode 1")
        for k, (m, dt) in enumerate(self.durations):
            if not (dt > 0 and math.isfinite(dt)):
                raise BadParams(f"interval {k} has bad length {dt!r}")
            if (k % 2 == 0) != (m == 1):
                raise BadParams(f"interval {k}: mode 1 must occupy exactly the even slots")

    @property
    def dwell(self) -> list[float]:
        return [dt for m, dt in self.durations[0::2]]

    @property
    def flee(self) -> list[float]:
        return [dt for m, dt in self.durations[1::2]]

    @property
    def switch_times(self) -> np.ndarray:
        return np.concatenate([[0.0], np.cumsum([dt for _, dt in self.durations])])

    @classmethod
    def from_lengths(cls, lengths) -> "Signal":
        """Alternating signal from interval lengths, starting in mode 1."""
        return cls([(1 if k % 2 == 0 else 2, dt) for k, dt in enumerate(lengths)])


@dataclass
class Trajectory:
    times: np.ndarray
    states: np.ndarray
    modes: np.ndarray
    switch_indices: list = field(default_factory=list)

    def to_csv(self, fh=None, digits: int = 12) -> str | None:
        own = fh is None
        fh = io.StringIO() if own else fh
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t", "x1", "x2", "mode"])
        for t, x, m in zip(self.times, self.states, self.modes):
            w.writerow([f"{t:.{digits}g}", f"{x[0]:.{digits}g}", f"{x[1]:.{digits}g}", int(m)])
        return fh.getvalue() if own else None


def make_signal(tau: float, eta: float, policy: str = "corner", n_periods: int = 10,
                delta: float = 0.1, seed: int | None = None) -> Signal:
    if not (tau > 0 and eta > 0):
        raise BadParams("tau and eta must be positive")
    if n_periods < 1:
        raise BadParams("need at least one period")
    if policy == "corner":
        pairs = [(tau, eta)] * n_periods
    elif policy == "jitter":
        if not delta > 0:
            raise BadParams("jitter needs delta > 0")
        pairs = [(tau + delta, eta - min(delta, eta / 2.0))] * n_periods
    elif policy == "random":
        if not delta > 0:
            raise BadParams("random policy needs delta > 0")
        rng = np.random.default_rng(seed)
        pairs = list(zip(rng.uniform(tau, tau + delta, n_periods), rng.uniform(eta / 2.0, eta, n_periods)))
    else:
        raise BadParams(f"unknown policy {policy!r}")
    return Signal.from_lengths([x for p in pairs for x in p])


def signal_in_class(sig: Signal, tau: float, eta: float, tol: float = 1e-9,
                    eps_class: float = EPS_CLASS) -> SignalClass:
    t_k, s_k = sig.dwell, sig.flee
    if any(t < tau - tol for t in t_k) or any(s > eta + tol for s in s_k):
        return SignalClass.NOT_IN_S
    n = len(t_k)
    tail = range(n - math.ceil(n / 2), n)
    for k in tail:
        dt = t_k[k] - tau
        ds = eta - s_k[k] if k < len(s_k) else math.inf
        if max(abs(dt), abs(ds)) < eps_class:
            return SignalClass.S_ONLY
    return SignalClass.S_PRIME


def signal_in_dynamic_class(sig: Signal, pair, which: str, tol: float = 1e-9) -> bool:
    """Membership in the flee-dependent dwell classes S12 / S21."""
    key = {"S12": "12", "S21": "21", "12": "12", "21": "21"}.get(which)
    if key is None:
        raise BadParams(f"unknown class {which!r}")
    if key not in DYNAMIC_BRANCHES.get(pair.case, set()):
        raise UnsupportedBranch(f"no varying-flee certificate for case {pair.case}, grouping {key}")
    t_k, s_k = sig.dwell, sig.flee
    attr = "tau12" if key == "12" else "tau21"
    for k, s in enumerate(s_k):
        need = getattr(dwell_flee(pair, s), attr)
        # S12 pairs a flee with the dwell before it, S21 with the dwell after it
        j = k if key == "12" else k + 1
        if j < len(t_k) and t_k[j] < need - tol:
            return False
    return True


def _propagators(pair):
    return {1: pair.d1, 2: pair.d2}


def flow(pair, sig: Signal, x0, samples_per_interval: int = 16) -> Trajectory:
    x = np.asarray(x0, dtype=float).reshape(2)
    if not np.all(np.isfinite(x)):
        raise BadParams("x0 must be finite")
    decs = _propagators(pair)
    inv = {m: mat2.inv(d.P) for m, d in decs.items()}
    times, states, modes, switches = [], [], [], []
    t0 = 0.0
    n = max(int(samples_per_interval), 1)
    for k, (m, dt) in enumerate(sig.durations):
        d = decs[m]
        taus = np.linspace(0.0, dt, n + 1)
        try:
            E = d.P @ mat2.expm(d.J, taus) @ inv[m]
        except mat2.Overflow as exc:
            raise mat2.Overflow(f"interval {k} overflowed") from exc
        xs = E @ x
        if not np.all(np.isfinite(xs)):
            raise mat2.Overflow(f"interval {k} overflowed")
        # the closing sample repeats at the next switch instant with the new mode
        switches.append(len(times))
        times.extend(t0 + taus)
        states.extend(xs)
        modes.extend([m] * (n + 1))
        x = xs[-1]
        t0 += dt
    switches.append(len(times) - 1)
    return Trajectory(np.array(times), np.array(states), np.array(modes), switches)


def period_matrix(pair, t: float, s: float) -> np.ndarray:
    """Monodromy e^{A2 s} e^{A1 t} in the original coordinates."""
    d1, d2 = pair.d1, pair.d2
    E1 = d1.P @ mat2.expm(d1.J, t) @ mat2.inv(d1.P)
    E2 = d2.P @ mat2.expm(d2.J, s) @ mat2.inv(d2.P)
    return E2 @ E1


def decay_envelope(traj: Trajectory) -> list[float]:
    """Ratios of the state norm at successive period starts (every second switch)."""
    sw = traj.switch_indices
    starts = sw[0::2]
    norms = [float(np.linalg.norm(traj.states[i])) for i in starts]
    return [b / a if a > 0 else math.nan for a, b in zip(norms[:-1], norms[1:])]


def geometric_mean(r) -> float:
    r = np.asarray(r, dtype=float)
    if len(r) == 0:
        return math.nan
    return float(np.exp(np.mean(np.log(r))))


def flow_bound(pair, eta: float, sc: ScalingParams | None = None) -> float:
    """zeta * xi for bases V_i = P_i S_i; bounds ||x(t)|| / ||x0|| once the products are <= 1."""
    sc = sc or ScalingParams()
    V1 = pair.d1.P @ scaling_matrix(pair.d1, sc.lambda1, sc.eps1)
    V2 = pair.d2.P @ scaling_matrix(pair.d2, sc.lambda2, sc.eps2)
    n = mat2.spectral_norm
    V1i, V2i = mat2.inv(V1), mat2.inv(V2)
    zeta = max(n(V1) * n(V1i @ V2) * n(V2i @ V1) * n(V1i), n(V1) * n(V1i @ V2) * n(V2i))
    xi = mat2.sup_expm_norm(pair.d1.J) ** 2 * mat2.sup_expm_norm(pair.d2.J, eta)
    return float(zeta * xi)
