"""Three small switched pairs, start to finish.

Each pair is one Hurwitz matrix A1 and one unstable A2. For a flee bound eta
(the longest stretch spent in A2) we ask for the dwell time tau (the shortest
stretch A1 must hold) that guarantees decay.

    python3 demos/01_worked_examples.py
"""

import numpy as np

from switchdwell.dwellflee import build_pair, dwell_flee, tau_curve
from switchdwell.simulate import Signal, decay_envelope, flow, geometric_mean, period_matrix

# shear stable block against a shear unstable block
nn = build_pair([[-0.1, 1.0], [0.0, -0.1]], [[-2.8, 9.0], [-1.0, 3.2]])
r = dwell_flee(nn, 10.0)
print(f"nn: case {nn.case}, eta=10 -> tau12={r.tau12:.3f} tau21={r.tau21:.3f} tau={r.tau:.3f}")

# a concrete switching sequence that respects (tau, eta), with some slack
lengths = [90.71, 6.26, 90.3, 9.69, 88.21, 6.88, 89.63, 9.91, 88.56, 7.12, 90.05, 6.96]
tr = flow(nn, Signal.from_lengths(lengths), [10.0, -5.0])
env = decay_envelope(tr)
print(f"    |x| goes {np.linalg.norm([10, -5]):.2f} -> {np.linalg.norm(tr.states[-1]):.4f}; "
      f"per-period ratios {np.round(env, 3).tolist()}, geometric mean {geometric_mean(env):.3f}")

# real stable block against a complex unstable pair
rc = build_pair([[-0.1, 0.0], [0.4, -0.2]], [[0.0, 1.0], [-2.0, 1.0]])
print(f"\nrc: case {rc.case}")
for row in tau_curve(rc, [1.0, 5.0, 10.0]):
    print(f"    eta={row.eta:4.1f}  tau12={row.tau12:7.3f}  tau21={row.tau21:7.3f}  "
          f"best order {row.branch}  (line 5*eta+17.05 = {5 * row.eta + 17.05:.2f})")

# shear stable block against a real unstable pair
nr = build_pair([[-0.1, 2 ** 0.5], [0.0, -0.1]], [[0.1, 0.0], [-0.4, 0.2]])
print(f"\nnr: case {nr.case}")
for eta in (1.0, 5.0, 10.0):
    r = dwell_flee(nr, eta)
    print(f"    eta={eta:4.1f}  tau12={r.tau12:7.3f}  tau21={r.tau21:7.3f}")

# Smaller order-21 values have circulated for this pair (about 25.8, 31.7 and
# 39.7). A periodic signal that dwells that long and flees for eta is a fixed
# linear map per period; a spectral radius above one means it diverges, so
# those numbers cannot be dwell times.
print("    periodic corner signals at the smaller values:")
for tau, eta in ((25.76, 1.0), (31.71, 5.0), (39.68, 10.0)):
    rho = max(abs(np.linalg.eigvals(period_matrix(nr, tau, eta))))
    print(f"      dwell {tau:6.2f}, flee {eta:4.1f}: spectral radius {rho:.3f}")
