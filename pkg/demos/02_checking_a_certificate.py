"""How far to trust a computed dwell time.

The closed forms are sufficient conditions. This script checks one random
pair three independent ways: a grid check of the scaled product norm, a brute
force search for the smallest dwell time the same norm test certifies, and a
simulation with a signal that hovers just inside the limits.

    python3 demos/02_checking_a_certificate.py [CASE] [SEED]
"""

import sys

import numpy as np

from switchdwell.dwellflee import dwell_flee
from switchdwell.sampling import random_pair
from switchdwell.simulate import decay_envelope, flow, flow_bound, geometric_mean, make_signal
from switchdwell.verify import brute_force_tau, verify_rect

case = sys.argv[1] if len(sys.argv) > 1 else "RN"
seed = int(sys.argv[2]) if len(sys.argv) > 2 else 3
pair = random_pair(case, np.random.default_rng(seed))
eta = 2.0

print(f"case {pair.case}")
print("A1 =", np.round(pair.A1, 4).tolist())
print("A2 =", np.round(pair.A2, 4).tolist())

r = dwell_flee(pair, eta)
print(f"\neta={eta}: tau12={r.tau12:.4f} tau21={r.tau21:.4f} -> tau={r.tau:.4f} ({r.subcase})")
print("scaling:", {k: round(v, 6) if isinstance(v, float) else v for k, v in r.scaling.items()})

# 1. every (dwell, flee) in [tau, tau+span] x [0, eta] must give a norm <= 1
rep = verify_rect(pair, r.tau + 1e-6, eta - 1e-6, prescribed=r.scaling)
print(f"\ngrid check: max norm {rep.max_norm:.9f} at t={rep.argmax[0]:.3f}, s={rep.argmax[1]:.3f}, "
      f"order {rep.order} -> {'pass' if rep.passed else 'FAIL'}")
short = verify_rect(pair, 0.8 * r.tau, eta, prescribed=r.scaling)
print(f"the same check at 0.8*tau: max norm {short.max_norm:.4f} -> {'pass' if short.passed else 'fail'}")

# 2. brute force over a grid of dwell times and scalings
t_max = 2 * r.tau + 10
bf = brute_force_tau(pair, eta, t_max=t_max, n_t=1000, n_s=64, prescribed=r.scaling)
print(f"\nbrute force finds {bf:.4f} (grid step {t_max / 999:.3f}); formula gives {r.tau:.4f}")

# 3. simulate thirty periods of a jittered signal
x0 = np.array([1.0, -0.5])
tr = flow(pair, make_signal(r.tau, eta, "jitter", 30, delta=0.1), x0, 8)
env = decay_envelope(tr)
sup = np.max(np.linalg.norm(tr.states, axis=1)) / np.linalg.norm(x0)
print(f"\nsimulation: geometric-mean contraction {geometric_mean(env):.4f} per period")
print(f"largest |x(t)|/|x0| = {sup:.3f}, a priori bound {flow_bound(pair, eta, rep.scaling_used):.3f}")
