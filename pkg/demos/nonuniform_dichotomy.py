"""Walk through a nonuniform exponential dichotomy on a grid.

The constant-projector system contracts along e1 and expands along e2 with
an extra 1/r(t) damping, r(t) = (t+1) ln(t+e).  The gain needed for the
expanding direction is N2_req(t) = r(t), so no constant gain works: the
largest requirement keeps climbing as the horizon grows.

    python3 demos/nonuniform_dichotomy.py
"""

import numpy as np

from hkdlab import (classify_uniformity, default_grid, dichotomy_envelope, example_gallery,
                    exponential, log_weight)

h = k = exponential(1.0)
system = example_gallery("dicho-2d-constantP", h, k)

print(system.U(1.0, 0.0))          # diag(a(1,0), c(1,0))

short = dichotomy_envelope(system, h, k, default_grid(10, 101))
long = dichotomy_envelope(system, h, k, default_grid(20, 201))

print(" t      N1_req    N2_req      r(t)")
for row in short.rows()[::20]:
    print(f"{row['t']:4.1f}  {row['N1_req']:8.4f}  {row['N2_req']:8.4f}  {log_weight(row['t']):8.4f}")

verdict = classify_uniformity(short, long)
print(f"max gain on [0,10]: {short.max_envelope:.4f}")
print(f"max gain on [0,20]: {long.max_envelope:.4f}")
print(f"verdict: {verdict}")

# the worst starting time for the expanding direction is always s = 0
assert np.all(short.argmax_q[1:] == 0.0)
