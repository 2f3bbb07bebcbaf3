"""A system with (h,k)-growth but no (h,k)-dichotomy.

With h = k = r(t) the operator U = h(t)/h(s) r(s)/r(t) P + ... is bounded
by the growth inequalities with M(t) = r(t), yet the contraction gain at a
fixed start time keeps growing with the horizon.

    python3 demos/growth_without_dichotomy.py
"""

from hkdlab import (check_theorem2, class_g_witness, classify_fixed_time, default_grid,
                    dichotomy_envelope, example_gallery, growth_envelope, logpoly)

h = k = logpoly()
system = example_gallery("growth-not-dicho", h, k)
g10, g20 = default_grid(10, 101), default_grid(20, 201)

witness = class_g_witness(h, h, g20)
print(f"h in class G with g = h: {witness.passed} (margin {witness.worst_margin:.12f})")

grow = growth_envelope(system, h, k, g10)
print(f"growth gain on [0,10]: max M_req = {grow.max_envelope:.4f}")

d10 = dichotomy_envelope(system, h, k, g10)
d20 = dichotomy_envelope(system, h, k, g20)
print(f"N1_req(0): {d10.req_p[0]:.4f} on [0,10], {d20.req_p[0]:.4f} on [0,20]"
      f" -> {classify_fixed_time(d10, d20)}")

res = check_theorem2(system, None, h, k, default_grid(10, 51))
print(f"dichotomy via growth-type norms: {res.verdict} ({res.reason})")
