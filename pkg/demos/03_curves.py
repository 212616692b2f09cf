"""
From parameters to curves
=========================

For the nine D with class number one the CM j-invariant is a rational
integer, so the curve is a twist of y^2 = x^3 + 3c x + 2c, c = j/(1728 - j),
or of the j = 0 / 1728 families. The twist with q + 1 - t points is selected.
"""
from cpforge import build_curve, certify_order, embedding_degree, generate_one
from cpforge.cmcurves import count_points, twist_family
from cpforge.cockspinch import Triple

# the small worked example over F_29
tr = Triple(r=13, t=4, u_abs=10, q=29, k=3, D=1)
c = build_curve(tr)
print(c, "exhaustive count:", count_points(c.a4, c.a6, c.q))

# every twist of j = 1728 over F_29 and its point count
for a4, a6 in twist_family(1728, 29):
    print(f"  y^2 = x^3 + {a4}x + {a6}: {count_points(a4, a6, 29)} points")

# random parameters at a useful size
for k, D, bits in [(6, 3, 40), (8, 1, 48), (10, 7, 56)]:
    tr = generate_one(k, D, bits, rho_max=2, seed=2024)
    c = build_curve(tr)
    print(f"k={k} D={D}: r={tr.r} q={tr.q} rho={tr.rho_value:.3f}")
    print(f"   y^2 = x^3 + {c.a4}x + {c.a6}, order {c.order}, "
          f"embedding degree {embedding_degree(c.q, c.r)}, certified {certify_order(c, c.order)}")
