"""
Counting Cocks-Pinch triples
============================

Every prime r = 1 mod k in a range, every primitive k-th root g mod r, and
every integer lift of t = g + 1 and u = (t - 2)/sqrt(-D) is tried; a triple
(r, t, q) is kept when q = (t^2 + D u^2)/4 is an odd prime with q <= r^rho.
"""
from fractions import Fraction

import numpy as np

from cpforge import SearchParams, count_triples, stream_triples, verify_triple
from cpforge.reference import RHO_9_5_SET, published_cells

# a single cell: embedding degree 3, D = 1, rho = 9/5, r up to 5e5
p = SearchParams(k=3, D=1, rho=Fraction(9, 5), r_min=5, r_max=500_000)
print(count_triples(p))

# the same population as a stream, ordered by (r, t, q)
trip = list(stream_triples(p))
print(trip[:3])
print("all verify:", all(verify_triple(t) for t in trip))

# rho-values log q / log r pile up just below the bound
rho_values = np.array([t.rho_value for t in trip])
print("rho-value quartiles:", np.round(np.quantile(rho_values, [0.25, 0.5, 0.75]), 4))

# q mod 12 for D = 1: q = 1 mod 4 always, and about half are 1 mod 12
print("q mod 12:", dict(zip(*np.unique([t.q % 12 for t in trip], return_counts=True))))

# a slice of the published N1 grid against a fresh count
pub = published_cells(RHO_9_5_SET, "N1")
for k, D in [(8, 1), (12, 3), (7, 7), (18, 123)]:
    c = count_triples(SearchParams(k, D, Fraction(9, 5), 5, 500_000))
    print(f"k={k:2d} D={D:3d}  counted {c.n1:5d}  published {pub[(k, D)]:5d}")
