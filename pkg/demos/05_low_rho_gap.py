"""
Where the heuristic breaks: k = 12, D = 3 at small rho
======================================================

A polynomial family with rho-value 1 and deg r(x) = 4 exists for (12, 3), so
for rho <= 1 + 1/4 the census finds far more triples than the integral
predicts. One scan at the largest rho gives every smaller rho for free.
"""
from fractions import Fraction

from cpforge import SearchParams, predicted_count, stream_triples
from cpforge.cockspinch import within_rho
from cpforge.heuristics import round_half_away

lo, hi = 10**4, 10**8
trip = list(stream_triples(SearchParams(12, 3, Fraction(31, 20), lo, hi)))

print(" rho     I     N1    N2    N3")
for rho in [Fraction(x, 20) for x in range(22, 32)]:
    sub = [t for t in trip if within_rho(t.q, t.r, rho)]
    n2 = sum(t.q % 4 == 1 for t in sub)
    n3 = sum(t.q % 12 == 1 for t in sub)
    I = round_half_away(predicted_count(12, 3, float(rho), lo, hi).I)
    print(f"{float(rho):.2f}  {I:5d}  {len(sub):4d}  {n2:4d}  {n3:4d}")
