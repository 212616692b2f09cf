"""
Bateman-Horn constants
======================

The constant C(f_1) times the mean of g should equal 1 / L_D. Both products
skip p = 2, so the truncated value lands on 1 / (1 - chi(2)/2) instead:
exactly 1 when D = 1, 2 mod 4, but 2/3 or 2 when D = 3 mod 4.
"""
from cpforge.arith import kronecker
from cpforge.heuristics import bateman_horn_density, bh_constants
from cpforge.quadfield import fundamental_discriminant

print(" D   c_f1     c_g      product  with p=2 factor")
for D in (1, 2, 3, 5, 6, 7, 11, 15, 19, 23):
    b = bh_constants(D, 10**6, 10**6)
    chi2 = kronecker(fundamental_discriminant(D), 2)
    print(f"{D:2d}  {b.c_f1:.5f}  {b.c_g:.5f}  {b.product_check:.5f}  {b.product_check * (1 - chi2 / 2):.5f}")

# convergence in the prime cut-off
for n in (10**3, 10**4, 10**5, 10**6):
    print(n, round(bh_constants(1, n, 10**6).product_check, 5))

# the generic density for twin primes, with constant 2 C_2
print(bateman_horn_density([(1, 1.3203236), (1, 1.0)], 1e6), "twin pairs predicted below 1e6 (8169 actual)")
