import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cpforge.arith import (
    PrimeStream,
    euler_phi,
    factorize,
    is_prime,
    is_prime_any,
    kronecker,
    mod_inverse,
    mul_mod,
    multiplicative_order,
    pow_mod,
    primes_in_range,
    primitive_kth_roots,
    primitive_root,
    simple_sieve,
    sqrt_mod,
)
from oracles import prime_table, trial_is_prime

odd_primes = st.sampled_from([int(p) for p in simple_sieve(5000)[1:]])


class TestExamples:
    def test_is_prime(self):
        assert is_prime(2)
        assert not is_prime(561)
        n = 2_801_763_489_301
        assert is_prime(n) == trial_is_prime(n)

    def test_is_prime_range(self):
        with pytest.raises(ValueError):
            is_prime(1 << 63)
        with pytest.raises(ValueError):
            is_prime(-1)

    def test_primes_in_range(self):
        assert primes_in_range(5, 30, 1, 4).tolist() == [5, 13, 17, 29]
        assert primes_in_range(5, 5).tolist() == [5]
        assert primes_in_range(24, 28).tolist() == []

    def test_modular(self):
        assert pow_mod(3, 3, 13) == 1
        assert mod_inverse(5, 13) == 8
        assert mod_inverse(6, 9) is None
        with pytest.raises(ValueError):
            mod_inverse(3, 0)

    def test_kronecker(self):
        assert kronecker(-3, 7) == 1
        assert kronecker(-4, 7) == -1
        assert kronecker(-4, 7) == (-1 if pow_mod(-4 % 7, 3, 7) == 6 else 1)
        assert all(kronecker(a, 1) == 1 for a in range(-20, 20))

    def test_sqrt_mod(self):
        assert sqrt_mod(-1, 5) == 2
        assert sqrt_mod(-3, 7) == 2
        assert sqrt_mod(2, 5) is None

    def test_phi_and_order(self):
        assert euler_phi(1) == 1
        assert euler_phi(12) == 4
        assert euler_phi(101) == 100
        assert multiplicative_order(1, 13) == 1
        assert multiplicative_order(3, 13) == 3
        assert multiplicative_order(29, 13) == 3
        with pytest.raises(ValueError):
            multiplicative_order(26, 13)

    def test_primitive_roots(self):
        assert primitive_kth_roots(4, 13) == [5, 8]
        assert primitive_kth_roots(3, 13) == [3, 9]
        assert primitive_kth_roots(6, 7) == [3, 5]
        with pytest.raises(ValueError):
            primitive_kth_roots(5, 13)


def test_sieve_matches_trial_division_up_to_1e6():
    table = prime_table(10**6)
    assert np.array_equal(primes_in_range(2, 10**6), np.flatnonzero(table))
    rng = random.Random(3)
    for _ in range(200):
        lo = rng.randrange(0, 10**6)
        hi = rng.randrange(lo, min(10**6, lo + rng.choice([10, 1000, 100000])) + 1)
        m = rng.randrange(1, 30)
        a = rng.randrange(m)
        got = primes_in_range(lo, hi, a, m).tolist()
        want = [p for p in range(lo, hi + 1) if table[p] and p % m == a]
        assert got == want, (lo, hi, a, m)


def test_prime_stream_segments_are_exhaustive():
    s = PrimeStream(10**5, 3 * 10**6, 1, 12, segment_size=1 << 16)
    got = s.to_array()
    table = prime_table(3 * 10**6)
    want = [p for p in np.flatnonzero(table) if p >= 10**5 and p % 12 == 1]
    assert got.tolist() == want
    assert np.all(np.diff(got) > 0)


def test_is_prime_matches_trial_division_up_to_1e7():
    table = prime_table(10**7)
    # every n below 10**7 through the same code path the census uses
    mask = np.fromiter((is_prime(n) for n in range(10**7 + 1)), dtype=bool, count=10**7 + 1)
    assert np.array_equal(mask, table)


def test_is_prime_random_40_bit():
    rng = random.Random(40)
    for _ in range(10_000):
        n = rng.randrange(1 << 39, 1 << 40)
        assert is_prime(n) == trial_is_prime(n), n


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (3215031751, 2152302898747, 3474749660383, 341550071728321, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime((1 << 61) - 1)
    assert is_prime_any((1 << 89) - 1)
    assert not is_prime_any(((1 << 61) - 1) * ((1 << 31) - 1))


@given(st.integers(0, (1 << 63) - 1), st.integers(0, (1 << 63) - 1), st.integers(1, (1 << 63) - 1))
def test_mul_mod_exact(a, b, m):
    assert mul_mod(a, b, m) == a * b % m


@given(st.integers(-(10**12), 10**12), st.integers(2, 10**12))
def test_mod_inverse_property(a, m):
    x = mod_inverse(a, m)
    if math.gcd(a, m) == 1:
        assert x is not None and a * x % m == 1
    else:
        assert x is None


@given(st.integers(-(10**6), 10**6), odd_primes)
def test_sqrt_mod_property(a, p):
    x = sqrt_mod(a % p, p)
    kr = kronecker(a, p)
    if a % p == 0:
        assert x == 0
    elif kr == -1:
        assert x is None
    else:
        assert kr == 1 and x is not None
        assert x * x % p == a % p and 0 <= x <= p - x


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(1, 500))
def test_kronecker_multiplicative(a, b, n):
    assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


@given(st.integers(-500, 500), odd_primes)
def test_kronecker_is_euler_criterion(a, p):
    e = pow(a % p, (p - 1) // 2, p)
    assert kronecker(a, p) == (0 if e == 0 else 1 if e == 1 else -1)


@settings(max_examples=200)
@given(odd_primes, st.integers(1, 10**6))
def test_order_divides_r_minus_1(r, a):
    if a % r == 0:
        return
    d = multiplicative_order(a, r)
    assert (r - 1) % d == 0 and pow(a, d, r) == 1
    assert all(pow(a, d // p, r) != 1 for p in factorize(d))


@settings(max_examples=200)
@given(odd_primes, st.integers(3, 40))
def test_kth_roots_count_is_phi(r, k):
    if (r - 1) % k:
        return
    roots = primitive_kth_roots(k, r)
    assert len(roots) == euler_phi(k)
    assert roots == sorted(roots)
    assert all(multiplicative_order(g, r) == k for g in roots)


@given(st.integers(2, 10**15))
def test_factorize_reconstructs(n):
    f = factorize(n)
    assert math.prod(p**e for p, e in f.items()) == n
    assert all(is_prime_any(p) for p in f)


@pytest.mark.parametrize("r", [7, 13, 101, 65537, 999983])
def test_primitive_root(r):
    g = primitive_root(r)
    assert multiplicative_order(g, r) == r - 1
