"""Integer and modular arithmetic behind the census and the curve code.

Python integers are unbounded, so every routine here is exact for operands
below 2**63; the range checks only enforce the documented contract.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

LIMIT_63 = 1 << 63

# Strong-probable-prime bases that are deterministic for every n < 2**64.
_MR_BASES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47)


def _check_modulus(m: int) -> None:
    if m <= 0:
        raise ValueError(f"modulus must be positive, got {m}")


def mul_mod(a: int, b: int, m: int) -> int:
    _check_modulus(m)
    return (a * b) % m


def pow_mod(a: int, e: int, m: int) -> int:
    _check_modulus(m)
    return pow(a, e, m)


def mod_inverse(a: int, m: int) -> int | None:
    """Inverse of ``a`` modulo ``m``, or None when gcd(a, m) != 1."""
    _check_modulus(m)
    if m == 1:
        return 0
    if math.gcd(a, m) != 1:
        return None
    return pow(a, -1, m)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin for 0 <= n < 2**63."""
    if n < 0 or n >= LIMIT_63:
        raise ValueError(f"is_prime supports 0 <= n < 2**63, got {n}")
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        a %= n
        if a == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


_WIDE_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
WIDE_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981


def _strong_probable_prime(n: int, bases) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in bases:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime_any(n: int) -> bool:
    """Primality for operands of any size.

    Exact below 2**63 (delegates to :func:`is_prime`) and, with the first
    thirteen primes as bases, below 3.3e24; probabilistic beyond that.
    """
    if n < LIMIT_63:
        return is_prime(n)
    if any(n % p == 0 for p in _SMALL_PRIMES):
        return False
    return _strong_probable_prime(n, _WIDE_BASES)


def simple_sieve(limit: int) -> np.ndarray:
    """All primes <= limit as an int64 array."""
    if limit < 2:
        return np.array([], dtype=np.int64)
    flags = np.ones(limit + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return np.flatnonzero(flags).astype(np.int64)


@dataclass(frozen=True)
class PrimeStream:
    """Primes p in [lo, hi] with p = residue (mod modulus), in increasing order.

    Iterating yields Python ints; :meth:`segments` yields int64 arrays, one per
    sieve segment, which is what the census engine consumes.
    """

    lo: int
    hi: int
    residue: int = 0
    modulus: int = 1
    segment_size: int = 1 << 22

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be >= 1")
        if not 0 <= self.residue < self.modulus:
            raise ValueError("residue must satisfy 0 <= residue < modulus")

    def segments(self) -> Iterator[np.ndarray]:
        lo = max(self.lo, 2)
        hi = self.hi
        if hi < lo:
            return
        base = simple_sieve(math.isqrt(hi))
        start = lo
        while start <= hi:
            stop = min(start + self.segment_size, hi + 1)  # exclusive
            mask = np.ones(stop - start, dtype=bool)
            for p in base:
                p = int(p)
                if p * p >= stop:
                    break
                first = max(p * p, -(-start // p) * p)
                if first < stop:
                    mask[first - start :: p] = False
            out = np.flatnonzero(mask).astype(np.int64) + start
            if self.modulus > 1:
                out = out[out % self.modulus == self.residue]
            if out.size:
                yield out
            start = stop

    def to_array(self) -> np.ndarray:
        parts = list(self.segments())
        if not parts:
            return np.array([], dtype=np.int64)
        return np.concatenate(parts)

    def __iter__(self) -> Iterator[int]:
        for seg in self.segments():
            yield from seg.tolist()


def primes_in_range(lo: int, hi: int, residue: int = 0, modulus: int = 1) -> np.ndarray:
    """Primes in [lo, hi] congruent to ``residue`` mod ``modulus`` (segmented sieve)."""
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    return PrimeStream(lo, hi, residue, modulus).to_array()


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers a and n."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 1 and a % 8 in (3, 5):
        result = -result
    # n is now odd and positive: Jacobi symbol with reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def sqrt_mod(a: int, p: int) -> int | None:
    """Square root of ``a`` modulo the odd prime ``p`` (Tonelli-Shanks).

    Returns the smaller of the two roots, or None for a non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if pow(a, (p - 1) // 2, p) != 1:
        return None
    if p % 4 == 3:
        x = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while pow(z, (p - 1) // 2, p) != p - 1:
            z += 1
        m, c, t, x = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, x = t * c % p, x * b % p
    return min(x, p - x)


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        y, r, q, g = 2, 1, 1, 1
        f = lambda v: (v * v + c) % n  # noqa: E731
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = f(y)
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = f(y)
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = f(ys)
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"failed to split {n}")


@lru_cache(maxsize=1)
def _trial_primes() -> tuple[int, ...]:
    return tuple(simple_sieve(10_000).tolist())


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of n >= 1 as {prime: exponent}."""
    if n < 1:
        raise ValueError("factorize needs n >= 1")
    out: dict[int, int] = {}
    for p in _trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        # no factor below 10**4 remains, so anything under 10**8 is prime
        if m < 10_000 ** 2 or is_prime_any(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_brent(m)
        stack.extend((d, m // d))
    return out


def euler_phi(k: int) -> int:
    if k < 1:
        raise ValueError("euler_phi needs k >= 1")
    result = k
    for p in factorize(k):
        result -= result // p
    return result


def multiplicative_order(a: int, r: int) -> int:
    """Order of ``a`` in (Z/rZ)^* for prime r, via the factorization of r - 1."""
    a %= r
    if a == 0:
        raise ValueError(f"{r} divides the argument; no multiplicative order")
    order = r - 1
    for p, e in factorize(r - 1).items():
        for _ in range(e):
            if pow(a, order // p, r) == 1:
                order //= p
            else:
                break
    return order


def primitive_root(r: int) -> int:
    """Smallest generator of (Z/rZ)^* for prime r."""
    if r == 2:
        return 1
    factors = list(factorize(r - 1))
    h = 2
    while any(pow(h, (r - 1) // p, r) == 1 for p in factors):
        h += 1
    return h


def primitive_kth_roots(k: int, r: int) -> list[int]:
    """The phi(k) elements of exact order k modulo the prime r, ascending."""
    if (r - 1) % k:
        raise ValueError(f"k={k} does not divide r-1={r - 1}")
    g0 = pow(primitive_root(r), (r - 1) // k, r)
    return sorted(pow(g0, j, r) for j in range(1, k + 1) if math.gcd(j, k) == 1)
