"""Compiled inner loops for the triple census.

All arithmetic is on int64. Products are reduced with ``mulmod`` which stays
exact for any modulus below 2**63. The bound q <= r**rho is tested in floating
point with a relative margin; candidates inside the margin are flagged so the
caller can decide them exactly.
"""
import numpy as np
from numba import njit

RHO_MARGIN = 1e-10
_TWO_21 = 1 << 21
_TWO_31 = 1 << 31
_TWO_42 = 1 << 42


@njit(cache=True)
def addmod(x, y, m):
    # x, y in [0, m); never overflows for m < 2**63
    if x >= m - y:
        return x - (m - y)
    return x + y


@njit(cache=True)
def mulmod(a, b, m):
    if m < _TWO_31:
        return (a * b) % m
    if m < _TWO_42:
        hi = b >> 21
        lo = b & (_TWO_21 - 1)
        x = (((a * hi) % m) << 21) % m
        return (x + (a * lo) % m) % m
    res = 0
    a = a % m
    while b > 0:
        if b & 1:
            res = addmod(res, a, m)
        a = addmod(a, a, m)
        b >>= 1
    return res


@njit(cache=True)
def powmod(a, e, m):
    res = 1 % m
    a = a % m
    while e > 0:
        if e & 1:
            res = mulmod(res, a, m)
        a = mulmod(a, a, m)
        e >>= 1
    return res


@njit(cache=True)
def is_prime64(n):
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
    for a in bases:
        a = a % n
        if a == 0:
            continue
        x = powmod(a, d, n)
        if x == 1 or x == n - 1:
            continue
        composite = True
        for _ in range(s - 1):
            x = mulmod(x, x, n)
            if x == n - 1:
                composite = False
                break
        if composite:
            return False
    return True


@njit(cache=True)
def sqrtmod(a, p):
    """Some square root of a quadratic residue a modulo the odd prime p."""
    a = a % p
    if a == 0:
        return 0
    if p % 4 == 3:
        return powmod(a, (p + 1) // 4, p)
    q = p - 1
    s = 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while powmod(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m = s
    c = powmod(z, q, p)
    t = powmod(a, q, p)
    x = powmod(a, (q + 1) // 2, p)
    while t != 1:
        i = 0
        t2 = t
        while t2 != 1:
            t2 = mulmod(t2, t2, p)
            i += 1
        b = c
        for _ in range(m - i - 1):
            b = mulmod(b, b, p)
        m = i
        c = mulmod(b, b, p)
        t = mulmod(t, c, p)
        x = mulmod(x, b, p)
    return x


@njit(cache=True)
def _grow(buf, n):
    out = np.empty(max(16, 2 * buf.shape[0]), dtype=buf.dtype)
    out[:n] = buf[:n]
    return out


@njit(cache=True, nogil=True)
def scan_primes(primes, k, D, rho, k_prime_factors, coprime_exponents):
    """Enumerate every triple for each prime r in ``primes``.

    Returns parallel arrays (r, t, u, q, uncertain) ordered by r, then by the
    order of discovery; the caller sorts within each r.
    """
    cap = 64
    out_r = np.empty(cap, dtype=np.int64)
    out_t = np.empty(cap, dtype=np.int64)
    out_u = np.empty(cap, dtype=np.int64)
    out_q = np.empty(cap, dtype=np.int64)
    out_f = np.empty(cap, dtype=np.bool_)
    n = 0
    for idx in range(primes.shape[0]):
        r = primes[idx]
        if r < 5 or (r - 1) % k != 0 or D % r == 0:
            continue
        a = (r - D % r) % r
        if powmod(a, (r - 1) // 2, r) != 1:
            continue
        s = sqrtmod(a, r)
        s_inv = powmod(s, r - 2, r)
        # an element of exact order k
        h = 2
        while True:
            g0 = powmod(h, (r - 1) // k, r)
            ok = True
            for j in range(k_prime_factors.shape[0]):
                if powmod(g0, k // k_prime_factors[j], r) == 1:
                    ok = False
                    break
            if ok:
                break
            h += 1
        qf = np.exp(rho * np.log(np.float64(r)))
        q_sure = qf * (1.0 - RHO_MARGIN)
        q_hi = qf * (1.0 + RHO_MARGIN)
        bound4 = 4.0 * q_hi
        t_max = np.int64(np.sqrt(bound4))
        for j in range(coprime_exponents.shape[0]):
            g = powmod(g0, coprime_exponents[j], r)
            t0 = (g + 1) % r
            u0 = mulmod((t0 - 2 + r) % r, s_inv, r)
            t = -t_max + (t0 + t_max) % r
            while t <= t_max:
                rem = bound4 - np.float64(t) * np.float64(t)
                if rem > 0:
                    u_max = np.int64(np.sqrt(rem / D))
                    u = -u_max + (u0 + u_max) % r
                    while u <= u_max:
                        s4 = t * t + D * u * u
                        if s4 % 4 == 0 and u != 0:
                            q = s4 // 4
                            if q % 2 == 1 and q > 2 and t % q != 0 and q <= q_hi and is_prime64(q):
                                if n == out_r.shape[0]:
                                    out_r = _grow(out_r, n)
                                    out_t = _grow(out_t, n)
                                    out_u = _grow(out_u, n)
                                    out_q = _grow(out_q, n)
                                    out_f = _grow(out_f, n)
                                out_r[n] = r
                                out_t[n] = t
                                out_u[n] = u if u > 0 else -u
                                out_q[n] = q
                                out_f[n] = q > q_sure
                                n += 1
                        u += r
                t += r
    return out_r[:n], out_t[:n], out_u[:n], out_q[:n], out_f[:n]
