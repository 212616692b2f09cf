"""Explicit curves for triples whose CM field has class number one."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .arith import factorize, is_prime_any, kronecker, multiplicative_order, sqrt_mod
from .cockspinch import Triple, verify_triple

# j-invariants of the maximal orders of the nine class-number-one fields
CM_J_INVARIANTS = {
    1: 1728,
    2: 8000,
    3: 0,
    7: -3375,
    11: -32768,
    19: -884736,
    43: -884736000,
    67: -147197952000,
    163: -262537412640768000,
}


class UnsupportedDiscriminant(ValueError):
    pass


class CurveConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class CurveParams:
    """y^2 = x^3 + a4 x + a6 over F_q."""

    q: int
    a4: int
    a6: int
    order: int
    r: int
    D: int
    j: int
    t: int = 0
    k: int = 0

    def is_nonsingular(self) -> bool:
        return (4 * self.a4**3 + 27 * self.a6**2) % self.q != 0


def j_invariant(D: int) -> int:
    try:
        return CM_J_INVARIANTS[D]
    except KeyError:
        raise UnsupportedDiscriminant(f"D={D} has class number > 1; no rational CM j-invariant") from None


def embedding_degree(q: int, r: int) -> int:
    if q % r == 0:
        raise ValueError(f"r={r} divides q={q}")
    return multiplicative_order(q, r)


# --- affine group law; None is the point at infinity ---

def _add(P, Q, a4, q):
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if (y1 + y2) % q == 0:
            return None
        lam = (3 * x1 * x1 + a4) * pow(2 * y1, -1, q) % q
    else:
        lam = (y2 - y1) * pow(x2 - x1, -1, q) % q
    x3 = (lam * lam - x1 - x2) % q
    return x3, (lam * (x1 - x3) - y1) % q


def scalar_mul(n: int, P, a4: int, q: int):
    if n < 0:
        n = -n
        P = None if P is None else (P[0], -P[1] % q)
    R = None
    while n:
        if n & 1:
            R = _add(R, P, a4, q)
        P = _add(P, P, a4, q)
        n >>= 1
    return R


def random_point(a4: int, a6: int, q: int, rng: random.Random):
    while True:
        x = rng.randrange(q)
        f = (x * x * x + a4 * x + a6) % q
        if f == 0:
            return x, 0
        if kronecker(f, q) == 1:
            y = sqrt_mod(f, q)
            return x, y if rng.random() < 0.5 else (q - y) % q


def check_order(c: CurveParams, n: int, samples: int = 20, r: int | None = None, seed: int = 0) -> bool:
    """Probabilistic test that the group order of ``c`` is ``n``.

    Every sampled point must be killed by n. When ``r`` is given and r**2
    does not divide n, some sample must also survive multiplication by n/r,
    which rules out n being a multiple of the true exponent by accident.
    """
    rng = random.Random(seed)
    witnessed = r is None or n % r or (n // r) % r == 0
    for _ in range(samples):
        P = random_point(c.a4, c.a6, c.q, rng)
        if scalar_mul(n, P, c.a4, c.q) is not None:
            return False
        if not witnessed and scalar_mul(n // r, P, c.a4, c.q) is not None:
            witnessed = True
    return bool(witnessed)


def count_points(a4: int, a6: int, q: int) -> int:
    """Exhaustive #E(F_q), for small q."""
    return q + 1 + sum(kronecker((x * x * x + a4 * x + a6) % q, q) for x in range(q))


# fields this small are simply counted
EXHAUSTIVE_Q = 1 << 16


def point_order(P, n: int, primes, a4: int, q: int) -> int:
    """Exact order of P, given n*P = O and the prime divisors of n."""
    o = n
    for p in primes:
        while o % p == 0 and scalar_mul(o // p, P, a4, q) is None:
            o //= p
    return o


def certify_order(c: CurveParams, n: int, primes=None, samples: int = 20, seed: int = 0) -> bool:
    """True only if #E(F_q) = n is proven.

    n must lie in the Hasse interval and kill every sampled point. Once the lcm
    of the exact point orders exceeds 4 sqrt(q), n is the only multiple of it
    in that interval, so it is the group order. Small fields are counted.
    """
    q = c.q
    if (n - q - 1) ** 2 > 4 * q:
        return False
    if q < EXHAUSTIVE_Q:
        return count_points(c.a4, c.a6, q) == n
    primes = sorted(primes) if primes is not None else sorted(factorize(n))
    rng = random.Random(seed)
    m = 1
    for _ in range(samples):
        P = random_point(c.a4, c.a6, q, rng)
        if scalar_mul(n, P, c.a4, q) is not None:
            return False
        m = math.lcm(m, point_order(P, n, primes, c.a4, q))
        if m * m > 16 * q:
            return True
    return False


def _coset_generator(q: int, n: int) -> int:
    """Smallest element generating F_q^* / (F_q^*)^n, where n divides q - 1."""
    primes = [p for p in (2, 3) if n % p == 0]
    g = 2
    while any(pow(g, (q - 1) // p, q) == 1 for p in primes):
        g += 1
    return g


def twist_family(j: int, q: int) -> list[tuple[int, int]]:
    """Representatives (a4, a6) of every twist class of curves with j-invariant j."""
    jq = j % q
    if jq == 0:
        n = math.gcd(6, q - 1)
        gen = _coset_generator(q, n)
        return [(0, pow(gen, i, q)) for i in range(n)]
    if jq == 1728 % q:
        n = math.gcd(4, q - 1)
        gen = _coset_generator(q, n)
        return [(pow(gen, i, q), 0) for i in range(n)]
    c = jq * pow(1728 - jq, -1, q) % q
    nr = 2
    while kronecker(nr, q) != -1:
        nr += 1
    return [(3 * c % q, 2 * c % q), (3 * c * nr * nr % q, 2 * c * pow(nr, 3, q) % q)]


def build_curve(tr: Triple, samples: int = 20) -> CurveParams:
    """Select the twist whose order is q + 1 - t for a class-number-one triple.

    The sampled order check alone cannot separate a twist whose group exponent
    divides the target (for q = 13 and target 10, the twist Z/2 x Z/10 passes
    it), so the chosen twist must also pass certify_order.
    """
    j = j_invariant(tr.D)
    if tr.q < 5:
        raise ValueError("need q >= 5")
    if not verify_triple(tr):
        raise ValueError(f"not a valid triple: {tr}")
    target = tr.q + 1 - tr.t
    primes = {tr.r, *factorize(target // tr.r)} if target > tr.r else {tr.r}
    for a4, a6 in twist_family(j, tr.q):
        cp = CurveParams(tr.q, a4, a6, target, tr.r, tr.D, j % tr.q, tr.t, tr.k)
        if (
            cp.is_nonsingular()
            and check_order(cp, target, samples, r=tr.r, seed=tr.q)
            and certify_order(cp, target, primes, samples, seed=tr.q)
        ):
            return cp
    raise CurveConstructionError(f"no twist over F_{tr.q} has order {target}")


def verify_curve(c: CurveParams) -> bool:
    """Order divisible by r and embedding degree k for an output of build_curve."""
    return (
        is_prime_any(c.q)
        and c.is_nonsingular()
        and c.order % c.r == 0
        and embedding_degree(c.q, c.r) == c.k
    )
