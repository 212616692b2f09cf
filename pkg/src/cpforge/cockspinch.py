"""Cocks-Pinch construction and the exhaustive triple census.

The reference path (:func:`candidate_residues`, :func:`triples_for_r`) is plain
Python with exact integer arithmetic. The census path (:func:`census_rows`,
:func:`count_triples`, :func:`stream_triples`) runs the same enumeration in a
compiled kernel over sieved prime segments and must agree with it exactly.
"""
from __future__ import annotations

import math
import os
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from . import _kernel
from .arith import (
    PrimeStream,
    factorize,
    is_prime,
    is_prime_any,
    kronecker,
    mod_inverse,
    multiplicative_order,
    primitive_kth_roots,
    sqrt_mod,
)
from .quadfield import is_squarefree


def as_fraction(rho) -> Fraction:
    """Exact rational from a Fraction, int, 'num/den' string or decimal string."""
    if isinstance(rho, float):
        rho = repr(rho)
    return Fraction(rho)


@dataclass(frozen=True)
class SearchParams:
    k: int
    D: int
    rho: Fraction
    r_min: int
    r_max: int

    def __post_init__(self):
        object.__setattr__(self, "rho", as_fraction(self.rho))
        if self.k < 3:
            raise ValueError(f"embedding degree must be >= 3, got {self.k}")
        if not is_squarefree(self.D):
            raise ValueError(f"D must be square-free and positive, got {self.D}")
        if self.rho <= 1:
            raise ValueError(f"rho must exceed 1, got {self.rho}")
        if self.r_min < 5:
            raise ValueError("r_min must be at least 5")
        if self.r_max < self.r_min:
            raise ValueError("r_max must be >= r_min")

    @property
    def rho_num(self) -> int:
        return self.rho.numerator

    @property
    def rho_den(self) -> int:
        return self.rho.denominator


@dataclass(frozen=True, order=True)
class Triple:
    # field order makes the default ordering (r, t, |u|), which matches (r, t, q)
    r: int
    t: int
    u_abs: int
    q: int
    k: int
    D: int

    @property
    def order(self) -> int:
        return self.q + 1 - self.t

    @property
    def rho_value(self) -> float:
        return math.log(self.q) / math.log(self.r)


@dataclass(frozen=True)
class CountResult:
    n1: int = 0
    n2: int = 0
    n3: int = 0

    def __add__(self, other: "CountResult") -> "CountResult":
        return CountResult(self.n1 + other.n1, self.n2 + other.n2, self.n3 + other.n3)


def within_rho(q: int, r: int, rho: Fraction) -> bool:
    """Exact test of q <= r**rho."""
    return q ** rho.denominator <= r ** rho.numerator


def max_q(r: int, rho: Fraction) -> int:
    """Largest integer q with q <= r**rho."""
    x = int(r ** float(rho))
    while not within_rho(x, r, rho):
        x -= 1
    while within_rho(x + 1, r, rho):
        x += 1
    return x


def candidate_residues(r: int, k: int, D: int) -> list[tuple[int, int]]:
    """Residues (t', u') mod r from each primitive k-th root of unity."""
    if r < 5 or (r - 1) % k or r % k == 0 or D % r == 0:
        return []
    if kronecker(-D, r) != 1:
        return []
    s_inv = mod_inverse(sqrt_mod(-D, r), r)
    out = []
    for g in primitive_kth_roots(k, r):
        t_res = (g + 1) % r
        out.append((t_res, (t_res - 2) * s_inv % r))
    return out


def _lifts(res: int, r: int, bound: int) -> range:
    """Integers in [-bound, bound] congruent to res mod r."""
    return range(-bound + (res + bound) % r, bound + 1, r)


def triples_for_r(r: int, k: int, D: int, rho) -> list[Triple]:
    rho = as_fraction(rho)
    residues = candidate_residues(r, k, D)
    if not residues:
        return []
    qmax = max_q(r, rho)
    t_bound = math.isqrt(4 * qmax)
    found = {}
    for t_res, u_res in residues:
        for t in _lifts(t_res, r, t_bound):
            u_bound = math.isqrt((4 * qmax - t * t) // D)
            for u in _lifts(u_res, r, u_bound):
                s = t * t + D * u * u
                if u == 0 or s % 4:
                    continue
                q = s // 4
                if q % 2 and q > 2 and t % q and q <= qmax and is_prime_any(q):
                    found[(t, q)] = Triple(r, t, abs(u), q, k, D)
    return [found[key] for key in sorted(found)]


def verify_triple(tr: Triple) -> bool:
    """Re-derive every validity condition of ``tr`` from scratch."""
    r, t, u, q, k, D = tr.r, tr.t, tr.u_abs, tr.q, tr.k, tr.D
    try:
        if r < 5 or q < 3 or u <= 0 or k < 3:
            return False
        if not (is_prime(r) and is_prime_any(q)) or q == r:
            return False
        if 4 * q != t * t + D * u * u:
            return False
        if t * t > 4 * q or math.gcd(q, t) != 1:
            return False
        if (q + 1 - t) % r or (r - 1) % k:
            return False
        return multiplicative_order(q, r) == k
    except ValueError:
        return False


def _k_tables(k: int) -> tuple[np.ndarray, np.ndarray]:
    primes = np.array(sorted(factorize(k)), dtype=np.int64)
    exps = np.array([j for j in range(1, k + 1) if math.gcd(j, k) == 1], dtype=np.int64)
    return primes, exps


def default_workers() -> int:
    env = os.environ.get("CPFORGE_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _scan_block(primes: np.ndarray, p: SearchParams, kp, ke) -> list[tuple[int, int, int, int]]:
    rs, ts, us, qs, unsure = _kernel.scan_primes(primes, p.k, p.D, float(p.rho), kp, ke)
    keep = ~unsure
    if unsure.any():
        for i in np.flatnonzero(unsure):
            keep[i] = within_rho(int(qs[i]), int(rs[i]), p.rho)
    rows = list(zip(rs[keep].tolist(), ts[keep].tolist(), qs[keep].tolist(), us[keep].tolist()))
    rows.sort()
    return rows


def _blocks(p: SearchParams, block_size: int) -> Iterator[np.ndarray]:
    stream = PrimeStream(p.r_min, p.r_max, 1 % p.k, p.k)
    for seg in stream.segments():
        for i in range(0, seg.size, block_size):
            yield seg[i : i + block_size]


def census_rows(p: SearchParams, workers: int | None = None, block_size: int = 1 << 15):
    """Yield (r, t, q, |u|) for every triple, ordered by (r, t, q).

    Blocks of primes are scanned on a thread pool; results are consumed in
    block order so the output does not depend on the worker count.
    """
    kp, ke = _k_tables(p.k)
    workers = workers or default_workers()
    if workers == 1:
        for block in _blocks(p, block_size):
            yield from _scan_block(block, p, kp, ke)
        return
    with ThreadPoolExecutor(workers) as pool:
        pending = []
        for block in _blocks(p, block_size):
            pending.append(pool.submit(_scan_block, block, p, kp, ke))
            if len(pending) >= 4 * workers:
                yield from pending.pop(0).result()
        for fut in pending:
            yield from fut.result()


def stream_triples(p: SearchParams, workers: int | None = None) -> Iterator[Triple]:
    for r, t, q, u in census_rows(p, workers):
        yield Triple(r, t, u, q, p.k, p.D)


def count_triples(p: SearchParams, workers: int | None = None) -> CountResult:
    n1 = n2 = n3 = 0
    for _, _, q, _ in census_rows(p, workers):
        n1 += 1
        if q % 4 == 1:
            n2 += 1
            if q % 12 == 1:
                n3 += 1
    return CountResult(n1, n2, n3)


def _random_prime(rng: random.Random, bits: int, k: int, D: int) -> int:
    lo, hi = 1 << (bits - 1), (1 << bits) - 1
    while True:
        r = rng.randrange(lo, hi + 1)
        r -= (r - 1) % k
        if r >= lo and r >= 5 and is_prime(r) and D % r and kronecker(-D, r) == 1:
            return r


def generate_one(
    k: int,
    D: int,
    r_bits: int,
    rho_max=2,
    seed: int | None = None,
    attempts: int = 200,
    window: int = 64,
) -> Triple | None:
    """Run the construction with random r and root of unity until q is prime.

    For each attempt the lifts of t and u nearest to zero are taken and a
    ``window`` x ``window`` block of neighbouring lifts is scanned for the
    smallest prime q. Returns None when the attempt budget runs out.
    """
    if not 16 <= r_bits <= 62:
        raise ValueError("r_bits must lie in [16, 62]")
    rho_max = as_fraction(rho_max)
    rng = random.Random(seed)
    for _ in range(attempts):
        r = _random_prime(rng, r_bits, k, D)
        t_res, u_res = rng.choice(candidate_residues(r, k, D))
        t0 = t_res if t_res <= r // 2 else t_res - r
        u0 = u_res if u_res <= r // 2 else u_res - r
        best = None
        half = window // 2
        for i in range(-half, half):
            t = t0 + i * r
            for j in range(-half, half):
                u = u0 + j * r
                s = t * t + D * u * u
                if u == 0 or s % 4:
                    continue
                q = s // 4
                if best is not None and q >= best[0]:
                    continue
                if q % 2 and q > 3 and is_prime_any(q):
                    best = (q, t, abs(u))
        if best is not None and within_rho(best[0], r, rho_max):
            q, t, u = best
            return Triple(r, t, u, q, k, D)
    return None
