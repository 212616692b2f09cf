"""Heuristic triple counts and the Bateman-Horn constants behind them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import integrate

from .arith import kronecker, simple_sieve
from .quadfield import e_factor, field_invariants, l_value


def round_half_away(x: float) -> int:
    return int(math.floor(abs(x) + 0.5)) * (1 if x >= 0 else -1)


def power_log_integral(a: float, b: float, s: float, m: float, epsrel: float = 1e-10) -> float:
    """Integral of z**(-s) * (log z)**(-m) over [a, b], for a > 1.

    Evaluated in the variable x = log z, where the integrand e**((1-s)x) / x**m
    is smooth and positive.
    """
    if not 1 < a <= b:
        raise ValueError("need 1 < a <= b")
    lo, hi = math.log(a), math.log(b)
    # split at decades of x so the exponential growth stays well resolved
    edges = np.unique(np.concatenate([[lo, hi], np.arange(math.ceil(lo), hi, 2.0)]))
    total = 0.0
    for x0, x1 in zip(edges[:-1], edges[1:]):
        val, _ = integrate.quad(
            lambda x: math.exp((1 - s) * x) / x**m, x0, x1, epsrel=epsrel, epsabs=0, limit=200
        )
        total += val
    return total


@dataclass(frozen=True)
class Prediction:
    k: int
    D: int
    rho: float
    a: float
    b: float
    I: float
    I1: float
    I2: float
    I3: float
    ratio2: Fraction
    ratio3: Fraction
    e: int


def pf_field_ratios(D: int) -> tuple[Fraction, Fraction]:
    """Expected fractions of triples with q = 1 mod 4 and q = 1 mod 12."""
    ratio2 = Fraction(1) if D % 4 == 1 else Fraction(1, 2)
    ratio3 = ratio2 if D % 3 == 0 else ratio2 / 2
    return ratio2, ratio3


def predicted_count(k: int, D: int, rho: float, a: float, b: float, epsrel: float = 1e-8) -> Prediction:
    rho = float(rho)
    if rho <= 1:
        raise ValueError("the integral prediction needs rho > 1")
    if not 5 <= a < b:
        raise ValueError("need 5 <= a < b")
    inv = field_invariants(D)
    e = e_factor(k, D)
    integral = power_log_integral(a, b, 2 - rho, 2, epsrel=epsrel)
    i1 = inv.w / (2 * rho * inv.h) * integral
    big = e * i1
    ratio2, ratio3 = pf_field_ratios(D)
    return Prediction(
        k=k, D=D, rho=rho, a=a, b=b,
        I=big, I1=i1, I2=float(ratio2) * big, I3=float(ratio3) * big,
        ratio2=ratio2, ratio3=ratio3, e=e,
    )


def asymptotic_count(k: int, D: int, rho: float, x: float) -> float:
    """Closed form e*w / (2 rho (rho-1) h) * x**(rho-1) / (log x)**2."""
    inv = field_invariants(D)
    c = e_factor(k, D) * inv.w / (2 * rho * (rho - 1) * inv.h)
    return c * x ** (rho - 1) / math.log(x) ** 2


def integral_asymptotic_ratio(a: float, m: float, s: float, x: float) -> float:
    """Numerical integral of z**-s (log z)**-m on [a, x] over its leading term."""
    if not (a > 1 and s < 1 and x > a):
        raise ValueError("need a > 1, s < 1, x > a")
    closed = x ** (1 - s) / ((1 - s) * math.log(x) ** m)
    return power_log_integral(a, x, s, m) / closed


def _chi_odd_primes(D: int, limit: int) -> tuple[np.ndarray, np.ndarray]:
    primes = simple_sieve(limit)
    primes = primes[primes >= 3]
    chi = np.array([kronecker(-D, int(p)) for p in primes], dtype=np.int64)
    return primes, chi


def g_values(D: int, x_limit: int) -> np.ndarray:
    """g(u) for u = 0..x_limit (g(0) unused), built by a multiplicative sieve."""
    g = np.ones(x_limit + 1, dtype=np.float64)
    primes, chi = _chi_odd_primes(D, x_limit)
    for p, c in zip(primes.tolist(), chi.tolist()):
        if c:
            g[p::p] *= (p - 1) / (p - 1 - c)
    return g


@dataclass(frozen=True)
class BhConstants:
    D: int
    c_f1: float
    c_g: float
    product_check: float


def bh_constants(D: int, prime_limit: int = 10**6, x_limit: int = 10**6) -> BhConstants:
    primes, chi = _chi_odd_primes(D, prime_limit)
    p = primes.astype(np.float64)
    c_f1 = float(np.exp(np.sum(np.log((p - 1 - chi) / (p - 1)))))
    c_g = float(g_values(D, x_limit)[1:].sum() / x_limit)
    return BhConstants(D, c_f1, c_g, c_f1 * c_g * l_value(D))


def bateman_horn_density(polys, X: float) -> float:
    """C / (product of degrees) * X / (log X)**m for a list of (degree, C) pairs.

    Each entry carries its own constant; the constants multiply.
    """
    if not polys:
        raise ValueError("need at least one polynomial")
    deg = 1
    c = 1.0
    for d, const in polys:
        if d < 1 or const <= 0:
            raise ValueError("degrees must be >= 1 and constants positive")
        deg *= d
        c *= const
    return c / deg * X / math.log(X) ** len(polys)
