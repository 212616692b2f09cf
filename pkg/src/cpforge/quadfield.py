"""Invariants of the imaginary quadratic field Q(sqrt(-D))."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .arith import factorize, kronecker

CLASS_NUMBER_LIMIT = 10**6


def is_squarefree(n: int) -> bool:
    return n >= 1 and all(e == 1 for e in factorize(n).values())


def _check_d(D: int) -> None:
    if not is_squarefree(D):
        raise ValueError(f"D must be a square-free positive integer, got {D}")


def fundamental_discriminant(D: int) -> int:
    _check_d(D)
    return -D if D % 4 == 3 else -4 * D


def roots_of_unity(D: int) -> int:
    return {1: 4, 3: 6}.get(D, 2)


def e_factor(k: int, D: int) -> int:
    """2 when |D*| divides k, i.e. Q(sqrt(-D)) lies in the k-th cyclotomic field."""
    return 2 if k % -fundamental_discriminant(D) == 0 else 1


def class_number(D: int) -> int:
    """Class number by counting reduced primitive forms of discriminant D*."""
    _check_d(D)
    if D > CLASS_NUMBER_LIMIT:
        raise ValueError(f"class_number supports D <= {CLASS_NUMBER_LIMIT}")
    disc = fundamental_discriminant(D)
    n = -disc
    h = 0
    # reduced forms satisfy |B| <= A <= C, so 3A^2 <= |disc|
    a = 1
    while 3 * a * a <= n:
        for b in range(-a + 1, a + 1):
            if (b * b - disc) % (4 * a):
                continue
            c = (b * b - disc) // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, abs(b)), c) == 1:
                h += 1
        a += 1
    return h


def class_number_character_sum(D: int) -> int:
    """Class number from h = -(w / 2|d|) * sum_{a<|d|} (d/a) a, with d = D*."""
    disc = fundamental_discriminant(D)
    n = -disc
    total = sum(kronecker(disc, a) * a for a in range(1, n))
    h2 = -roots_of_unity(D) * total  # = 2|d| h
    assert h2 % (2 * n) == 0
    return h2 // (2 * n)


def l_value(D: int) -> float:
    """L(1, (D*/.)) recovered from the class number formula."""
    return 2 * math.pi * class_number(D) / (roots_of_unity(D) * math.sqrt(-fundamental_discriminant(D)))


def character_period(D: int) -> np.ndarray:
    """Values of n -> (D*/n) for n = 0 .. |D*| - 1."""
    disc = fundamental_discriminant(D)
    return np.array([kronecker(disc, n) for n in range(-disc)], dtype=np.int8)


def l_value_series(D: int, n_terms: int = 10**6) -> float:
    """Direct evaluation of sum (D*/n)/n, smoothed by averaging partial sums.

    The character has period |D*| and zero sum over a period, so averaging the
    last |D*| partial sums removes the leading oscillation.
    """
    if n_terms < 1000:
        raise ValueError("n_terms must be at least 1000")
    chi = character_period(D)
    period = chi.size
    n = np.arange(1, n_terms + 1, dtype=np.float64)
    terms = chi[np.arange(1, n_terms + 1) % period] / n
    partial = np.cumsum(terms)
    window = min(period, n_terms)
    return float(partial[-window:].mean())


@dataclass(frozen=True)
class FieldInvariants:
    D: int
    D_star: int
    w: int
    h: int
    L: float


@lru_cache(maxsize=None)
def field_invariants(D: int) -> FieldInvariants:
    return FieldInvariants(
        D=D,
        D_star=fundamental_discriminant(D),
        w=roots_of_unity(D),
        h=class_number(D),
        L=l_value(D),
    )
