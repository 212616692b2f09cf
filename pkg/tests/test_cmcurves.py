import math
from fractions import Fraction

import pytest

from cpforge.arith import is_prime, kronecker
from cpforge.cmcurves import (
    CM_J_INVARIANTS,
    CurveParams,
    UnsupportedDiscriminant,
    build_curve,
    certify_order,
    check_order,
    count_points,
    embedding_degree,
    j_invariant,
    twist_family,
    verify_curve,
)
from cpforge.cockspinch import SearchParams, Triple, generate_one, stream_triples
from oracles import brute_point_count

CM_D = sorted(CM_J_INVARIANTS)


def j_of(a4, a6, q):
    """j-invariant of y^2 = x^3 + a4 x + a6 over F_q."""
    num = 1728 * 4 * a4**3
    den = 4 * a4**3 + 27 * a6**2
    return num * pow(den, -1, q) % q


class TestExamples:
    def test_j(self):
        assert j_invariant(3) == 0 and j_invariant(1) == 1728 and j_invariant(2) == 8000
        with pytest.raises(UnsupportedDiscriminant):
            j_invariant(5)

    def test_worked_triple(self):
        c = build_curve(Triple(13, 4, 10, 29, 3, 1))
        assert c.q == 29 and c.order == 26
        assert brute_point_count(c.a4, c.a6, 29) == 26
        assert verify_curve(c)

    def test_unsupported(self):
        with pytest.raises(UnsupportedDiscriminant):
            build_curve(Triple(13, 4, 10, 29, 3, 5))

    def test_embedding_degree(self):
        assert embedding_degree(29, 13) == 3
        assert embedding_degree(1 + 5 * 13, 13) == 1
        assert embedding_degree(-1 + 5 * 13, 13) == 2
        with pytest.raises(ValueError):
            embedding_degree(26, 13)

    def test_check_order(self):
        c = build_curve(Triple(13, 4, 10, 29, 3, 1))
        assert check_order(c, 26)
        assert not check_order(c, 1)
        assert not check_order(c, 26 + 13) and not check_order(c, 26 - 13)


@pytest.mark.parametrize("D", CM_D)
def test_j_table_against_small_fields(D):
    """The stored j has a curve over some small F_q whose trace solves 4q = t^2 + D u^2."""
    hits = 0
    for q in range(5, 400):
        if not is_prime(q) or kronecker(-D, q) != 1 or D % q == 0:
            continue
        j = CM_J_INVARIANTS[D] % q
        if j in (0, 1728 % q) and D not in (1, 3):
            continue
        for a4, a6 in twist_family(CM_J_INVARIANTS[D], q):
            t = q + 1 - brute_point_count(a4, a6, q)
            v2, rem = divmod(4 * q - t * t, D)
            assert rem == 0 and math.isqrt(v2) ** 2 == v2, (D, q, a4, a6)
            hits += 1
    assert hits > 10


def _orbit(q, D):
    out = set()
    for t in range(-math.isqrt(4 * q), math.isqrt(4 * q) + 1):
        v2, rem = divmod(4 * q - t * t, D)
        if rem == 0 and v2 > 0 and math.isqrt(v2) ** 2 == v2:
            out.add(q + 1 - t)
    return out


def test_twist_closure_up_to_500():
    for q in range(5, 501):
        if not is_prime(q):
            continue
        for D in CM_D:
            if D % q == 0:
                continue
            j = CM_J_INVARIANTS[D] % q
            if j in (0, 1728 % q) and D not in (1, 3):
                continue  # j of another CM order collides mod q
            fam = twist_family(CM_J_INVARIANTS[D], q)
            orders = [brute_point_count(a4, a6, q) for a4, a6 in fam]
            assert all(j_of(a4, a6, q) == j for a4, a6 in fam)
            if kronecker(-D, q) == 1:
                assert sorted(orders) == sorted(_orbit(q, D)), (q, D)
            else:
                assert set(orders) == {q + 1}, (q, D)


def test_count_points_agrees_with_table():
    for q in (5, 7, 11, 101, 499):
        for a4, a6 in ((1, 1), (0, 3), (2, 0), (q - 1, 5)):
            if (4 * a4**3 + 27 * a6**2) % q:
                assert count_points(a4, a6, q) == brute_point_count(a4, a6, q)


@pytest.fixture(scope="module")
def census_small_q():
    trip = []
    for D in CM_D:
        for k in range(3, 11):
            trip += [t for t in stream_triples(SearchParams(k, D, Fraction(2), 5, 60)) if 5 <= t.q <= 2000]
    return trip


def test_census_curves_have_exact_order(census_small_q):
    assert len(census_small_q) > 50
    for tr in census_small_q:
        c = build_curve(tr)
        assert brute_point_count(c.a4, c.a6, c.q) == tr.q + 1 - tr.t, tr
        assert verify_curve(c)


def test_generated_curves():
    seed = 0
    done = 0
    while done < 20:
        k = 3 + seed % 8
        D = (1, 2, 3, 7, 11)[seed % 5]
        tr = generate_one(k, D, 24 + seed % 20, seed=seed)
        seed += 1
        if tr is None:
            continue
        c = build_curve(tr)
        assert check_order(c, c.order, 20, r=tr.r)
        assert embedding_degree(c.q, c.r) == k
        done += 1


def test_curve_params_singular():
    assert not CurveParams(7, 0, 0, 8, 2, 3, 0).is_nonsingular()


def test_sampled_check_cannot_separate_exponent_twin():
    # y^2 = x^3 + x over F_13 is Z/2 x Z/10: every point dies under 10
    wrong = CurveParams(13, 1, 0, 10, 5, 1, 1728 % 13)
    assert brute_point_count(1, 0, 13) == 20
    assert check_order(wrong, 10, r=5)
    assert not certify_order(wrong, 10)
    assert build_curve(Triple(5, 4, 6, 13, 4, 1)).a4 != 1


def test_certify_order_large_field():
    tr = generate_one(5, 7, 40, seed=11)
    c = build_curve(tr)
    assert certify_order(c, c.order, seed=1)
    assert not certify_order(c, c.order + tr.r, seed=1)
