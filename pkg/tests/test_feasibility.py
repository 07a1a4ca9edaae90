from math import isqrt

import pytest

from maxdet.bounds import BoundKind
from maxdet.feasibility import (
    feasibility,
    is_perfect_square,
    sum_of_two_squares,
    two_squares_obstruction,
)

BARBA_ORDERS = {5, 13, 25, 41, 61, 85, 113, 145, 181}


def factor(m):
    out, p = {}, 2
    while p * p <= m:
        while m % p == 0:
            out[p] = out.get(p, 0) + 1
            m //= p
        p += 1
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def test_perfect_squares():
    assert is_perfect_square(49) == 7
    assert is_perfect_square(45) is None
    assert is_perfect_square(0) == 0
    assert all(is_perfect_square(k * k) == k for k in range(500))


def test_two_squares_examples():
    assert sum_of_two_squares(42) is None
    assert sum_of_two_squares(50) == (7, 1)
    assert sum_of_two_squares(2) == (1, 1)
    assert sum_of_two_squares(0) == (0, 0)


def test_two_squares_against_factorization():
    seen = [False] * 100001
    for a in range(isqrt(100000) + 1):
        for b in range(a + 1):
            if a * a + b * b <= 100000:
                seen[a * a + b * b] = True
    for m in range(100001):
        rep = sum_of_two_squares(m)
        assert (rep is not None) == seen[m]
        if rep is not None:
            a, b = rep
            assert a * a + b * b == m and a >= b >= 0
        if m > 0:
            criterion = all(e % 2 == 0 for p, e in factor(m).items() if p % 4 == 3)
            assert criterion == seen[m], m


def test_obstruction_witness():
    assert two_squares_obstruction(42) == (3, 1)
    assert two_squares_obstruction(50) is None
    p, e = two_squares_obstruction(3 ** 3 * 5)
    assert (p, e) == (3, 3)


class TestReports:
    def test_order_22(self):
        r = feasibility(22)
        assert r.obstructed
        assert r.applicable_bound is BoundKind.EHLICH_WOJTAS
        assert "42" in r.obstructions[0].witness and "3^1" in r.obstructions[0].witness

    def test_order_25(self):
        r = feasibility(25)
        assert not r.obstructed
        assert "7^2" in r.obstructions[0].witness

    def test_order_3(self):
        r = feasibility(3)
        assert r.obstructed
        assert r.residue_class == 3

    def test_hadamard_orders(self):
        assert not feasibility(12).obstructed
        assert not feasibility(2).obstructed
        assert not feasibility(1).obstructed

    def test_barba_orders_below_200(self):
        found = {n for n in range(3, 201, 2) if not feasibility(n).obstructed}
        assert found == BARBA_ORDERS

    def test_two_mod_four(self):
        blocked = [n for n in range(6, 120, 4) if feasibility(n).obstructed]
        assert 22 in blocked and 6 not in blocked and 50 not in blocked

    def test_summary(self):
        text = feasibility(22).summary()
        assert "FAIL" in text and "ew-two-squares" in text

    def test_bad_order(self):
        with pytest.raises(ValueError):
            feasibility(0)
