import pytest

from maxdet.field import PrimeModulus, is_prime, paley_core, quadratic_character, shifted_core
from maxdet.linalg import ZMatrix, row_sums

SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23, 29, 31]


def sieve(n):
    flags = [True] * (n + 1)
    flags[0] = flags[1] = False
    for i in range(2, int(n ** 0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = [False] * len(flags[i * i :: i])
    return flags


def test_primality_matches_sieve():
    flags = sieve(20000)
    assert all(is_prime(m) == flags[m] for m in range(20001))


def test_large_primes_and_carmichael():
    assert is_prime(2 ** 61 - 1)
    assert not is_prime(561) and not is_prime(41041) and not is_prime(3215031751)


class TestCharacter:
    def test_mod_seven(self):
        assert [quadratic_character(x, 7) for x in range(7)] == [0, 1, 1, -1, 1, -1, -1]

    def test_minus_one_depends_on_residue(self):
        assert quadratic_character(6, 7) == -1
        assert quadratic_character(12, 13) == 1

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            quadratic_character(7, 7)

    def test_composite_modulus_rejected(self):
        with pytest.raises(ValueError):
            PrimeModulus(9)
        with pytest.raises(ValueError):
            quadratic_character(1, 15)

    def test_even_prime_rejected(self):
        with pytest.raises(ValueError):
            PrimeModulus(2)

    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_multiplicative(self, p):
        for a in range(p):
            for b in range(p):
                assert quadratic_character(a * b % p, p) == quadratic_character(a, p) * quadratic_character(b, p)

    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_half_are_residues(self, p):
        values = [quadratic_character(x, p) for x in range(1, p)]
        assert values.count(1) == values.count(-1) == (p - 1) // 2
        assert {x * x % p for x in range(1, p)} == {x for x in range(1, p) if values[x - 1] == 1}


class TestCores:
    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_core_gram(self, p):
        Q = paley_core(p)
        J = ZMatrix([[1] * p for _ in range(p)])
        assert Q @ Q.T == ZMatrix.scalar(p, p) - J
        assert all(Q[i, i] == 0 for i in range(p))
        assert row_sums(Q) == (0,) * p

    @pytest.mark.parametrize("p", SMALL_PRIMES)
    def test_symmetry_by_residue(self, p):
        Q = paley_core(p)
        assert Q.T == (Q.as_zmatrix() if p % 4 == 1 else -Q)

    @pytest.mark.parametrize("p", [3, 7, 11, 19, 23, 31])
    def test_shifted_core(self, p):
        C = shifted_core(p)
        J = ZMatrix([[1] * p for _ in range(p)])
        assert C @ C.T == ZMatrix.scalar(p, p + 1) - J
        assert C + C.T == ZMatrix.scalar(p, -2)
        assert row_sums(C) == (-1,) * p

    def test_shifted_core_needs_three_mod_four(self):
        with pytest.raises(ValueError):
            shifted_core(13)

    def test_circulant_first_row(self):
        Q = paley_core(5)
        assert Q.row(0) == (0, 1, -1, -1, 1)
        assert all(Q.row(i) == Q.row(0)[-i:] + Q.row(0)[:-i] for i in range(5))
