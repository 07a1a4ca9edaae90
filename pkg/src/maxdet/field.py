"""Prime fields, the quadratic character, and Paley cores."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import SignMatrix, ZMatrix

CORE_SIZE_LIMIT = 4096

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# The bases above are a deterministic witness set below this bound.
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division, then Miller-Rabin)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    if n >= _MR_LIMIT:
        raise ValueError(f"{n} exceeds the deterministic primality range")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if self.p % 2 == 0 or not is_prime(self.p):
            raise ValueError(f"{self.p} is not an odd prime")

    @property
    def residue(self) -> int:
        """p mod 4, either 1 or 3."""
        return self.p % 4


def _modulus(p: int | PrimeModulus) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(p)


def quadratic_character(x: int, p: int | PrimeModulus) -> int:
    """Legendre symbol of x modulo p via Euler's criterion."""
    p = _modulus(p).p
    if not 0 <= x < p:
        raise ValueError(f"residue {x} outside [0, {p})")
    if x == 0:
        return 0
    return 1 if pow(x, (p - 1) // 2, p) == 1 else -1


class CoreMatrix(ZMatrix):
    """Paley core Q[x][y] = chi(x - y): zero diagonal, circulant, Q Q^T = pI - J."""

    __slots__ = ("p",)

    def transpose(self) -> ZMatrix:
        return self.as_zmatrix().transpose()

    T = property(transpose)

    def __neg__(self) -> ZMatrix:
        return -self.as_zmatrix()


def _character_row(p: int) -> list[int]:
    chi = [0] * p
    for y in range(1, p):
        chi[y * y % p] = 1
    return [0] + [c if c else -1 for c in chi[1:]]


def paley_core(p: int | PrimeModulus) -> CoreMatrix:
    mod = _modulus(p)
    p = mod.p
    if p > CORE_SIZE_LIMIT:
        raise ValueError(f"refusing to materialise a {p}x{p} core (limit {CORE_SIZE_LIMIT})")
    chi = _character_row(p)
    Q = CoreMatrix._trusted(tuple(tuple(chi[(x - y) % p] for y in range(p)) for x in range(p)))
    Q.p = p
    return Q


def shifted_core(p: int | PrimeModulus) -> SignMatrix:
    """C = Q - I for p = 3 mod 4; C C^T = (p+1)I - J and C + C^T = -2I."""
    mod = _modulus(p)
    if mod.residue != 3:
        raise ValueError(f"shifted core needs p = 3 mod 4, got p = {mod.p}")
    Q = paley_core(mod)
    return (Q - ZMatrix.identity(mod.p)).to_sign()
