"""Congruence and Diophantine obstructions to meeting each bound.

A report only ever says whether a bound is *obstructed*.  Passing every test is
not a claim that the bound is attained; that needs a witness matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

from .bounds import BoundKind, bound_for


def is_perfect_square(m: int) -> int | None:
    if m < 0:
        raise ValueError("m must be non-negative")
    r = isqrt(m)
    return r if r * r == m else None


def sum_of_two_squares(m: int) -> tuple[int, int] | None:
    """(a, b) with a^2 + b^2 = m and a >= b >= 0, found by scanning b; None if there is none."""
    if m < 0:
        raise ValueError("m must be non-negative")
    for b in range(isqrt(m // 2) + 1):
        a = is_perfect_square(m - b * b)
        if a is not None:
            return a, b
    return None


def two_squares_obstruction(m: int) -> tuple[int, int] | None:
    """A prime p = 3 mod 4 dividing m to an odd power, with that power; None if none exists.

    Trial division; only used to explain a failed scan.
    """
    if m <= 0:
        return None
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        if e % 2 == 1 and p % 4 == 3:
            return p, e
        p += 1
    if m > 1 and m % 4 == 3:
        return m, 1
    return None


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: str


@dataclass(frozen=True)
class FeasibilityReport:
    n: int
    residue_class: int
    applicable_bound: BoundKind
    obstructions: tuple[Check, ...] = field(default_factory=tuple)

    @property
    def obstructed(self) -> bool:
        return any(not c.passed for c in self.obstructions)

    def summary(self) -> str:
        lines = [f"n = {self.n} (n mod 4 = {self.residue_class}), bound: {self.applicable_bound.value}"]
        for c in self.obstructions:
            lines.append(f"  {'pass' if c.passed else 'FAIL'}  {c.name}: {c.witness}")
        return "\n".join(lines)


def _hadamard_order(n: int) -> Check:
    ok = n in (1, 2) or n % 4 == 0
    if ok:
        w = f"n = {n} is 1, 2 or a multiple of 4"
    else:
        w = f"n mod 4 = {n % 4}; Hadamard orders are 1, 2 or 0 mod 4"
    return Check("hadamard-order", ok, w)


def _barba_square(n: int) -> list[Check]:
    m = 2 * n - 1
    r = is_perfect_square(m)
    if r is None:
        lo = isqrt(m)
        checks = [Check("barba-square", False, f"2n-1 = {m} lies strictly between {lo}^2 and {lo + 1}^2")]
    else:
        checks = [Check("barba-square", True, f"2n-1 = {m} = {r}^2")]
    # A square 2n - 1 is odd, hence 1 mod 8, which forces n = 1 mod 4.
    checks.append(
        Check(
            "barba-residue",
            n % 4 == 1,
            f"n mod 4 = {n % 4}" + ("" if n % 4 == 1 else "; 2n-1 = 5 mod 8 is never a square"),
        )
    )
    return checks


def _ew_two_squares(n: int) -> Check:
    m = 2 * n - 2
    rep = sum_of_two_squares(m)
    if rep is not None:
        return Check("ew-two-squares", True, f"2n-2 = {m} = {rep[0]}^2 + {rep[1]}^2")
    bad = two_squares_obstruction(m)
    w = f"2n-2 = {m} is not a sum of two squares"
    if bad is not None:
        w += f" ({bad[0]}^{bad[1]} exactly divides it, {bad[0]} = 3 mod 4)"
    return Check("ew-two-squares", False, w)


def feasibility(n: int) -> FeasibilityReport:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    kind = bound_for(n).kind
    if n % 4 == 0 or n <= 2:
        checks = [_hadamard_order(n)]
    elif n % 2 == 1:
        checks = _barba_square(n)
    else:
        checks = [_ew_two_squares(n)]
    return FeasibilityReport(n, n % 4, kind, tuple(checks))
