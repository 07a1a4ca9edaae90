"""Upper bounds on det(M M^T) for {+1, -1} matrices, carried exactly.

Every bound is stored as its square (a bound on the Gram determinant) so that
nothing here needs a square root.  Roots only appear in :func:`ratio_decimal`,
which renders sqrt(p/q) correctly rounded from integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import isqrt
from typing import Iterator

from .constructions import Partition

SMOOTH_CONSTANT = Fraction(4 * 11 ** 6, 7 ** 7)
SMOOTH_MIN_ORDER = 63
# Orders below this use Barba in the reference table, orders from it use the smooth bound.
TABLE_SWITCH = 63


class BoundKind(str, Enum):
    HADAMARD = "hadamard"
    BARBA = "barba"
    EHLICH_WOJTAS = "ew"
    EHLICH_SMOOTH = "ehlich"
    EHLICH_PARTITION = "ehlich-partition"


class BoundSelectionError(ValueError):
    """The requested bound does not apply to this order."""


@dataclass(frozen=True)
class BoundValue:
    kind: BoundKind
    n: int
    gram_bound: Fraction
    attainable_note: str = ""
    partition: Partition | None = None
    alternatives: tuple["BoundValue", ...] = ()

    def __post_init__(self):
        if self.gram_bound <= 0:
            raise ValueError("bound must be positive")

    def symbolic(self) -> str:
        """Human-readable product form of the squared bound."""
        n = self.n
        if self.kind is BoundKind.HADAMARD:
            return f"{n}^{n}"
        if self.kind is BoundKind.BARBA:
            return f"{2 * n - 1}·{n - 1}^{n - 1}"
        if self.kind is BoundKind.EHLICH_WOJTAS:
            return f"{2 * n - 2}^2·{n - 2}^{n - 2}"
        if self.kind is BoundKind.EHLICH_SMOOTH:
            return f"(4·11^6/7^7)·{n}·{n - 1}^6·{n - 3}^{n - 7}"
        return f"{self.partition} -> {self.gram_bound}"

    def get(self, kind: BoundKind | str) -> "BoundValue":
        kind = BoundKind(kind)
        for b in (self,) + self.alternatives:
            if b.kind is kind:
                return b
        raise BoundSelectionError(f"no {kind.value} bound attached for n = {self.n}")


def _positive(n: int) -> None:
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")


def hadamard_bound_sq(n: int) -> int:
    _positive(n)
    return n ** n


def barba_bound_sq(n: int) -> int:
    _positive(n)
    if n % 2 == 0:
        raise BoundSelectionError(f"Barba bound needs odd n, got {n}")
    return (2 * n - 1) * (n - 1) ** (n - 1)


def ew_bound(n: int) -> int:
    """(2n - 2)(n - 2)^((n - 2)/2), a bound on |det| itself for n = 2 mod 4."""
    _positive(n)
    if n % 4 != 2:
        raise BoundSelectionError(f"Ehlich-Wojtas bound needs n = 2 mod 4, got {n}")
    return (2 * n - 2) * (n - 2) ** ((n - 2) // 2)


def ew_bound_sq(n: int) -> int:
    return ew_bound(n) ** 2


def _as_partition(n: int, partition) -> Partition:
    partition = partition if isinstance(partition, Partition) else Partition(tuple(partition))
    if partition.n != n:
        raise ValueError(f"partition {partition} does not sum to {n}")
    return partition


def ehlich_partition_det(n: int, partition: Partition | tuple[int, ...]) -> int:
    """Determinant of the Ehlich-block matrix with the given block sizes.

    With a_i = n - 3 + 4 r_i the value is
    (n-3)^(n-s) * prod(a_i) * (1 - sum(r_i / a_i)); clearing the denominators
    gives (n-3)^(n-s) * (prod(a_i) - sum(r_i * prod_{j != i} a_j)).
    """
    partition = _as_partition(n, partition)
    P, T = 1, 0
    for r in partition:
        a = n - 3 + 4 * r
        P, T = P * a, T * a + r * P
    return (n - 3) ** (n - partition.s) * (P - T)


def ehlich_partition_det_rational(n: int, partition: Partition | tuple[int, ...]) -> Fraction:
    """The same value evaluated literally with rational arithmetic."""
    partition = _as_partition(n, partition)
    prod = Fraction(1)
    frac = Fraction(0)
    for r in partition:
        a = Fraction(n - 3 + 4 * r)
        prod *= a
        frac += r / a
    return Fraction(n - 3) ** (n - partition.s) * prod * (1 - frac)


def part_counts(n: int) -> tuple[int, ...]:
    """Candidate numbers of blocks for the optimal partition of n = 3 mod 4.

    Both neighbouring counts are returned at the boundary orders 11 and 59.
    """
    if n % 4 != 3:
        raise BoundSelectionError(f"Ehlich bound needs n = 3 mod 4, got {n}")
    if n < 7:
        raise BoundSelectionError(f"Ehlich bound needs n >= 7, got {n}")
    if n == 7:
        return (5,)
    if n == 11:
        return (5, 6)
    if n < 59:
        return (6,)
    if n == 59:
        return (6, 7)
    return (7,)


def balanced_partition(n: int, s: int) -> Partition:
    """n split into s parts whose sizes differ by at most one."""
    if not 1 <= s <= n:
        raise ValueError(f"cannot split {n} into {s} parts")
    q, extra = divmod(n, s)
    return Partition((q + 1,) * extra + (q,) * (s - extra))


def ehlich_optimal_partition(n: int) -> tuple[Partition, int]:
    best = None
    for s in part_counts(n):
        P = balanced_partition(n, s)
        value = ehlich_partition_det(n, P)
        if best is None or value > best[1]:
            best = (P, value)
    return best


def partitions(n: int, max_part: int | None = None, max_parts: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n as non-increasing tuples, in reverse lexicographic order."""
    max_part = n if max_part is None else max_part
    max_parts = n if max_parts is None else max_parts

    def rec(rest, cap, room):
        if rest == 0:
            yield ()
            return
        if room == 0:
            return
        for first in range(min(cap, rest), 0, -1):
            if first * room < rest:
                break
            for tail in rec(rest - first, first, room - 1):
                yield (first,) + tail

    yield from rec(n, max_part, max_parts)


def exhaustive_partition_max(n: int, max_parts: int | None = None) -> tuple[Partition, int]:
    """Largest Ehlich-partition determinant over every partition of n.

    Walks the partition tree once, updating prod(a_i) and the cleared sum
    incrementally, so each leaf costs O(1).  Ties go to the first partition met
    in reverse lexicographic order.
    """
    if n < 4:
        raise ValueError("exhaustive partition search needs n >= 4")
    max_parts = n if max_parts is None else max_parts
    base = n - 3
    best_val = None
    best_parts: list[int] = []
    stack: list[int] = []

    def rec(rest, cap, P, T):
        nonlocal best_val, best_parts
        if rest == 0:
            value = base ** (n - len(stack)) * (P - T)
            if best_val is None or value > best_val:
                best_val, best_parts = value, list(stack)
            return
        if len(stack) == max_parts:
            return
        for r in range(min(cap, rest), 0, -1):
            if r * (max_parts - len(stack)) < rest:
                break
            a = base + 4 * r
            stack.append(r)
            rec(rest - r, r, P * a, T * a + r * P)
            stack.pop()

    rec(n, n, 1, 0)
    return Partition(tuple(best_parts)), best_val


def ehlich_smooth_expression(n: int) -> Fraction:
    """(4 * 11^6 / 7^7) n (n-1)^6 (n-3)^(n-7) for any n >= 7; a bound only from 63 on."""
    if n < 7:
        raise ValueError(f"expression needs n >= 7, got {n}")
    return SMOOTH_CONSTANT * n * (n - 1) ** 6 * (n - 3) ** (n - 7)


def ehlich_smooth_bound(n: int) -> Fraction:
    if n % 4 != 3:
        raise BoundSelectionError(f"smooth Ehlich bound needs n = 3 mod 4, got {n}")
    if n < SMOOTH_MIN_ORDER:
        raise BoundSelectionError(f"smooth Ehlich bound needs n >= {SMOOTH_MIN_ORDER}, got {n}")
    return ehlich_smooth_expression(n)


def _note(n: int) -> str:
    if n <= 2 or n % 4 == 0:
        return "nI Gram possible only if a Hadamard matrix of order n exists"
    if n % 2 == 1:
        m = 2 * n - 1
        r = isqrt(m)
        if r * r == m:
            return f"2n-1 = {m} = {r}^2; not obstructed"
        return f"2n-1 = {m} is not a square; Barba value unattainable"
    m = 2 * n - 2
    for b in range(isqrt(m // 2) + 1):
        a = isqrt(m - b * b)
        if a * a + b * b == m:
            return f"2n-2 = {m} = {a}^2 + {b}^2; not obstructed"
    return f"2n-2 = {m} is not a sum of two squares; EW value unattainable"


def _make(kind: BoundKind, n: int) -> BoundValue:
    if kind is BoundKind.HADAMARD:
        return BoundValue(kind, n, Fraction(hadamard_bound_sq(n)), _note(n) if n % 4 == 0 or n <= 2 else "")
    if kind is BoundKind.BARBA:
        return BoundValue(kind, n, Fraction(barba_bound_sq(n)), _note(n))
    if kind is BoundKind.EHLICH_WOJTAS:
        return BoundValue(kind, n, Fraction(ew_bound_sq(n)), _note(n))
    if kind is BoundKind.EHLICH_SMOOTH:
        return BoundValue(kind, n, ehlich_smooth_bound(n), "")
    P, value = ehlich_optimal_partition(n)
    return BoundValue(kind, n, Fraction(value), "", P)


def select_bound(n: int, which: BoundKind | str) -> BoundValue:
    """A specific bound at order n; raises BoundSelectionError when it does not apply."""
    _positive(n)
    return _make(BoundKind(which), n)


def bound_for(n: int) -> BoundValue:
    """The default bound at order n.

    n = 0 mod 4 (and n = 2) uses Hadamard, n = 2 mod 4 uses Ehlich-Wojtas, odd n
    uses Barba except n = 3 mod 4 with n >= 63, which uses the smooth Ehlich
    bound.  For n = 3 mod 4 the other Ehlich-type values are attached as
    alternatives.
    """
    _positive(n)
    if n % 4 == 0:
        return _make(BoundKind.HADAMARD, n)
    if n % 4 == 2:
        return _make(BoundKind.EHLICH_WOJTAS, n)
    if n % 4 == 1 or n < 7:
        return _make(BoundKind.BARBA, n)
    extra = [_make(BoundKind.BARBA, n), _make(BoundKind.EHLICH_PARTITION, n)]
    if n >= SMOOTH_MIN_ORDER:
        extra.insert(1, _make(BoundKind.EHLICH_SMOOTH, n))
    primary = extra[1] if n >= TABLE_SWITCH else extra[0]
    others = tuple(b for b in extra if b is not primary)
    return BoundValue(primary.kind, n, primary.gram_bound, primary.attainable_note, primary.partition, others)


def ratio_decimal(det_sq: int, bound_sq: Fraction | int, digits: int = 4) -> str:
    """sqrt(det_sq / bound_sq) correctly rounded to ``digits`` places, ties to even."""
    if det_sq < 0:
        raise ValueError("det_sq must be non-negative")
    if bound_sq <= 0:
        raise ValueError("bound must be positive")
    q = Fraction(det_sq) / Fraction(bound_sq)
    if digits < 0:
        raise ValueError("digits must be non-negative")
    a, b = q.numerator, q.denominator
    scaled = a * 10 ** (2 * digits)
    N = isqrt(scaled // b)
    lhs, rhs = 4 * scaled, b * (2 * N + 1) ** 2
    if lhs > rhs or (lhs == rhs and N % 2 == 1):
        N += 1
    whole, frac = divmod(N, 10 ** digits)
    if digits == 0:
        return str(whole)
    return f"{whole}.{frac:0{digits}d}"


def ratio(det_sq: int, bound: BoundValue, digits: int = 4) -> str:
    return ratio_decimal(det_sq, bound.gram_bound, digits)
