"""Circulant sign matrices and their periodic autocorrelation."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import SignMatrix


def paf(x: tuple[int, ...]) -> tuple[int, ...]:
    """Periodic autocorrelation at shifts 1..k-1."""
    k = len(x)
    return tuple(sum(x[i] * x[(i + j) % k] for i in range(k)) for j in range(1, k))


def circulant(first_row: tuple[int, ...]) -> SignMatrix:
    """Row i is the first row cyclically shifted i places to the right."""
    k = len(first_row)
    return SignMatrix(tuple(first_row[(j - i) % k] for j in range(k)) for i in range(k))


@dataclass(frozen=True, order=True)
class CirculantPair:
    """First rows of circulants R, S with RR^T + SS^T = (2k-2)I + 2J."""

    first_row_R: tuple[int, ...]
    first_row_S: tuple[int, ...]

    def __post_init__(self):
        if len(self.first_row_R) != len(self.first_row_S) or not self.first_row_R:
            raise ValueError("first rows must be non-empty and of equal length")
        for x in self.first_row_R + self.first_row_S:
            if x not in (1, -1):
                raise ValueError(f"entry {x} is not +1 or -1")

    @property
    def k(self) -> int:
        return len(self.first_row_R)

    @property
    def r(self) -> int:
        return sum(self.first_row_R)

    @property
    def s(self) -> int:
        return sum(self.first_row_S)

    @property
    def row_sum_class(self) -> tuple[int, int]:
        return self.r, self.s

    def R(self) -> SignMatrix:
        return circulant(self.first_row_R)

    def S(self) -> SignMatrix:
        return circulant(self.first_row_S)

    def violations(self) -> list[str]:
        """Reasons this pair fails the pair identity (empty when valid)."""
        out = []
        pr, ps = paf(self.first_row_R), paf(self.first_row_S)
        for j, (a, b) in enumerate(zip(pr, ps), start=1):
            if a + b != 2:
                out.append(f"PAF_R({j}) + PAF_S({j}) = {a + b}, expected 2")
        if self.r ** 2 + self.s ** 2 != 4 * self.k - 2:
            out.append(f"r^2 + s^2 = {self.r ** 2 + self.s ** 2}, expected {4 * self.k - 2}")
        return out

    def is_valid(self) -> bool:
        return not self.violations()

    def to_sign_matrix(self) -> SignMatrix:
        """Two-row matrix holding the first rows (file format payload)."""
        return SignMatrix([self.first_row_R, self.first_row_S])

    @classmethod
    def from_sign_matrix(cls, M: SignMatrix) -> "CirculantPair":
        if M.rows != 2:
            raise ValueError(f"a circulant pair file has 2 rows, got {M.rows}")
        return cls(M.row(0), M.row(1))
