"""Exact certification of square sign matrices.

The classifier works on the Gram matrix.  Each positive answer carries the
row negations and row order that bring the Gram matrix into its canonical
form, so the answer can be re-checked independently with :meth:`GramClass.recheck`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .bounds import BoundValue, bound_for, ratio_decimal
from .circulant import CirculantPair
from .constructions import (
    Construction,
    ConstructionCertificate,
    Family,
    Partition,
    brouwer_whiteman,
    build,
    doubling,
    ehlich_block_matrix,
    excess_border,
    is_hadamard,
    two_circulant_border,
)
from .feasibility import FeasibilityReport, feasibility
from .linalg import DimensionError, SignMatrix, ZMatrix, det_exact, excess, gram, row_sums

__all__ = [
    "CertificateMismatch",
    "GramClass",
    "GramTag",
    "VerificationReport",
    "classify_gram",
    "classify_gram_matrix",
    "expected_certificate",
    "is_hadamard",
    "normalize_rows",
    "verify",
]


class GramTag(str, Enum):
    HADAMARD = "HadamardDiagonal"
    BARBA = "BarbaOptimal"
    TWO_MOD_4 = "TwoMod4Optimal"
    EHLICH_BLOCK = "EhlichBlock"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class GramClass:
    tag: GramTag
    signs: tuple[int, ...] = ()
    order: tuple[int, ...] = ()
    partition: Partition | None = None
    blocks: tuple[int, ...] = ()
    reason: str = ""

    def canonical(self, n: int) -> ZMatrix | None:
        if self.tag is GramTag.HADAMARD:
            return ZMatrix.scalar(n, n)
        if self.tag is GramTag.BARBA:
            return ZMatrix([[n if i == j else 1 for j in range(n)] for i in range(n)])
        if self.tag is GramTag.TWO_MOD_4:
            h = n // 2
            return ZMatrix(
                [
                    [n if i == j else (2 if (i < h) == (j < h) else 0) for j in range(n)]
                    for i in range(n)
                ]
            )
        if self.tag is GramTag.EHLICH_BLOCK:
            return ehlich_block_matrix(n, self.partition)
        return None

    def recheck(self, G: ZMatrix) -> bool:
        """Apply the recorded negations and order to G and compare with the canonical form."""
        target = self.canonical(G.rows)
        if target is None:
            return False
        return _transform(G, self.signs, self.order) == target


def _transform(G: ZMatrix, signs, order) -> ZMatrix:
    return ZMatrix(
        [[signs[a] * signs[b] * G[a, b] for b in order] for a in order]
    )


def normalize_rows(M: SignMatrix) -> tuple[SignMatrix, tuple[int, ...]]:
    """Negate every row holding an odd number of -1 entries.

    For odd order n every Gram entry of the result is then n mod 4.
    Returns the new matrix and the diagonal of signs applied.
    """
    if not M.is_square:
        raise DimensionError("normalization needs a square matrix")
    if M.rows % 2 == 0:
        raise ValueError("normalization needs odd order")
    signs = tuple(-1 if r.count(-1) % 2 else 1 for r in M)
    return M.negate_rows(signs), signs


def _mod4_signs(G: ZMatrix) -> tuple[int, ...]:
    # Gram-level form of the row normalization: make row 0 agree with the
    # diagonal mod 4.  Equal to the row-parity signs up to a global sign.
    d = G[0, 0]
    return (1,) + tuple(1 if (G[0, j] - d) % 4 == 0 else -1 for j in range(1, G.rows))


def _is_scalar(G: ZMatrix, n: int) -> bool:
    return G == ZMatrix.scalar(G.rows, n)


def _classify_two_mod_4(G: ZMatrix) -> GramClass | None:
    n = G.rows
    if n % 4 != 2:
        return None
    A = [j for j in range(n) if j == 0 or G[0, j] % 4 == 2]
    B = [j for j in range(n) if j not in set(A)]
    if len(A) != n // 2 or len(B) != n // 2:
        return None
    signs = [1] * n
    for block in (A, B):
        ref = block[0]
        for j in block[1:]:
            if G[ref, j] == -2:
                signs[j] = -1
    cls = GramClass(GramTag.TWO_MOD_4, tuple(signs), tuple(A + B), blocks=(len(A), len(B)))
    return cls if cls.recheck(G) else None


def _classify_ehlich(G: ZMatrix) -> GramClass:
    n = G.rows
    signs = _mod4_signs(G)
    H = _transform(G, signs, range(n))
    for i in range(n):
        for j in range(n):
            if i != j and H[i, j] not in (-1, 3):
                return GramClass(
                    GramTag.UNCLASSIFIED,
                    reason=f"normalized entry ({i}, {j}) = {H[i, j]} is not -1 or 3",
                )
    groups: list[list[int]] = []
    owner = [-1] * n
    for i in range(n):
        if owner[i] < 0:
            owner[i] = len(groups)
            groups.append([i])
            for j in range(i + 1, n):
                if H[i, j] == 3 and owner[j] < 0:
                    owner[j] = owner[i]
                    groups[-1].append(j)
    for a in range(n):
        for b in range(a + 1, n):
            if (owner[a] == owner[b]) != (H[a, b] == 3):
                root = groups[owner[a]][0]
                return GramClass(
                    GramTag.UNCLASSIFIED,
                    reason=f"entry-3 relation not transitive on rows ({root}, {a}, {b})",
                )
    groups.sort(key=lambda g: (-len(g), g[0]))
    order = tuple(i for g in groups for i in g)
    partition = Partition(tuple(len(g) for g in groups))
    cls = GramClass(GramTag.EHLICH_BLOCK, signs, order, partition)
    if not cls.recheck(G):
        return GramClass(GramTag.UNCLASSIFIED, reason="diagonal differs from the order")
    return cls


def classify_gram_matrix(G: ZMatrix) -> GramClass:
    """Classify a symmetric integer matrix with constant diagonal n."""
    if not G.is_square:
        raise DimensionError("Gram matrix must be square")
    n = G.rows
    ident = tuple(range(n))
    if any(G[i, i] != n for i in range(n)):
        return GramClass(GramTag.UNCLASSIFIED, reason="diagonal is not the order")
    if _is_scalar(G, n):
        return GramClass(GramTag.HADAMARD, (1,) * n, ident)
    if n % 2 == 1:
        signs = _mod4_signs(G)
        cls = GramClass(GramTag.BARBA, signs, ident)
        if cls.recheck(G):
            return cls
        if n % 4 == 3:
            return _classify_ehlich(G)
        return GramClass(GramTag.UNCLASSIFIED, reason="odd order, not (n-1)I + J after normalization")
    cls = _classify_two_mod_4(G)
    if cls is not None:
        return cls
    return GramClass(GramTag.UNCLASSIFIED, reason="no canonical form matched")


def classify_gram(M: SignMatrix) -> GramClass:
    if not M.is_square:
        raise DimensionError("classification needs a square matrix")
    return classify_gram_matrix(gram(M))


class CertificateMismatch(Exception):
    def __init__(self, message: str, where: tuple[int, int] | None = None, expected=None, actual=None):
        super().__init__(message)
        self.where = where
        self.expected = expected
        self.actual = actual


def _first_difference(A: ZMatrix, B: ZMatrix):
    for i in range(A.rows):
        for j in range(A.cols):
            if A[i, j] != B[i, j]:
                return (i, j), A[i, j], B[i, j]
    return None


def _solve_bw(n: int) -> int | None:
    # n = 2p^2 + 2p + 1  <=>  2n - 1 = (2p + 1)^2
    r = math.isqrt(2 * n - 1)
    if r * r != 2 * n - 1 or r < 3:
        return None
    return (r - 1) // 2


def expected_certificate(family: Family | str, M: SignMatrix) -> ConstructionCertificate:
    """Reference certificate for ``family`` at the order of M.

    Parameters are recovered from the order where they determine the matrix; for
    bordered and doubled families they are read back from the corresponding
    block of M itself.
    """
    family = Family(family)
    n = M.rows
    try:
        if family is Family.SYLVESTER:
            t = n.bit_length() - 1
            if 2 ** t != n:
                raise ValueError(f"order {n} is not a power of two")
            return build(family, t=t).certificate
        if family is Family.PALEY_I:
            return build(family, p=n - 1).certificate
        if family is Family.COHN_BORDER:
            return build(family, q=n - 1).certificate
        if family is Family.BROUWER_WHITEMAN:
            p = _solve_bw(n)
            if p is None:
                raise ValueError(f"order {n} is not 2p^2 + 2p + 1")
            return brouwer_whiteman(p).certificate
        if family is Family.OSDS:
            if (n - 3) % 4:
                raise ValueError(f"order {n} is not 4q + 3")
            return build(family, q=(n - 3) // 4).certificate
        if family is Family.EXCESS_BORDER:
            H = M.submatrix(range(n - 1), range(n - 1)).to_sign()
            return excess_border(H).certificate
        if family is Family.DOUBLING:
            if n % 2:
                raise ValueError("doubling has even order")
            W = M.submatrix(range(n // 2), range(n // 2)).to_sign()
            return doubling(W).certificate
        if family is Family.TWO_CIRCULANT_BORDER:
            if n % 2 == 0:
                raise ValueError("two-circulant border has odd order")
            k = n // 2
            pair = CirculantPair(M.row(0)[:k], M.row(0)[k : 2 * k])
            built = two_circulant_border(pair, "m2", "R")
            if built.matrix != M:
                try:
                    alt = two_circulant_border(pair, "m1", "R")
                except ValueError:
                    alt = None
                if alt is not None and alt.matrix == M:
                    built = alt
            return built.certificate
    except (ValueError, KeyError) as exc:
        raise CertificateMismatch(f"no {family.value} certificate for this matrix: {exc}") from exc
    raise CertificateMismatch(f"{family.value} does not produce square matrices")


@dataclass(frozen=True)
class VerificationReport:
    order: int
    det: int
    det_sq: int
    gram_class: GramClass
    bound: BoundValue
    ratio: str
    row_sums: tuple[int, ...]
    excess: int
    feasibility: FeasibilityReport
    ratios: dict = field(default_factory=dict)
    family: Family | None = None
    parameters: dict = field(default_factory=dict)


def check_certificate(M: SignMatrix, cert: ConstructionCertificate, G: ZMatrix | None = None, det_sq: int | None = None) -> None:
    G = gram(M) if G is None else G
    if M.rows != cert.order:
        raise CertificateMismatch(f"order {M.rows} differs from certified order {cert.order}")
    if cert.predicted_gram is not None:
        diff = _first_difference(cert.predicted_gram, G)
        if diff is not None:
            (i, j), e, a = diff
            raise CertificateMismatch(
                f"Gram entry ({i}, {j}) is {a}, certificate predicts {e}", (i, j), e, a
            )
    det_sq = det_exact(G) if det_sq is None else det_sq
    if det_sq != cert.predicted_gram_det:
        raise CertificateMismatch(
            f"det(MM^T) = {det_sq}, certificate predicts {cert.predicted_gram_det}",
            None,
            cert.predicted_gram_det,
            det_sq,
        )


def verify(
    M: SignMatrix,
    expected: Family | str | ConstructionCertificate | Construction | None = None,
    digits: int = 4,
) -> VerificationReport:
    """Full exact report for a square sign matrix.

    ``expected`` may be a family name or a certificate; any disagreement between
    it and the measured Gram matrix raises :class:`CertificateMismatch`.
    """
    if not M.is_square:
        raise DimensionError(f"verification needs a square matrix, got {M.shape}")
    n = M.rows
    det = det_exact(M)
    G = gram(M)
    det_sq = det * det
    cert = None
    if isinstance(expected, Construction):
        cert = expected.certificate
    elif isinstance(expected, ConstructionCertificate):
        cert = expected
    elif expected is not None:
        cert = expected_certificate(expected, M)
    if cert is not None:
        check_certificate(M, cert, G, det_sq)
    bound = bound_for(n)
    ratios = {b.kind.value: ratio_decimal(det_sq, b.gram_bound, digits) for b in (bound,) + bound.alternatives}
    return VerificationReport(
        order=n,
        det=det,
        det_sq=det_sq,
        gram_class=classify_gram_matrix(G),
        bound=bound,
        ratio=ratios[bound.kind.value],
        row_sums=row_sums(M),
        excess=excess(M),
        feasibility=feasibility(n),
        ratios=ratios,
        family=cert.family if cert is not None else None,
        parameters=dict(cert.parameters) if cert is not None else {},
    )
