"""Explicit {+1, -1} matrix families with large determinant.

Each public builder returns a :class:`Construction`: the matrix together with a
:class:`ConstructionCertificate` predicting its Gram matrix and the exact value
of ``det(M M^T)``.  Block layouts follow the usual displays for these
constructions verbatim; no normalisation is applied to the output.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import NamedTuple, Sequence

from .circulant import CirculantPair
from .field import PrimeModulus, is_prime, paley_core, shifted_core
from .linalg import (
    SignMatrix,
    ZMatrix,
    block_assemble,
    excess,
    gram,
    ones,
    row_sums,
    tensor,
)

DEFAULT_SIZE_GUARD = 4096


class SizeGuardError(ValueError):
    pass


def size_guard() -> int:
    return int(os.environ.get("MAXDET_SIZE_GUARD", DEFAULT_SIZE_GUARD))


def _check_order(n: int, guard: int | None) -> None:
    limit = size_guard() if guard is None else guard
    if n > limit:
        raise SizeGuardError(f"order {n} exceeds size guard {limit}")


class Family(str, Enum):
    SYLVESTER = "sylvester"
    PALEY_I = "paley1"
    COHN_BORDER = "cohn"
    EXCESS_BORDER = "excess-border"
    AFFINE_ORTHO = "affine-ortho"
    BW_ORTHO = "bw-ortho"
    BROUWER_WHITEMAN = "brouwer-whiteman"
    DOUBLING = "doubling"
    TWO_CIRCULANT_BORDER = "two-circulant"
    OSDS = "osds"
    EHLICH_BLOCK = "ehlich-block"


@dataclass(frozen=True)
class ConstructionCertificate:
    family: Family
    order: int
    predicted_gram_det: int
    predicted_gram_shape: str
    parameters: dict = field(default_factory=dict)
    predicted_gram: ZMatrix | None = field(default=None, repr=False, compare=False)
    alternatives: tuple = ()

    def __post_init__(self):
        if self.predicted_gram_det < 0:
            raise ValueError("predicted Gram determinant must be non-negative")


class Construction(NamedTuple):
    matrix: SignMatrix
    certificate: ConstructionCertificate


@dataclass(frozen=True)
class Partition:
    """Non-increasing positive parts; the Ehlich-block sizes."""

    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(sorted((int(p) for p in self.parts), reverse=True))
        if not parts or parts[-1] < 1:
            raise ValueError(f"bad partition {self.parts!r}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def s(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"


# small shared blocks


def _J(r: int, c: int | None = None) -> SignMatrix:
    return ones(r, c)


def _I(n: int) -> ZMatrix:
    return ZMatrix.identity(n)


def _scalar_plus_j(n: int, diag: int, off: int) -> ZMatrix:
    """(diag - off) I + off J."""
    return ZMatrix([[diag if i == j else off for j in range(n)] for i in range(n)])


def _block_diag(*blocks: ZMatrix) -> ZMatrix:
    layout = []
    for i, b in enumerate(blocks):
        layout.append([b if i == j else ZMatrix.zeros(b.rows, o.cols) for j, o in enumerate(blocks)])
    return block_assemble(layout)


def _odd_prime(p: int, residue: int | None, what: str) -> PrimeModulus:
    if p < 3 or not is_prime(p):
        raise ValueError(f"{what} needs an odd prime, got {p}")
    mod = PrimeModulus(p)
    if residue is not None and mod.residue != residue:
        raise ValueError(f"{what} needs p = {residue} mod 4, got p = {p}")
    return mod


# Hadamard families

H2 = SignMatrix([[1, 1], [1, -1]])


def sylvester(t: int, guard: int | None = None) -> Construction:
    if t < 0:
        raise ValueError("exponent must be non-negative")
    n = 2 ** t
    _check_order(n, guard)
    H: SignMatrix = SignMatrix([[1]])
    for _ in range(t):
        H = tensor(H, H2)
    cert = ConstructionCertificate(
        Family.SYLVESTER, n, n ** n, "nI", {"t": t}, ZMatrix.scalar(n, n)
    )
    return Construction(H, cert)


def _core_border(Q: ZMatrix) -> SignMatrix:
    p = Q.rows
    return block_assemble(
        [[Q + _I(p), -_J(p, 1)], [_J(1, p), _J(1, 1)]]
    ).to_sign()


def paley_I(p: int, guard: int | None = None) -> Construction:
    """Skew-symmetric Hadamard matrix [[Q + I, -j], [j^T, 1]] of order p + 1."""
    mod = _odd_prime(p, 3, "Paley type I")
    n = p + 1
    _check_order(n, guard)
    H = _core_border(paley_core(mod))
    cert = ConstructionCertificate(
        Family.PALEY_I, n, n ** n, "nI", {"p": p}, ZMatrix.scalar(n, n)
    )
    return Construction(H, cert)


def cohn_border(q: int, guard: int | None = None) -> Construction:
    """The same bordering with a symmetric core (q = 1 mod 4); order q + 1.

    The Gram matrix is diag((q+1)I + 2Q, q+1) and
    |det| = (q+1)(q-1)^((q-1)/2).
    """
    mod = _odd_prime(q, 1, "Cohn bordering")
    n = q + 1
    _check_order(n, guard)
    Q = paley_core(mod)
    M = _core_border(Q)
    G = _block_diag(_I(q) * (q + 1) + Q * 2, ZMatrix([[q + 1]]))
    cert = ConstructionCertificate(
        Family.COHN_BORDER,
        n,
        (q + 1) ** 2 * (q - 1) ** (q - 1),
        "diag((q+1)I + 2Q, q+1)",
        {"q": q},
        G,
    )
    return Construction(M, cert)


def is_hadamard(M: ZMatrix) -> bool:
    return M.is_square and gram(M) == ZMatrix.scalar(M.rows, M.rows)


def excess_border(H: SignMatrix, guard: int | None = None) -> Construction:
    """Border a Hadamard matrix H of order h: [[H, 1], [-1^T, 1]].

    det(M) = det(H) (1 + e(H)/h) where e(H) is the sum of entries of H.
    """
    if not is_hadamard(H):
        raise ValueError("excess bordering needs a Hadamard matrix")
    h = H.rows
    _check_order(h + 1, guard)
    e = excess(H)
    M = block_assemble([[H, _J(h, 1)], [-_J(1, h), _J(1, 1)]]).to_sign()
    # det(H)^2 = h^h, so det(M)^2 = h^h (1 + e/h)^2 = h^(h-2) (h + e)^2.
    gram_det = Fraction(h) ** h * (1 + Fraction(e, h)) ** 2
    assert gram_det.denominator == 1
    sums = row_sums(H)
    border = [1 - x for x in sums]
    G = block_assemble(
        [
            [_scalar_plus_j(h, h + 1, 1), ZMatrix([[b] for b in border])],
            [ZMatrix([border]), ZMatrix([[h + 1]])],
        ]
    )
    cert = ConstructionCertificate(
        Family.EXCESS_BORDER,
        h + 1,
        int(gram_det),
        "[[hI + J, 1 - Hj], [.., h + 1]]",
        {"h": h, "excess": e},
        G,
    )
    return Construction(M, cert)


# affine plane and the Brouwer-Whiteman family


def affine_plane(p: int) -> ZMatrix:
    """0/1 incidence matrix of the affine plane AG(2, p), p^2 x (p^2 + p).

    Points (x, y) are ordered lexicographically.  Columns come in p + 1
    parallel classes of p lines each: first the vertical lines x = c, then
    for each slope a the lines y = a x + b.
    """
    if not is_prime(p):
        raise ValueError(f"affine plane needs a prime order, got {p}")
    rows = []
    for x in range(p):
        for y in range(p):
            r = [0] * (p * p + p)
            r[x] = 1
            for a in range(p):
                r[p + a * p + (y - a * x) % p] = 1
            rows.append(r)
    return ZMatrix(rows)


def parallel_classes(p: int) -> list[range]:
    return [range(c * p, (c + 1) * p) for c in range(p + 1)]


def bw_ortho_M(p: int, guard: int | None = None) -> Construction:
    """M = M_p (I_{p+1} (x) C): p^2 pairwise orthogonal rows of length p^2 + p.

    Rows are orthogonal, so M M^T is (p^2 + p) I, the row length times I.
    """
    mod = _odd_prime(p, 3, "affine orthogonal rows")
    _check_order(p * p + p, guard)
    C = shifted_core(mod)
    M = (affine_plane(p) @ tensor(_I(p + 1), C)).to_sign()
    n, w = p * p, p * p + p
    cert = ConstructionCertificate(
        Family.AFFINE_ORTHO, n, w ** n, "(p^2+p) I", {"p": p}, ZMatrix.scalar(n, w)
    )
    return Construction(M, cert)


def _nr_blocks(p: int):
    C = shifted_core(p)
    I, J = _I(p), _J(p)
    jr, jc = _J(1, p), _J(p, 1)
    CI, C2I = C + I, C + I * 2
    IJ = tensor(I, J)
    top = [-J, -tensor(C, jr), J, tensor(C2I, jr)]
    middle = [-tensor(jc, C), -tensor(CI, C) + IJ, tensor(jc, C), tensor(CI, C) + IJ]
    # Third block row as it appears inside W; the variant [J, j^T(x)C, -J, j^T(x)C]
    # is not orthogonal to the first block row.
    bottom = [J, -tensor(jr, C), J, tensor(jr, C)]
    return top, middle, bottom


def bw_N(p: int, guard: int | None = None) -> Construction:
    """(p^2 + 2p) x (2p^2 + 2p) sign matrix with N N^T = (2p^2 + 2p) I."""
    _odd_prime(p, 3, "Brouwer-Whiteman N")
    _check_order(2 * p * p + 2 * p, guard)
    top, middle, bottom = _nr_blocks(p)
    N = block_assemble([top, middle, bottom]).to_sign()
    n, w = p * p + 2 * p, 2 * p * p + 2 * p
    cert = ConstructionCertificate(
        Family.BW_ORTHO, n, w ** n, "(2p^2+2p) I", {"p": p}, ZMatrix.scalar(n, w)
    )
    return Construction(N, cert)


def brouwer_whiteman(p: int, guard: int | None = None) -> Construction:
    """Order n = 2p^2 + 2p + 1 with W W^T = (n-1)I + J and row sums 2p + 1."""
    mod = _odd_prime(p, 3, "Brouwer-Whiteman")
    n = 2 * p * p + 2 * p + 1
    _check_order(n, guard)
    p2 = p * p
    M = bw_ortho_M(p, guard).matrix
    first = list(parallel_classes(p)[0])
    rest = [c for c in range(M.cols) if c not in set(first)]
    M0 = M.submatrix(range(p2), first)
    M1 = M.submatrix(range(p2), rest)
    top, middle, bottom = _nr_blocks(mod.p)
    one = _J(1, 1)
    W = block_assemble(
        [
            [one, _J(1, p), -_J(1, p2), _J(1, p), _J(1, p2)],
            [_J(p, 1)] + top,
            [_J(p2, 1)] + middle,
            [_J(p, 1)] + bottom,
            [-_J(p2, 1), -M0, -M1, -M0, -M1],
        ]
    ).to_sign()
    cert = ConstructionCertificate(
        Family.BROUWER_WHITEMAN,
        n,
        (2 * n - 1) * (n - 1) ** (n - 1),
        "(n-1)I + J",
        {"p": p},
        _scalar_plus_j(n, n, 1),
    )
    return Construction(W, cert)


def doubling(W: SignMatrix, guard: int | None = None) -> Construction:
    """[[W, W], [W, -W]] for W with Gram (n-1)I + J; order 2n."""
    n = W.rows
    if not W.is_square or gram(W) != _scalar_plus_j(n, n, 1):
        raise ValueError("doubling needs a square matrix with Gram (n-1)I + J")
    _check_order(2 * n, guard)
    D = block_assemble([[W, W], [W, -W]]).to_sign()
    block = _scalar_plus_j(n, 2 * n, 2)
    half = (4 * n - 2) * (2 * n - 2) ** (n - 1)
    cert = ConstructionCertificate(
        Family.DOUBLING,
        2 * n,
        half * half,
        "diag((2n-2)I + 2J, (2n-2)I + 2J)",
        {"n": n},
        _block_diag(block, block),
    )
    return Construction(D, cert)


# bordered two-circulant construction

LEADS = ("R", "-R", "S", "-S")


def border_gram_det(k: int, r: int) -> int:
    """det(M M^T) for the bordered two-circulant matrix, leading row sum r."""
    poly = 4 * k * k * r * r - 16 * k * k * r + 16 * k * k - 16 * k + 8 * k * r + 4
    return poly * (2 * k - 2) ** (2 * k - 2)


def _lead_blocks(pair: CirculantPair, lead: str):
    R, S = pair.R(), pair.S()
    if lead == "R":
        return R, S
    if lead == "-R":
        return -R, S
    if lead == "S":
        return S, R
    if lead == "-S":
        return -S, R
    raise ValueError(f"lead must be one of {LEADS}, got {lead!r}")


def _lead_sums(pair: CirculantPair) -> dict[str, tuple[int, int]]:
    return {"R": (pair.r, pair.s), "-R": (-pair.r, pair.s), "S": (pair.s, pair.r), "-S": (-pair.s, pair.r)}


def default_lead(pair: CirculantPair) -> str:
    """The lead whose row sum is most negative (ties go to the earlier of R, -R, S, -S)."""
    sums = _lead_sums(pair)
    return min(LEADS, key=lambda L: (sums[L][0], LEADS.index(L)))


def border_four_determinants(pair: CirculantPair) -> tuple[tuple[str, int, int], ...]:
    """(lead, leading row sum, det(M M^T)) for each of the four leads."""
    return tuple((L, rs, border_gram_det(pair.k, rs)) for L, (rs, _) in _lead_sums(pair).items())


def two_circulant_border(
    pair: CirculantPair,
    variant: str = "m2",
    lead: str | None = None,
    guard: int | None = None,
) -> Construction:
    """Border a 2x2 array of circulants by a row and column of ones; order 2k + 1.

    ``m1`` is [[X, Y, 1], [Y, -X, -1], [1, 1, 1]] and needs X Y^T = Y X^T;
    ``m2`` is [[X, Y, 1], [Y^T, -X^T, -1], [1, 1, 1]].  X is the leading block.
    """
    problems = pair.violations()
    if problems:
        raise ValueError("circulant pair identity violated: " + "; ".join(problems))
    variant = variant.lower()
    if variant not in ("m1", "m2"):
        raise ValueError(f"variant must be m1 or m2, got {variant!r}")
    lead = default_lead(pair) if lead is None else lead
    X, Y = _lead_blocks(pair, lead)
    k = pair.k
    _check_order(2 * k + 1, guard)
    if variant == "m1":
        if X @ Y.T != Y @ X.T:
            raise ValueError("variant m1 needs R S^T = S R^T")
        second = [Y, -X, -_J(k, 1)]
    else:
        second = [Y.T, -X.T, -_J(k, 1)]
    M = block_assemble([[X, Y, _J(k, 1)], second, [_J(1, k), _J(1, k), _J(1, 1)]]).to_sign()
    r, s = _lead_sums(pair)[lead]
    diag = _scalar_plus_j(k, 2 * k + 1, 3)
    G = block_assemble(
        [
            [diag, -_J(k), ZMatrix([[1 + r + s]] * k)],
            [-_J(k), diag, ZMatrix([[-1 - r + s]] * k)],
            [ZMatrix([[1 + r + s] * k]), ZMatrix([[-1 - r + s] * k]), ZMatrix([[2 * k + 1]])],
        ]
    )
    cert = ConstructionCertificate(
        Family.TWO_CIRCULANT_BORDER,
        2 * k + 1,
        border_gram_det(k, r),
        "[[(2k-2)I + 3J, -J, (1+r+s)j], [-J, (2k-2)I + 3J, (s-r-1)j], [.., .., 2k+1]]",
        {"k": k, "r": r, "s": s, "variant": 1 if variant == "m1" else 2},
        G,
        border_four_determinants(pair),
    )
    return Construction(M, cert)


# skew-core construction of order 4q + 3

H4 = SignMatrix([[1, 1, 1, -1], [1, 1, -1, 1], [1, -1, 1, 1], [-1, 1, 1, 1]])
R0 = SignMatrix([[1, -1, 1, -1], [1, 1, -1, -1], [1, -1, -1, 1]])


def skew_core_from_shifted(C: SignMatrix) -> ZMatrix:
    """Recover Q = C + I from a shifted skew core, checking C + C^T = -2I and CC^T = (q+1)I - J."""
    q = C.rows
    if not C.is_square:
        raise ValueError("skew core must be square")
    if C + C.T != ZMatrix.scalar(q, -2):
        raise ValueError("supplied core is not skew: C + C^T != -2I")
    if gram(C) != _scalar_plus_j(q, q, -1):
        raise ValueError("supplied core fails C C^T = (q+1)I - J")
    return C + _I(q)


def osds(q: int | None = None, core: ZMatrix | None = None, guard: int | None = None) -> Construction:
    """M = [[P, R^T], [R, J_3]] with P = Q (x) H4 - I (x) J4; order 4q + 3.

    det(M M^T) = 16 (4q)^(3q+3) (4q+16)^(q-1).  ``core`` may supply a skew core
    Q of any order instead of the Paley core of the prime q.
    """
    if core is None:
        if q is None:
            raise ValueError("need q or a core")
        Q = paley_core(_odd_prime(q, 3, "skew-core bordering"))
    else:
        Q = core
        if q is not None and q != Q.rows:
            raise ValueError(f"core has order {Q.rows}, not {q}")
        q = Q.rows
    n = 4 * q + 3
    _check_order(n, guard)
    P = tensor(Q, H4) - tensor(_I(q), _J(4))
    R = tensor(_J(1, q), R0)
    M = block_assemble([[P, R.T], [R, _J(3)]]).to_sign()
    T = ZMatrix.scalar(4 * q, 4 * q) + tensor(_I(q), _J(4)) * 4 - _J(4 * q)
    v = tensor(_J(1, q), ZMatrix([[3, -1, -1, -1]]))
    corner = _scalar_plus_j(3, 4 * q + 3, 3)
    vs = block_assemble([[v], [v], [v]])
    G = block_assemble([[T, vs.T], [vs, corner]])
    cert = ConstructionCertificate(
        Family.OSDS,
        n,
        16 * (4 * q) ** (3 * q + 3) * (4 * q + 16) ** (q - 1),
        "[[T, v^T v^T v^T], [v; v; v, (4q)I + 3J]]",
        {"q": q},
        G,
    )
    return Construction(M, cert)


# Ehlich-block matrices


def block_arrangement(diag: int, parts: Sequence[int]) -> ZMatrix:
    """Blocks (diag - 3)I + 3J of the given sizes on the diagonal, -1 elsewhere."""
    owner = [b for b, size in enumerate(parts) for _ in range(size)]
    m = len(owner)
    return ZMatrix(
        [
            [diag if i == j else (3 if owner[i] == owner[j] else -1) for j in range(m)]
            for i in range(m)
        ]
    )


def ehlich_block_matrix(n: int, partition: Partition | Sequence[int]) -> ZMatrix:
    partition = partition if isinstance(partition, Partition) else Partition(tuple(partition))
    if partition.n != n:
        raise ValueError(f"partition {partition} does not sum to {n}")
    return block_arrangement(n, partition.parts)


# dispatch by family name (CLI and expectation checks)


def build(family: Family | str, **params) -> Construction:
    family = Family(family)
    guard = params.pop("guard", None)
    if family is Family.SYLVESTER:
        return sylvester(params["t"], guard)
    if family is Family.PALEY_I:
        return paley_I(params["p"], guard)
    if family is Family.COHN_BORDER:
        return cohn_border(params["q"], guard)
    if family is Family.AFFINE_ORTHO:
        return bw_ortho_M(params["p"], guard)
    if family is Family.BW_ORTHO:
        return bw_N(params["p"], guard)
    if family is Family.BROUWER_WHITEMAN:
        return brouwer_whiteman(params["p"], guard)
    if family is Family.OSDS:
        return osds(params.get("q"), params.get("core"), guard)
    if family is Family.EXCESS_BORDER:
        return excess_border(params["H"], guard)
    if family is Family.DOUBLING:
        return doubling(params["W"], guard)
    if family is Family.TWO_CIRCULANT_BORDER:
        return two_circulant_border(params["pair"], params.get("variant", "m2"), params.get("lead"), guard)
    raise ValueError(f"{family.value} does not produce a sign matrix")
