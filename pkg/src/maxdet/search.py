"""Brute-force oracles: maximal determinants at tiny orders, circulant pairs, and
maximal determinants of symmetric matrices with entries 3 mod 4.

Nothing here is used to compute a bound; these searches exist to check the
closed forms elsewhere in the package against independent enumeration.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .circulant import CirculantPair
from .constructions import Partition
from .feasibility import sum_of_two_squares, two_squares_obstruction
from .linalg import SignMatrix, ZMatrix, det_exact

MAX_EXHAUSTIVE_ORDER = 7
DEFAULT_MAX_K = 15
MAX_WITNESSES = 8


@dataclass(frozen=True)
class SearchResult:
    max_det: int
    witnesses: tuple[SignMatrix, ...]
    nodes_visited: int


def _candidate_rows(n: int) -> np.ndarray:
    """All sign vectors of length n starting with +1, except the all-ones row."""
    count = 1 << (n - 1)
    bits = (np.arange(count)[:, None] >> np.arange(n - 2, -1, -1)) & 1
    rows = np.ones((count, n), dtype=np.int64)
    rows[:, 1:] = 1 - 2 * bits
    return rows[1:]


class _MaxdetSearch:
    """Depth-first search over sorted row sets with an incremental Gram adjugate.

    Row 0 is all ones and every row starts with +1 (negate columns, then rows).
    Rows are a strictly increasing index set into the candidate list, since
    reordering rows does not change |det| and repeated rows give zero.

    For the current rows A with Gram G, d = det G and adj = adj G, appending c
    gives det = d n - b^T adj b with b = A c.  The adjugate of the bordered
    Gram is updated with exact integer division by d.
    """

    def __init__(self, n: int, prune: bool):
        self.n = n
        self.prune = prune
        self.cand = _candidate_rows(n)
        self.best_sq = 0
        self.best: list[tuple[int, ...]] = []
        self.nodes = 0

    def run(self) -> SearchResult:
        n = self.n
        if n == 1:
            return SearchResult(1, (SignMatrix([[1]]),), 1)
        ones = np.ones(n, dtype=np.int64)
        A = ones[None, :]
        adj = np.ones((1, 1), dtype=np.int64)
        self._descend(A, adj, n, [], -1)
        witnesses = []
        for idx in self.best:
            rows = [[1] * n] + [self.cand[i].tolist() for i in idx]
            W = SignMatrix(rows)
            d = det_exact(W)
            if d * d != self.best_sq:
                raise AssertionError("witness determinant disagrees with the search value")
            witnesses.append(W)
        value = int(round(self.best_sq ** 0.5))
        if value * value != self.best_sq:
            raise AssertionError("maximal squared determinant is not a perfect square")
        return SearchResult(value, tuple(witnesses), self.nodes)

    def _descend(self, A, adj, d, chosen, last):
        n = self.n
        m = A.shape[0]
        self.nodes += 1
        C = self.cand[last + 1 :]
        if len(C) == 0:
            return
        B = A @ C.T  # m x K
        dets = d * n - np.einsum("ik,ij,jk->k", B, adj, B)
        remaining = n - m - 1
        if remaining == 0:
            top = int(dets.max())
            if top > self.best_sq:
                self.best_sq, self.best = top, []
            if top == self.best_sq and top > 0:
                for j in np.flatnonzero(dets == top):
                    if len(self.best) < MAX_WITNESSES:
                        self.best.append(tuple(chosen) + (last + 1 + int(j),))
            return
        # Each later row lies at squared distance at most max(dets)/d from the
        # span of the current rows (the span only grows), so a child c can
        # reach at most dets[c] * (max over later candidates / d)^remaining.
        suffix = np.maximum.accumulate(dets[::-1])[::-1]
        order = np.argsort(-dets, kind="stable")
        for j in order:
            dj = int(dets[j])
            if dj <= 0:
                break
            if self.prune and self.best_sq:
                nxt = int(suffix[j + 1]) if j + 1 < len(dets) else 0
                if dj * nxt ** remaining < self.best_sq * d ** remaining:
                    continue
            c = C[j]
            b = A @ c
            ab = adj @ b
            new_adj = np.empty((m + 1, m + 1), dtype=np.int64)
            new_adj[:m, :m] = (dj * adj + np.outer(ab, ab)) // d
            new_adj[:m, m] = -ab
            new_adj[m, :m] = -ab
            new_adj[m, m] = d
            self._descend(np.vstack([A, c]), new_adj, dj, chosen + [last + 1 + int(j)], last + 1 + int(j))


def exhaustive_maxdet(n: int, prune: bool | None = None) -> SearchResult:
    """Exact maximum of |det| over all sign matrices of order n <= 7.

    Pruning defaults to on for n = 7 only; it discards a subtree only when even
    the most favourable completion falls strictly below the incumbent.
    """
    if not 1 <= n <= MAX_EXHAUSTIVE_ORDER:
        raise ValueError(f"exhaustive search supports 1 <= n <= {MAX_EXHAUSTIVE_ORDER}, got {n}")
    prune = (n == 7) if prune is None else prune
    return _MaxdetSearch(n, prune).run()


def naive_maxdet(n: int) -> int:
    """Reference enumeration over every normalized matrix (tiny n only)."""
    if not 1 <= n <= 5:
        raise ValueError("naive enumeration is limited to n <= 5")
    tails = list(itertools.product((1, -1), repeat=n - 1))
    best = 0
    for rest in itertools.product(tails, repeat=n - 1):
        M = ZMatrix([[1] * n] + [(1,) + t for t in rest])
        best = max(best, abs(det_exact(M)))
    return best


# circulant pairs


class InfeasibleOrder(ValueError):
    def __init__(self, k: int, witness: str):
        super().__init__(f"no circulant pair of order {k}: {witness}")
        self.k = k
        self.witness = witness


def row_sum_classes(k: int) -> list[tuple[int, int]]:
    """Signed (r, s) with r^2 + s^2 = 4k - 2 and r = s = k mod 2, sorted."""
    m = 4 * k - 2
    out = set()
    for r in range(-k, k + 1):
        if (r - k) % 2:
            continue
        s2 = m - r * r
        if s2 < 0:
            continue
        s = int(round(s2 ** 0.5))
        if s * s != s2:
            continue
        for t in {s, -s}:
            if abs(t) <= k:
                out.add((r, t))
    return sorted(out)


def _rows_with_sum(k: int, r: int) -> np.ndarray:
    """All length-k sign vectors with entry sum r, one per row."""
    minus = (k - r) // 2
    if (k - r) % 2 or not 0 <= minus <= k:
        return np.zeros((0, k), dtype=np.int8)
    if minus == 0:
        return np.ones((1, k), dtype=np.int8)
    pos = np.array(list(itertools.combinations(range(k), minus)), dtype=np.int64)
    X = np.ones((len(pos), k), dtype=np.int8)
    np.put_along_axis(X, pos, -1, axis=1)
    return X


def _paf_half(X: np.ndarray) -> np.ndarray:
    k = X.shape[1]
    Xi = X.astype(np.int16)
    cols = [np.sum(Xi * np.roll(Xi, -j, axis=1), axis=1) for j in range(1, k // 2 + 1)]
    if not cols:
        return np.zeros((X.shape[0], 0), dtype=np.int16)
    return np.stack(cols, axis=1).astype(np.int16)


def _pairs_for_class(args) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    k, r, s, want = args
    R_rows = _rows_with_sum(k, r)
    S_rows = _rows_with_sum(k, s)
    if len(R_rows) == 0 or len(S_rows) == 0:
        return []
    index: dict[bytes, list[int]] = {}
    for i, key in enumerate(_paf_half(S_rows)):
        index.setdefault(key.tobytes(), []).append(i)
    targets = (2 - _paf_half(R_rows)).astype(np.int16)
    out = []
    for i, key in enumerate(targets):
        hits = index.get(key.tobytes())
        if not hits:
            continue
        rrow = tuple(int(v) for v in R_rows[i])
        for h in hits:
            out.append((rrow, tuple(int(v) for v in S_rows[h])))
    out.sort()
    if want == "first":
        return out[:1]
    return out


def circulant_pair_search(
    k: int,
    want: str = "first",
    max_k: int = DEFAULT_MAX_K,
    workers: int = 1,
) -> list[CirculantPair]:
    """Pairs of first rows whose periodic autocorrelations add to 2 at every shift.

    ``want='first'`` keeps the lexicographically first pair of each signed
    row-sum class (r, s); ``want='all'`` keeps every pair, rotations and
    negations included.  The result is sorted by (first_row_R, first_row_S)
    whatever the worker count.
    """
    if want not in ("first", "all"):
        raise ValueError(f"want must be 'first' or 'all', got {want!r}")
    if k < 1:
        raise ValueError("k must be positive")
    if k > max_k:
        raise ValueError(f"k = {k} exceeds the search cap {max_k}; raise max_k explicitly")
    if sum_of_two_squares(4 * k - 2) is None:
        witness = f"4k-2 = {4 * k - 2} is not a sum of two squares"
        bad = two_squares_obstruction(4 * k - 2)
        if bad is not None:
            witness += f" ({bad[0]}^{bad[1]} exactly divides it, {bad[0]} = 3 mod 4)"
        raise InfeasibleOrder(k, witness)
    classes = row_sum_classes(k)
    jobs = [(k, r, s, want) for r, s in classes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_pairs_for_class, jobs))
    else:
        parts = [_pairs_for_class(j) for j in jobs]
    found = sorted(p for part in parts for p in part)
    return [CirculantPair(a, b) for a, b in found]


def pairs_by_class(pairs: Iterable[CirculantPair]) -> dict[tuple[int, int], list[CirculantPair]]:
    out: dict[tuple[int, int], list[CirculantPair]] = {}
    for p in pairs:
        out.setdefault(p.row_sum_class, []).append(p)
    return out


# symmetric matrices with diagonal n and off-diagonal entries 3 mod 4


@dataclass(frozen=True)
class GammaResult:
    value: int
    argmax: tuple[ZMatrix, ...] = field(repr=False)
    enumerated: int = 0


GAMMA_LIMIT = 200_000


def _check_entry_set(n: int, entries: Sequence[int]) -> tuple[int, ...]:
    entries = tuple(sorted(set(entries)))
    for e in entries:
        if e % 4 != 3 or abs(e) >= n:
            raise ValueError(f"entry {e} is not 3 mod 4 with |entry| < {n}")
    return entries


def _positive_definite(A: ZMatrix) -> bool:
    return all(det_exact(A.principal(range(i))) > 0 for i in range(1, A.rows + 1))


def gamma_search(
    n: int, m: int, entry_set: Sequence[int] = (-1, 3), positive_definite: bool = False
) -> GammaResult:
    """Maximal determinant over symmetric m x m matrices with diagonal n and
    off-diagonal entries from ``entry_set``.

    With ``positive_definite`` only positive definite members are considered,
    which is the part of the class that Gram matrices can occupy.
    """
    entries = _check_entry_set(n, entry_set)
    if m < 1:
        raise ValueError("m must be positive")
    slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    total = len(entries) ** len(slots)
    if total > GAMMA_LIMIT:
        raise ValueError(f"{total} matrices exceed the enumeration guard {GAMMA_LIMIT}")
    best, arg = None, []
    for values in itertools.product(entries, repeat=len(slots)):
        rows = [[n if i == j else 0 for j in range(m)] for i in range(m)]
        for (i, j), v in zip(slots, values):
            rows[i][j] = rows[j][i] = v
        A = ZMatrix(rows)
        d = det_exact(A)
        if positive_definite and (d <= 0 or not _positive_definite(A)):
            continue
        if best is None or d > best:
            best, arg = d, [A]
        elif d == best:
            arg.append(A)
    return GammaResult(best, tuple(arg), total)


def gamma_oracle(
    n: int, m: int, entry_set: Sequence[int] = (-1, 3), positive_definite: bool = False
) -> int:
    return gamma_search(n, m, entry_set, positive_definite).value


def block_arrangement_partition(A: ZMatrix) -> Partition | None:
    """Block sizes if A is, up to simultaneous permutation, blocks of 3s on the
    diagonal with -1 elsewhere; None otherwise."""
    m = A.rows
    owner = [-1] * m
    sizes = []
    for i in range(m):
        if owner[i] < 0:
            owner[i] = len(sizes)
            sizes.append(1)
            for j in range(i + 1, m):
                if A[i, j] == 3 and owner[j] < 0:
                    owner[j] = owner[i]
                    sizes[-1] += 1
    for i in range(m):
        for j in range(i + 1, m):
            want = 3 if owner[i] == owner[j] else -1
            if A[i, j] != want:
                return None
    return Partition(tuple(sizes))
