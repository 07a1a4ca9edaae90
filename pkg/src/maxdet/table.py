"""Ratio table for orders n = 3 mod 4.

Each row shows the default bound and the ratio achieved by two constructions.
The first is the skew-core construction, available when (n - 3)/4 is a prime
congruent to 3 mod 4.  The second is the bordered two-circulant matrix,
available when a circulant pair of order (n - 1)/2 has been searched.
Determinants are measured with :func:`det_exact`, never taken from the closed
forms.  A missing entry is rendered as "-".
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .bounds import BoundKind, BoundValue, bound_for, ratio_decimal
from .constructions import LEADS, border_gram_det, osds, two_circulant_border
from .field import is_prime
from .linalg import det_exact
from .search import DEFAULT_MAX_K, circulant_pair_search
from .feasibility import sum_of_two_squares

BLANK = "-"


@dataclass(frozen=True)
class BorderEntry:
    """Best bordered two-circulant matrix found for one order."""

    ratio: str
    det_sq: int
    k: int
    lead_row_sum: int
    row_sum_class: tuple[int, int]
    # best ratio per unsigned row-sum class {|r|, |s|}
    per_class: dict = field(default_factory=dict)


@dataclass(frozen=True)
class TableRow:
    n: int
    bound: BoundValue
    bound_root_form: str
    osds: str = BLANK
    osds_det_sq: int | None = None
    border: BorderEntry | None = None

    @property
    def border_ratio(self) -> str:
        return self.border.ratio if self.border else BLANK


def bound_root_form(bound: BoundValue) -> str:
    """The bound on |det| itself, as a product of powers."""
    n = bound.n
    if bound.kind is BoundKind.BARBA:
        return f"√{2 * n - 1}·{n - 1}^{(n - 1) // 2}"
    if bound.kind is BoundKind.EHLICH_SMOOTH:
        return f"√(4·11^6/7^7)·{n}^(1/2)·{n - 1}^3·{n - 3}^{(n - 7) // 2}"
    return bound.symbolic()


def osds_entry(n: int, bound: BoundValue, digits: int = 4) -> tuple[str, int | None]:
    q, rest = divmod(n - 3, 4)
    if rest or q < 3 or q % 4 != 3 or not is_prime(q):
        return BLANK, None
    M = osds(q).matrix
    d = det_exact(M)
    return ratio_decimal(d * d, bound.gram_bound, digits), d * d


def border_entry(
    n: int,
    bound: BoundValue,
    digits: int = 4,
    max_k: int = DEFAULT_MAX_K,
    workers: int = 1,
) -> BorderEntry | None:
    k = (n - 1) // 2
    if k > max_k or sum_of_two_squares(4 * k - 2) is None:
        return None
    pairs = circulant_pair_search(k, "first", max_k=max_k, workers=workers)
    if not pairs:
        return None
    best = None
    per_class: dict[str, int] = {}
    for pair in pairs:
        label = "{%d,%d}" % tuple(sorted((abs(pair.r), abs(pair.s)), reverse=True))
        for lead in LEADS:
            built = two_circulant_border(pair, "m2", lead)
            value = built.certificate.predicted_gram_det
            per_class[label] = max(per_class.get(label, 0), value)
            if best is None or value > best[0]:
                best = (value, pair, lead, built)
    value, pair, lead, built = best
    d = det_exact(built.matrix)
    if d * d != value or value != border_gram_det(k, built.certificate.parameters["r"]):
        raise AssertionError(f"bordered matrix at n = {n} disagrees with its determinant formula")
    return BorderEntry(
        ratio_decimal(value, bound.gram_bound, digits),
        value,
        k,
        built.certificate.parameters["r"],
        pair.row_sum_class,
        {c: ratio_decimal(v, bound.gram_bound, digits) for c, v in sorted(per_class.items())},
    )


def table_rows(
    lo: int,
    hi: int,
    search_pairs: bool = False,
    digits: int = 4,
    max_k: int = DEFAULT_MAX_K,
    workers: int = 1,
) -> list[TableRow]:
    if lo < 7 or hi < lo:
        raise ValueError(f"table range needs 7 <= min <= max, got {lo}..{hi}")
    rows = []
    for n in range(lo, hi + 1):
        if n % 4 != 3:
            continue
        bound = bound_for(n)
        ratio, det_sq = osds_entry(n, bound, digits)
        border = border_entry(n, bound, digits, max_k, workers) if search_pairs else None
        rows.append(TableRow(n, bound, bound_root_form(bound), ratio, det_sq, border))
    return rows


def format_table(rows: list[TableRow]) -> str:
    header = f"{'n':>4}  {'upper bound':<30} {'osds':>8} {'border':>8}"
    lines = [header, "-" * len(header)]
    for r in rows:
        lines.append(f"{r.n:>4}  {r.bound_root_form:<30} {r.osds:>8} {r.border_ratio:>8}")
    return "\n".join(lines)
