"""Command-line front end.

Exit codes: 0 success, 2 bad usage or unreadable input, 3 a construction failed
its own certificate, 4 a verified matrix disagreed with the expected family.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import bounds as B
from . import constructions as C
from .circulant import CirculantPair
from .feasibility import feasibility
from .io import (
    MatrixFormatError,
    bound_json,
    dumps,
    envelope,
    feasibility_json,
    fraction_json,
    read_matrix,
    report_json,
    serialize,
    write_matrix,
)
from .linalg import DimensionError, SignMatrix, det_exact
from .search import DEFAULT_MAX_K, InfeasibleOrder, circulant_pair_search, exhaustive_maxdet
from .table import format_table, table_rows
from .verify import CertificateMismatch, check_certificate, verify

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CERTIFICATE = 3
EXIT_MISMATCH = 4


class UsageError(Exception):
    pass


def _signs(row) -> str:
    return "".join("+" if x == 1 else "-" for x in row)


def _emit(args, payload: dict, text: str) -> None:
    print(dumps(payload) if getattr(args, "json", False) else text)


def _load(path: str) -> SignMatrix:
    try:
        return read_matrix(path).matrix
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    except MatrixFormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _need(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        raise UsageError(f"family {args.family} needs --{name}")
    return value


# construct


def _best_pair(k: int, args) -> tuple[CirculantPair, str]:
    try:
        pairs = circulant_pair_search(k, "first", max_k=args.max_k, workers=args.threads)
    except InfeasibleOrder as exc:
        raise UsageError(str(exc)) from None
    if not pairs:
        raise UsageError(f"no circulant pair of order {k} found")
    best = max(
        ((det, pair, lead) for pair in pairs for lead, _, det in C.border_four_determinants(pair)),
        key=lambda t: t[0],
    )
    return best[1], best[2]


def _build(args) -> C.Construction:
    fam = C.Family(args.family)
    guard = args.size_guard
    if fam is C.Family.SYLVESTER:
        return C.sylvester(_need(args, "t"), guard)
    if fam is C.Family.PALEY_I:
        return C.paley_I(_need(args, "p"), guard)
    if fam is C.Family.COHN_BORDER:
        return C.cohn_border(_need(args, "q"), guard)
    if fam is C.Family.AFFINE_ORTHO:
        return C.bw_ortho_M(_need(args, "p"), guard)
    if fam is C.Family.BW_ORTHO:
        return C.bw_N(_need(args, "p"), guard)
    if fam is C.Family.BROUWER_WHITEMAN:
        return C.brouwer_whiteman(_need(args, "p"), guard)
    if fam is C.Family.OSDS:
        if args.core:
            core = C.skew_core_from_shifted(_load(args.core))
            return C.osds(args.q, core, guard)
        return C.osds(_need(args, "q"), None, guard)
    if fam is C.Family.EXCESS_BORDER:
        H = _load(args.input) if args.input else C.sylvester(_need(args, "t"), guard).matrix
        return C.excess_border(H, guard)
    if fam is C.Family.DOUBLING:
        W = _load(args.input) if args.input else C.brouwer_whiteman(_need(args, "p"), guard).matrix
        return C.doubling(W, guard)
    if fam is C.Family.TWO_CIRCULANT_BORDER:
        if args.pair:
            pair = CirculantPair.from_sign_matrix(_load(args.pair))
            lead = args.lead
        else:
            pair, lead = _best_pair(_need(args, "k"), args)
            lead = args.lead or lead
        if args.k is not None and args.k != pair.k:
            raise UsageError(f"pair file has k = {pair.k}, not {args.k}")
        return C.two_circulant_border(pair, args.variant, lead, guard)
    raise UsageError(f"family {fam.value} yields an integer matrix, not a sign matrix")


def cmd_construct(args) -> int:
    try:
        built = _build(args)
    except (ValueError, KeyError) as exc:
        raise UsageError(str(exc)) from None
    cert = built.certificate
    try:
        check_certificate(built.matrix, cert)
    except CertificateMismatch as exc:
        print(f"certificate self-check failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATE
    comments = [f"family {cert.family.value}"] + [f"{k} = {v}" for k, v in cert.parameters.items()]
    write_matrix(args.out, built.matrix, comments)
    alts = [{"lead": L, "lead_row_sum": rs, "gram_det": d} for L, rs, d in cert.alternatives]
    payload = envelope(
        "construct",
        family=cert.family.value,
        order=cert.order,
        shape=list(built.matrix.shape),
        parameters=cert.parameters,
        predicted_gram_det=cert.predicted_gram_det,
        predicted_gram_shape=cert.predicted_gram_shape,
        alternatives=alts,
        out=str(args.out),
    )
    lines = [
        f"family: {cert.family.value}",
        f"parameters: " + ", ".join(f"{k}={v}" for k, v in cert.parameters.items()),
        f"matrix: {built.matrix.rows} x {built.matrix.cols} -> {args.out}",
        f"predicted Gram: {cert.predicted_gram_shape}",
        f"det(MM^T) = {cert.predicted_gram_det} (checked)",
    ]
    for a in alts:
        lines.append(f"  lead {a['lead']:>2} (row sum {a['lead_row_sum']}): det(MM^T) = {a['gram_det']}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# verify / det


def cmd_verify(args) -> int:
    M = _load(args.input)
    if not M.is_square:
        raise UsageError(f"verification needs a square matrix, got {M.rows} x {M.cols}")
    start = time.perf_counter()
    try:
        report = verify(M, args.expect, args.digits)
    except CertificateMismatch as exc:
        print(f"mismatch: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    ms = int((time.perf_counter() - start) * 1000)
    g = report.gram_class
    lines = [
        f"order: {report.order}",
        f"det: {report.det}",
        f"det^2: {report.det_sq}",
        f"gram class: {g.tag.value}" + (f" {g.partition}" if g.partition else "") + (f" ({g.reason})" if g.reason else ""),
        f"bound: {report.bound.kind.value} {report.bound.symbolic()}",
        f"ratio: {report.ratio}",
    ]
    for kind, r in report.ratios.items():
        if kind != report.bound.kind.value:
            lines.append(f"  vs {kind}: {r}")
    if report.family is not None:
        lines.append(f"matches family: {report.family.value}")
    lines.append(f"excess: {report.excess}")
    lines.append(report.feasibility.summary())
    _emit(args, report_json(report, ms), "\n".join(lines))
    return EXIT_OK


def cmd_det(args) -> int:
    M = _load(args.input)
    if not M.is_square:
        raise UsageError(f"determinant needs a square matrix, got {M.rows} x {M.cols}")
    d = det_exact(M)
    _emit(args, envelope("det", order=M.rows, det=d, det_sq=d * d), str(d))
    return EXIT_OK


# bound / feasible / table


def cmd_bound(args) -> int:
    n = args.n
    if n < 1:
        raise UsageError("--n must be positive")
    try:
        b = B.bound_for(n) if args.which == "auto" else B.select_bound(n, args.which)
    except B.BoundSelectionError as exc:
        raise UsageError(str(exc)) from None
    root = B.ratio_decimal(1, 1 / b.gram_bound, args.digits) if b.gram_bound else "0"
    lines = [f"n = {n}: {b.kind.value} bound", f"det(MM^T) <= {b.symbolic()}"]
    if b.gram_bound.denominator == 1:
        lines.append(f"          = {b.gram_bound.numerator}")
    else:
        lines.append(f"          = {b.gram_bound.numerator}/{b.gram_bound.denominator}")
    lines.append(f"|det M| <= {root}")
    if b.partition is not None:
        lines.append(f"partition: {b.partition}")
    for alt in b.alternatives:
        lines.append(f"also {alt.kind.value}: {alt.symbolic()}")
    payload = envelope("bound", n=n, sqrt_decimal=root)
    payload["bound"] = bound_json(b)
    payload["alternatives"] = [bound_json(a) for a in b.alternatives]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_feasible(args) -> int:
    if args.n < 1:
        raise UsageError("--n must be positive")
    rep = feasibility(args.n)
    payload = envelope("feasible")
    payload["feasibility"] = feasibility_json(rep)
    _emit(args, payload, rep.summary())
    return EXIT_OK


def cmd_table(args) -> int:
    if args.min < 7 or args.max < args.min:
        raise UsageError("table needs 7 <= --min <= --max")
    rows = table_rows(args.min, args.max, args.search_pairs, args.digits, args.max_k, args.threads)
    out = []
    for r in rows:
        item = {
            "n": str(r.n),
            "bound_kind": r.bound.kind.value,
            "bound_sq": fraction_json(r.bound.gram_bound),
            "bound_root_form": r.bound_root_form,
            "osds": r.osds,
            "border": r.border_ratio,
        }
        if r.border is not None:
            item["border_row_sum_class"] = [str(x) for x in r.border.row_sum_class]
            item["border_lead_row_sum"] = str(r.border.lead_row_sum)
            item["border_per_class"] = dict(r.border.per_class)
        out.append(item)
    payload = envelope("table", digits=args.digits)
    payload["rows"] = out
    text = format_table(rows)
    per_class = [
        f"  n = {r.n}: " + ", ".join(f"{c} {v}" for c, v in r.border.per_class.items())
        for r in rows
        if r.border is not None and len(r.border.per_class) > 1
    ]
    if per_class:
        text += "\nborder ratio by row-sum class:\n" + "\n".join(per_class)
    _emit(args, payload, text)
    return EXIT_OK


# search


def cmd_search_maxdet(args) -> int:
    try:
        res = exhaustive_maxdet(args.n)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out and res.witnesses:
        write_matrix(args.out, res.witnesses[0], [f"|det| = {res.max_det}"])
    payload = envelope(
        "search-maxdet",
        n=args.n,
        max_det=res.max_det,
        nodes_visited=res.nodes_visited,
        witnesses=[[_signs(r) for r in W] for W in res.witnesses],
    )
    text = f"max |det| at n = {args.n}: {res.max_det} ({res.nodes_visited} nodes)"
    if res.witnesses:
        text += "\n" + serialize(res.witnesses[0]).rstrip("\n")
    _emit(args, payload, text)
    return EXIT_OK


def cmd_search_pairs(args) -> int:
    try:
        pairs = circulant_pair_search(args.k, "all" if args.all else "first", args.max_k, args.threads)
    except InfeasibleOrder as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.out and pairs:
        p = pairs[0]
        write_matrix(args.out, p.to_sign_matrix(), [f"circulant pair k = {p.k}, r = {p.r}, s = {p.s}"])
    payload = envelope(
        "search-pairs",
        k=args.k,
        pairs=[{"R": _signs(p.first_row_R), "S": _signs(p.first_row_S), "r": p.r, "s": p.s} for p in pairs],
    )
    lines = [f"{len(pairs)} pair(s) at k = {args.k}"]
    lines += [f"({p.r:+d}, {p.s:+d})  {_signs(p.first_row_R)}  {_signs(p.first_row_S)}" for p in pairs]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


# parser


def _guard(value: str) -> int:
    v = int(value)
    if v < 1:
        raise argparse.ArgumentTypeError("size guard must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="maxdet", description="Large-determinant sign matrices, exactly.")
    parser.add_argument("--size-guard", type=_guard, default=None, help="largest order to build (default 4096 or $MAXDET_SIZE_GUARD)")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True):
        if json_flag:
            p.add_argument("--json", action="store_true", help="emit a JSON report")

    p = sub.add_parser("construct", help="build a matrix family and write it to a file")
    p.add_argument("--family", required=True, choices=[f.value for f in C.Family])
    for name in ("p", "q", "t", "k"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--pair", help="circulant pair file (two rows)")
    p.add_argument("--variant", choices=["m1", "m2"], default="m2")
    p.add_argument("--lead", choices=list(C.LEADS), help="leading block of the bordered matrix")
    p.add_argument("--core", help="shifted skew core file for osds")
    p.add_argument("--in", dest="input", help="input Hadamard matrix (excess-border) or Barba matrix (doubling)")
    p.add_argument("--out", required=True)
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    p.add_argument("--threads", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="certify a matrix file")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--expect", choices=[f.value for f in C.Family])
    p.add_argument("--digits", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="evaluate an upper bound")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--which", default="auto", choices=["auto"] + [k.value for k in B.BoundKind])
    p.add_argument("--digits", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table", help="ratio table for n = 3 mod 4")
    p.add_argument("--min", type=int, required=True)
    p.add_argument("--max", type=int, required=True)
    p.add_argument("--search-pairs", action="store_true")
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--digits", type=int, default=4)
    common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("search", help="exhaustive searches")
    ssub = p.add_subparsers(dest="what", required=True)
    q = ssub.add_parser("maxdet", help="maximal |det| at order n <= 7")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--out")
    common(q)
    q.set_defaults(func=cmd_search_maxdet)
    q = ssub.add_parser("pairs", help="circulant pairs of order k")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--all", action="store_true")
    q.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)
    q.add_argument("--threads", type=int, default=1)
    q.add_argument("--out")
    common(q)
    q.set_defaults(func=cmd_search_pairs)

    p = sub.add_parser("det", help="exact determinant of a matrix file")
    p.add_argument("--in", dest="input", required=True)
    common(p)
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("feasible", help="Diophantine obstructions at order n")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_feasible)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.size_guard is None:
        try:
            args.size_guard = C.size_guard()
        except ValueError:
            print("MAXDET_SIZE_GUARD must be an integer", file=sys.stderr)
            return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionError, C.SizeGuardError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
