"""Text matrix files and JSON report serialization.

Matrix file::

    pm1 3 4
    ++-+
    -+++
    +--+
    # optional trailing comments

Every exact integer in a JSON report is written as a decimal string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .bounds import BoundValue
from .feasibility import FeasibilityReport
from .linalg import SignMatrix
from .verify import GramClass, VerificationReport

SCHEMA_VERSION = "1"
_CHARS = {"+": 1, "-": -1}


class MatrixFormatError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None):
        where = f"line {line}" + (f", column {column}" if column is not None else "")
        super().__init__(f"{where}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class MatrixFile:
    matrix: SignMatrix
    comments: tuple[str, ...] = ()


def serialize(M: SignMatrix, comments: Iterable[str] = ()) -> str:
    lines = [f"pm1 {M.rows} {M.cols}"]
    lines.extend("".join("+" if x == 1 else "-" for x in row) for row in M)
    for c in comments:
        for part in str(c).splitlines() or [""]:
            lines.append("# " + part if part else "#")
    return "\n".join(lines) + "\n"


def parse(text: str) -> MatrixFile:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MatrixFormatError("empty file", 1)
    head = lines[0].split(" ")
    if len(head) != 3 or head[0] != "pm1":
        raise MatrixFormatError("header must be 'pm1 <rows> <cols>'", 1)
    try:
        rows, cols = int(head[1]), int(head[2])
    except ValueError:
        raise MatrixFormatError("header dimensions must be integers", 1) from None
    if rows < 1 or cols < 1 or not (head[1].isdigit() and head[2].isdigit()):
        raise MatrixFormatError("header dimensions must be positive integers", 1)
    if len(lines) < rows + 1:
        raise MatrixFormatError(f"expected {rows} matrix rows, found {len(lines) - 1}", len(lines) + 1)
    data = []
    for i in range(rows):
        lineno = i + 2
        text_row = lines[i + 1]
        if len(text_row) != cols:
            col = min(len(text_row), cols) + 1
            raise MatrixFormatError(f"row has {len(text_row)} characters, expected {cols}", lineno, col)
        row = []
        for j, ch in enumerate(text_row):
            if ch not in _CHARS:
                raise MatrixFormatError(f"unexpected character {ch!r}", lineno, j + 1)
            row.append(_CHARS[ch])
        data.append(row)
    comments = []
    for extra, line in enumerate(lines[rows + 1 :], start=rows + 2):
        if not line.startswith("#"):
            raise MatrixFormatError("only '#' comment lines may follow the matrix", extra, 1)
        comments.append(line[1:].lstrip(" "))
    return MatrixFile(SignMatrix(data), tuple(comments))


def read_matrix(path: str | Path) -> MatrixFile:
    return parse(Path(path).read_text(encoding="ascii", errors="strict"))


def write_matrix(path: str | Path, M: SignMatrix, comments: Iterable[str] = ()) -> None:
    Path(path).write_text(serialize(M, comments), encoding="ascii")


# JSON


def _s(x: int) -> str:
    return str(int(x))


def fraction_json(q: Fraction | int) -> dict:
    q = Fraction(q)
    return {"numerator": _s(q.numerator), "denominator": _s(q.denominator)}


def strings(obj: Any) -> Any:
    """Recursively turn ints into decimal strings (bools are left alone)."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Fraction):
        return fraction_json(obj)
    if isinstance(obj, dict):
        return {str(k): strings(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [strings(v) for v in obj]
    if hasattr(obj, "value") and isinstance(obj.value, str):
        return obj.value
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def gram_class_json(g: GramClass) -> dict:
    out: dict[str, Any] = {"tag": g.tag.value}
    if g.partition is not None:
        out["partition"] = [_s(p) for p in g.partition.parts]
    if g.blocks:
        out["blocks"] = [_s(b) for b in g.blocks]
    if g.signs:
        out["signs"] = [_s(x) for x in g.signs]
        out["order"] = [_s(x) for x in g.order]
    if g.reason:
        out["reason"] = g.reason
    return out


def feasibility_json(f: FeasibilityReport) -> dict:
    return {
        "n": _s(f.n),
        "residue_class": _s(f.residue_class),
        "applicable_bound": f.applicable_bound.value,
        "obstructions": [
            {"test": c.name, "passed": c.passed, "witness": c.witness} for c in f.obstructions
        ],
    }


def bound_json(b: BoundValue) -> dict:
    out = {
        "kind": b.kind.value,
        "n": _s(b.n),
        "bound_sq": fraction_json(b.gram_bound),
        "symbolic": b.symbolic(),
    }
    if b.partition is not None:
        out["partition"] = [_s(p) for p in b.partition.parts]
    if b.attainable_note:
        out["note"] = b.attainable_note
    return out


def report_json(report: VerificationReport, runtime_ms: int = 0) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "command": "verify",
        "order": _s(report.order),
        "family": report.family.value if report.family is not None else None,
        "parameters": {k: _s(v) for k, v in report.parameters.items()},
        "det": _s(report.det),
        "det_sq": _s(report.det_sq),
        "bound_kind": report.bound.kind.value,
        "bound_sq": fraction_json(report.bound.gram_bound),
        "ratio": report.ratio,
        "ratios": dict(report.ratios),
        "gram_class": gram_class_json(report.gram_class),
        "row_sums": [_s(x) for x in report.row_sums],
        "excess": _s(report.excess),
        "feasibility": feasibility_json(report.feasibility),
        "runtime_ms": _s(runtime_ms),
    }
    if report.gram_class.partition is not None:
        out["partition"] = [_s(p) for p in report.gram_class.partition.parts]
    return out


def envelope(command: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, **strings(fields)}


def load_schema() -> dict:
    text = resources.files("maxdet").joinpath("report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False)
