"""JSON interchange for solutions and verification reports.

Complex numbers are stored as ``[re, im]`` pairs.  Floats are written with
17 significant digits (Python's ``repr``), so a write/read round trip is
exact.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np

from .core import SpanningSet, TLSolution, VerificationReport

__all__ = [
    "SCHEMA_VERSION",
    "DocumentError",
    "complex_to_pair",
    "pair_to_complex",
    "solution_to_dict",
    "solution_from_dict",
    "dumps_solution",
    "loads_solution",
    "write_solution",
    "read_solution",
    "ReportDocument",
    "digest",
]

SCHEMA_VERSION = "tlforge/1"


class DocumentError(ValueError):
    """Malformed or incompatible JSON document."""


def complex_to_pair(z) -> list[float]:
    z = complex(z)
    return [float(z.real), float(z.imag)]


def pair_to_complex(p) -> complex:
    if isinstance(p, (int, float)) and not isinstance(p, bool):
        return complex(p)
    if not (isinstance(p, (list, tuple)) and len(p) == 2 and all(isinstance(x, (int, float)) for x in p)):
        raise DocumentError(f"expected an [re, im] pair, got {p!r}")
    return complex(p[0], p[1])


def _matrix_to_list(m: np.ndarray) -> list:
    return [[complex_to_pair(x) for x in row] for row in m]


def _matrix_from_list(rows, n: int) -> np.ndarray:
    if not isinstance(rows, list) or len(rows) != n:
        raise DocumentError(f"matrix must have {n} rows")
    out = np.empty((n, n), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise DocumentError(f"matrix row {i} must have {n} entries")
        for j, x in enumerate(row):
            out[i, j] = pair_to_complex(x)
    if not np.all(np.isfinite(out)):
        raise DocumentError("matrix entries must be finite")
    return out


def _param_out(v):
    """Numbers as ``[re, im]``; labels (such as a catalog case) stay strings."""
    return v if isinstance(v, str) else complex_to_pair(v)


def solution_to_dict(sol: TLSolution, provenance: str = "") -> dict[str, Any]:
    q = complex(sol.Q)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": sol.n,
        "rank": sol.rank,
        "Q": float(q.real) if sol.hermitian else complex_to_pair(q),
        "family": sol.family,
        "params": {k: _param_out(v) for k, v in sol.params.items()},
        "matrices": [_matrix_to_list(m) for m in sol.mats],
        "provenance": provenance,
    }
    if sol.duals is not None:
        doc["duals"] = [_matrix_to_list(m) for m in sol.duals.mats]
    return doc


def solution_from_dict(doc: Any) -> TLSolution:
    if not isinstance(doc, dict):
        raise DocumentError("solution document must be a JSON object")
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise DocumentError(f"unsupported schema_version {doc.get('schema_version')!r}")
    try:
        n, rank = int(doc["n"]), int(doc["rank"])
        mats = doc["matrices"]
        family = str(doc["family"])
        q_raw = doc["Q"]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"missing or invalid field: {exc}") from exc
    if n <= 0 or rank <= 0:
        raise DocumentError("n and rank must be positive")
    if not isinstance(mats, list) or len(mats) != rank:
        raise DocumentError(f"expected {rank} matrices")
    spanning = SpanningSet([_matrix_from_list(m, n) for m in mats])
    duals = None
    if "duals" in doc:
        if not isinstance(doc["duals"], list) or len(doc["duals"]) != rank:
            raise DocumentError(f"expected {rank} dual matrices")
        duals = SpanningSet([_matrix_from_list(m, n) for m in doc["duals"]])
    Q = pair_to_complex(q_raw)
    params = {str(k): v if isinstance(v, str) else pair_to_complex(v) for k, v in dict(doc.get("params", {})).items()}
    try:
        return TLSolution(spanning, Q, family, params, duals=duals)
    except ValueError as exc:
        raise DocumentError(str(exc)) from exc


def dumps_solution(sol: TLSolution, provenance: str = "") -> str:
    return json.dumps(solution_to_dict(sol, provenance))


def loads_solution(text: str) -> TLSolution:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return solution_from_dict(doc)


def write_solution(path, sol: TLSolution, provenance: str = "") -> None:
    Path(path).write_text(dumps_solution(sol, provenance) + "\n", encoding="utf-8")


def read_solution(path) -> TLSolution:
    return loads_solution(Path(path).read_text(encoding="utf-8"))


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode("utf-8")
    return hashlib.sha256(data).hexdigest()


@dataclass
class ReportDocument:
    input_digest: str
    tolerance: float
    report: VerificationReport
    wall_time: float
    checks: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self) -> dict[str, Any]:
        body = self.report.to_dict()
        return {
            "schema_version": SCHEMA_VERSION,
            "input_digest": self.input_digest,
            "tolerance": self.tolerance,
            "checks": list(self.checks),
            "residuals": body["residuals"],
            "tolerances": body["tolerances"],
            "failures": body["failures"],
            "notes": body["notes"],
            "passed": body["passed"],
            "wall_time": self.wall_time,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1)
