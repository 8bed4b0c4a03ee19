"""Bulk structure-constant table generation with deterministic serialization."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple, Union

from . import closedform, oracle
from .algebra import LieAlgebraSpec, builtin, spec_to_json
from .poly import Monomial, Poly, grlex_key

ENGINES = ("closed_form", "oracle", "cross_checked")


class TableMismatchError(Exception):
    """Cross-checked generation found the two engines disagreeing on a pair."""

    def __init__(self, left: Monomial, right: Monomial, closed: Poly, oracle_result: Poly):
        self.left = left
        self.right = right
        self.closed = closed
        self.oracle_result = oracle_result
        super().__init__(
            f"engines diverge on {left} * {right}: closed={closed} oracle={oracle_result}")


@dataclass
class TableRecord:
    left: Monomial
    right: Monomial
    result: Poly


@dataclass
class TableManifest:
    algebra: str
    max_degree: int
    engine: str
    record_count: int


def monomials_upto(dim: int, max_degree: int) -> List[Monomial]:
    """All exponent vectors of total degree <= max_degree, graded-lex ascending."""
    out: List[Monomial] = []

    def rec(prefix, remaining):
        if len(prefix) == dim:
            out.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            rec(prefix + [e], remaining - e)

    rec([], max_degree)
    out.sort(key=grlex_key)
    return out


def _resolve(spec_or_id: Union[str, LieAlgebraSpec]) -> Tuple[str, LieAlgebraSpec, str | None]:
    """Returns (label, spec, closed-form id or None)."""
    if isinstance(spec_or_id, str):
        spec = builtin(spec_or_id)
        closed_id = spec_or_id if spec_or_id in closedform.ALGEBRA_IDS else None
        return spec_or_id, spec, closed_id
    spec = spec_or_id
    digest = hashlib.sha256(spec_to_json(spec).encode()).hexdigest()[:12]
    return f"custom:{digest}", spec, None


def generate_table(spec_or_id: Union[str, LieAlgebraSpec], max_degree: int,
                   engine: str = "cross_checked") -> Tuple[TableManifest, List[TableRecord]]:
    if max_degree < 0:
        raise ValueError("max_degree must be >= 0")
    if engine not in ENGINES:
        raise ValueError(f"unknown engine {engine!r}; expected one of {ENGINES}")
    label, spec, closed_id = _resolve(spec_or_id)
    if engine in ("closed_form", "cross_checked") and closed_id is None:
        raise ValueError(f"engine {engine!r} requires a catalog algebra id, got {label!r}")

    monos = monomials_upto(spec.dim, max_degree)
    records = []
    for left in monos:
        for right in monos:
            if engine == "closed_form":
                result = closedform.product(closed_id, left, right)
            elif engine == "oracle":
                result = oracle.oracle_product(spec, left, right)
            else:
                result = closedform.product(closed_id, left, right)
                reference = oracle.oracle_product(spec, left, right)
                if result != reference:
                    raise TableMismatchError(left, right, result, reference)
            records.append(TableRecord(left, right, result))
    manifest = TableManifest(label, max_degree, engine, len(records))
    return manifest, records


# -- serialization ------------------------------------------------------

def export_json(manifest: TableManifest, records: List[TableRecord]) -> bytes:
    obj = {
        "algebra": manifest.algebra,
        "max_degree": manifest.max_degree,
        "engine": manifest.engine,
        "entries": [
            {
                "left": list(rec.left),
                "right": list(rec.right),
                "result": rec.result.to_obj(),
            }
            for rec in records
        ],
    }
    return json.dumps(obj, indent=2, sort_keys=True).encode()


def import_json(data: bytes) -> Tuple[TableManifest, List[TableRecord]]:
    obj = json.loads(data)
    records = []
    for entry in obj["entries"]:
        left = tuple(entry["left"])
        records.append(TableRecord(
            left, tuple(entry["right"]), Poly.from_obj(len(left), entry["result"])))
    manifest = TableManifest(
        obj["algebra"], obj["max_degree"], obj["engine"], len(records))
    return manifest, records


def export_csv(manifest: TableManifest, records: List[TableRecord]) -> bytes:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, delimiter=";", lineterminator="\n")
    writer.writerow(["left", "right", "coeff", "mono"])
    for rec in records:
        left = ",".join(map(str, rec.left))
        right = ",".join(map(str, rec.right))
        for mono, coeff in rec.result.sorted_terms():
            writer.writerow([left, right, str(coeff), ",".join(map(str, mono))])
    return buf.getvalue().encode()


def export(manifest: TableManifest, records: List[TableRecord], fmt: str) -> bytes:
    if fmt == "json":
        return export_json(manifest, records)
    if fmt == "csv":
        return export_csv(manifest, records)
    raise ValueError(f"unsupported format {fmt!r}")
