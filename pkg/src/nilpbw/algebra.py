"""Lie algebra specifications: axioms, catalog, nilpotency analysis.

A bracket table stores [x_i, x_j] only for i > j as a linear combination of
generators; [x_j, x_i] is the negation by convention and [x, x] = 0 is
implicit, so skew-symmetry is structural.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .poly import Poly

LinearCombo = Dict[int, Fraction]  # generator index -> coefficient


class LieAlgebraError(Exception):
    pass


class UnknownAlgebraError(LieAlgebraError):
    pass


class EngelBoundError(LieAlgebraError):
    """Raised when repeated bracketing fails to vanish within the dimension bound."""


class LieAlgebraSpec:
    """An algebra given by its dimension and bracket table.

    The table is stored as supplied so that ``validate`` can report shape
    problems; specs from ``builtin`` and from validated JSON are well formed.
    Treat instances as immutable.
    """

    __slots__ = ("name", "dim", "brackets")

    def __init__(self, name: str, dim: int, brackets: Dict[Tuple[int, int], LinearCombo]):
        if dim < 1:
            raise LieAlgebraError("dimension must be at least 1")
        self.name = name
        self.dim = dim
        clean: Dict[Tuple[int, int], LinearCombo] = {}
        for pair, combo in brackets.items():
            reduced = {g: Fraction(c) for g, c in combo.items() if Fraction(c)}
            if reduced:
                clean[tuple(pair)] = reduced
        self.brackets = clean

    def __repr__(self) -> str:
        return f"LieAlgebraSpec({self.name!r}, dim={self.dim})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebraSpec):
            return NotImplemented
        return (self.name, self.dim, self.brackets) == (other.name, other.dim, other.brackets)


@dataclass
class ValidationReport:
    ok: bool
    jacobi_violations: List[Tuple[Tuple[int, int, int], Poly]] = field(default_factory=list)
    shape_errors: List[str] = field(default_factory=list)

    def describe(self) -> str:
        if self.ok:
            return "ok"
        lines = []
        for msg in self.shape_errors:
            lines.append(f"shape: {msg}")
        for (i, j, k), residual in self.jacobi_violations:
            lines.append(f"jacobi({i},{j},{k}): residual {residual}")
        return "\n".join(lines)


@dataclass
class NilpotencyProfile:
    series_dims: List[int]
    nilpotent: bool
    nilpotency_class: Optional[int]


def _check_index(spec: LieAlgebraSpec, index: int) -> None:
    if not (isinstance(index, int) and 1 <= index <= spec.dim):
        raise LieAlgebraError(f"generator index {index} out of range 1..{spec.dim}")


def bracket_combo(spec: LieAlgebraSpec, i: int, j: int) -> LinearCombo:
    """[x_i, x_j] as a generator -> coefficient map (fast path, no range check)."""
    if i > j:
        return spec.brackets.get((i, j), {})
    if i < j:
        stored = spec.brackets.get((j, i))
        if stored:
            return {g: -c for g, c in stored.items()}
    return {}


def bracket(spec: LieAlgebraSpec, i: int, j: int) -> Poly:
    """[x_i, x_j] as a degree-<=1 polynomial; zero on the diagonal."""
    _check_index(spec, i)
    _check_index(spec, j)
    combo = bracket_combo(spec, i, j)
    terms = {}
    for g, c in combo.items():
        mono = tuple(1 if k == g - 1 else 0 for k in range(spec.dim))
        terms[mono] = c
    return Poly(spec.dim, terms)


def _ad_combo(spec: LieAlgebraSpec, i: int, combo: LinearCombo) -> LinearCombo:
    """[x_i, v] for a linear combination v, by bilinearity."""
    out: LinearCombo = {}
    for g, c in combo.items():
        for h, d in bracket_combo(spec, i, g).items():
            total = out.get(h, Fraction(0)) + c * d
            if total:
                out[h] = total
            elif h in out:
                del out[h]
    return out


def validate(spec: LieAlgebraSpec) -> ValidationReport:
    """Check table shape and the Jacobi identity on all basis triples."""
    shape_errors: List[str] = []
    for (i, j), combo in spec.brackets.items():
        if not (isinstance(i, int) and isinstance(j, int)):
            shape_errors.append(f"non-integer key ({i!r},{j!r})")
            continue
        if i <= j:
            shape_errors.append(f"illegal key ({i},{j}): entries require i > j")
        if not (1 <= i <= spec.dim and 1 <= j <= spec.dim):
            shape_errors.append(f"key ({i},{j}) out of range 1..{spec.dim}")
        for g in combo:
            if not (isinstance(g, int) and 1 <= g <= spec.dim):
                shape_errors.append(f"bracket ({i},{j}) targets out-of-range generator {g}")

    jacobi_violations = []
    if not shape_errors:
        for i in range(3, spec.dim + 1):
            for j in range(2, i):
                for k in range(1, j):
                    residual: LinearCombo = {}
                    for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = bracket_combo(spec, y, z)
                        for g, c in _ad_combo(spec, x, inner).items():
                            total = residual.get(g, Fraction(0)) + c
                            if total:
                                residual[g] = total
                            elif g in residual:
                                del residual[g]
                    if residual:
                        poly = Poly(spec.dim, {
                            tuple(1 if t == g - 1 else 0 for t in range(spec.dim)): c
                            for g, c in residual.items()
                        })
                        jacobi_violations.append(((i, j, k), poly))

    ok = not shape_errors and not jacobi_violations
    return ValidationReport(ok, jacobi_violations, shape_errors)


# -- catalog ------------------------------------------------------------

def _neg_gen(g: int) -> LinearCombo:
    return {g: Fraction(-1)}


_CATALOG: Dict[str, Tuple[int, Dict[Tuple[int, int], LinearCombo]]] = {
    "n3_1": (3, {(3, 2): _neg_gen(1)}),
    "n4_1": (4, {(4, 2): _neg_gen(1), (4, 3): _neg_gen(2)}),
    "n5_1": (5, {(5, 3): _neg_gen(1), (5, 4): _neg_gen(2)}),
    "n5_2": (5, {(4, 3): _neg_gen(2), (5, 3): _neg_gen(1), (5, 4): _neg_gen(3)}),
    "n5_3": (5, {(4, 2): _neg_gen(1), (5, 3): _neg_gen(1)}),
    "n5_4": (5, {(4, 3): _neg_gen(1), (5, 2): _neg_gen(1), (5, 4): _neg_gen(2)}),
    "n5_5": (5, {(5, 2): _neg_gen(1), (5, 3): _neg_gen(2), (5, 4): _neg_gen(3)}),
    "n5_6": (5, {(4, 3): _neg_gen(1), (5, 2): _neg_gen(1), (5, 3): _neg_gen(2), (5, 4): _neg_gen(3)}),
}

CATALOG_NAMES = tuple(_CATALOG)


def builtin(name: str) -> LieAlgebraSpec:
    """Return a catalog algebra: n3_1 .. n5_6 or abelian_k for k <= 8."""
    if name in _CATALOG:
        dim, brackets = _CATALOG[name]
        return LieAlgebraSpec(name, dim, brackets)
    match = re.fullmatch(r"abelian_(\d+)", name)
    if match:
        k = int(match.group(1))
        if 1 <= k <= 8:
            return LieAlgebraSpec(name, k, {})
    raise UnknownAlgebraError(f"unknown algebra {name!r}")


# -- nilpotency ---------------------------------------------------------

def _row_space_basis(rows: List[List[Fraction]]) -> List[List[Fraction]]:
    """Exact Gaussian elimination; returns a basis of the span in echelon form."""
    basis: List[List[Fraction]] = []
    pivots: List[int] = []
    for row in rows:
        row = list(row)
        for piv, brow in zip(pivots, basis):
            if row[piv]:
                factor = row[piv] / brow[piv]
                row = [a - factor * b for a, b in zip(row, brow)]
        for col, val in enumerate(row):
            if val:
                basis.append(row)
                pivots.append(col)
                break
    return basis


def lower_central_series(spec: LieAlgebraSpec) -> NilpotencyProfile:
    """Dimensions of L = L1 >= L2 >= ... with L_k = [L, L_{k-1}]."""
    n = spec.dim
    current = [[Fraction(1 if c == r else 0) for c in range(n)] for r in range(n)]
    dims = [n]
    while dims[-1] > 0:
        produced = []
        for i in range(1, n + 1):
            for vec in current:
                combo = {g + 1: c for g, c in enumerate(vec) if c}
                out = _ad_combo(spec, i, combo)
                if out:
                    produced.append([out.get(c + 1, Fraction(0)) for c in range(n)])
        nxt = _row_space_basis(produced)
        dims.append(len(nxt))
        if len(nxt) == dims[-2]:  # stabilized above zero
            break
        current = nxt
    nilpotent = dims[-1] == 0
    cls = len(dims) - 1 if nilpotent else None
    return NilpotencyProfile(dims, nilpotent, cls)


def engel_check(spec: LieAlgebraSpec) -> Dict[int, int]:
    """Least k with ad(x_i)^k = 0 for each generator; errors past the dim bound."""
    n = spec.dim
    result = {}
    for i in range(1, n + 1):
        # columns of ad(x_i): image of each generator
        cols = [bracket_combo(spec, i, j) for j in range(1, n + 1)]
        current = cols
        k = 1
        while any(current):
            if k >= n + 1:
                raise EngelBoundError(f"ad(x{i}) is not nilpotent within {n} steps")
            current = [_ad_combo(spec, i, combo) for combo in current]
            k += 1
        result[i] = k
    return result


# -- JSON schema --------------------------------------------------------

def spec_to_obj(spec: LieAlgebraSpec) -> dict:
    entries = []
    for (i, j) in sorted(spec.brackets):
        combo = spec.brackets[(i, j)]
        value = [{"coeff": str(combo[g]), "gen": g} for g in sorted(combo)]
        entries.append({"i": i, "j": j, "value": value})
    return {"name": spec.name, "dim": spec.dim, "brackets": entries}


def spec_from_obj(obj: dict) -> LieAlgebraSpec:
    brackets = {}
    for entry in obj["brackets"]:
        combo = {int(t["gen"]): Fraction(t["coeff"]) for t in entry["value"]}
        brackets[(int(entry["i"]), int(entry["j"]))] = combo
    return LieAlgebraSpec(str(obj["name"]), int(obj["dim"]), brackets)


def spec_to_json(spec: LieAlgebraSpec) -> str:
    return json.dumps(spec_to_obj(spec), indent=2)


def spec_from_json(text: str) -> LieAlgebraSpec:
    return spec_from_obj(json.loads(text))
