"""Sparse exact-arithmetic polynomials over an ordered PBW monomial basis.

A monomial is a fixed-length tuple of nonnegative integer exponents, one slot
per generator of the ambient algebra; ``(e1, ..., en)`` stands for the ordered
product x1^e1 ... xn^en.  Coefficients are exact rationals, so two polynomials
are equal iff their term maps are equal.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

Monomial = tuple  # tuple[int, ...]
CoeffLike = Union[int, Fraction, str]


def unit_monomial(dim: int) -> Monomial:
    """The empty product, i.e. the multiplicative unit of U(L)."""
    return (0,) * dim


def total_degree(mono: Monomial) -> int:
    return sum(mono)


def grlex_key(mono: Monomial):
    return (sum(mono), mono)


def _check_monomial(mono, dim: int) -> Monomial:
    mono = tuple(mono)
    if len(mono) != dim:
        raise ValueError(f"monomial {mono!r} has length {len(mono)}, expected {dim}")
    if any((not isinstance(e, int)) or e < 0 for e in mono):
        raise ValueError(f"monomial {mono!r} has negative or non-integer exponents")
    return mono


class Poly:
    """Canonical finite map from monomial to nonzero rational coefficient.

    Instances behave like immutable values; every operation returns a new
    polynomial with zero terms dropped.
    """

    __slots__ = ("dim", "terms")

    def __init__(self, dim: int, terms: Union[Mapping, Iterable, None] = None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        clean: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for mono, coeff in items:
                mono = _check_monomial(mono, dim)
                coeff = Fraction(coeff)
                if not coeff:
                    continue
                acc = clean.get(mono)
                total = coeff if acc is None else acc + coeff
                if total:
                    clean[mono] = total
                elif acc is not None:
                    del clean[mono]
        self.terms = clean

    # -- constructors ----------------------------------------------------

    @classmethod
    def _from_raw(cls, dim: int, terms: dict) -> "Poly":
        """Internal fast path: caller guarantees canonical terms."""
        poly = cls.__new__(cls)
        poly.dim = dim
        poly.terms = terms
        return poly

    @classmethod
    def zero(cls, dim: int) -> "Poly":
        return cls(dim)

    @classmethod
    def one(cls, dim: int) -> "Poly":
        return cls(dim, {unit_monomial(dim): Fraction(1)})

    @classmethod
    def monomial(cls, mono, coeff: CoeffLike = 1) -> "Poly":
        mono = tuple(mono)
        return cls(len(mono), {mono: Fraction(coeff)})

    @classmethod
    def generator(cls, dim: int, index: int, coeff: CoeffLike = 1) -> "Poly":
        """The degree-1 polynomial coeff * x_index (1-based index)."""
        if not 1 <= index <= dim:
            raise ValueError(f"generator index {index} out of range 1..{dim}")
        mono = tuple(1 if k == index - 1 else 0 for k in range(dim))
        return cls(dim, {mono: Fraction(coeff)})

    # -- arithmetic ------------------------------------------------------

    def _require_same_dim(self, other: "Poly") -> None:
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        self._require_same_dim(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            total = coeff if acc is None else acc + coeff
            if total:
                out[mono] = total
            elif acc is not None:
                del out[mono]
        result = Poly.__new__(Poly)
        result.dim = self.dim
        result.terms = out
        return result

    def __sub__(self, other: "Poly") -> "Poly":
        if not isinstance(other, Poly):
            return NotImplemented
        return self + other.scale(-1)

    def __neg__(self) -> "Poly":
        return self.scale(-1)

    def scale(self, coeff: CoeffLike) -> "Poly":
        coeff = Fraction(coeff)
        result = Poly.__new__(Poly)
        result.dim = self.dim
        if not coeff:
            result.terms = {}
        else:
            result.terms = {m: c * coeff for m, c in self.terms.items()}
        return result

    def __rmul__(self, coeff) -> "Poly":
        if isinstance(coeff, (int, Fraction)):
            return self.scale(coeff)
        return NotImplemented

    # -- inspection ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def coeff(self, mono) -> Fraction:
        return self.terms.get(tuple(mono), Fraction(0))

    def max_degree(self) -> int:
        """Total degree of the polynomial; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(total_degree(m) for m in self.terms)

    def sorted_terms(self) -> Iterator:
        """Terms in descending graded-lex order (the display/serialization order)."""
        for mono in sorted(self.terms, key=grlex_key, reverse=True):
            yield mono, self.terms[mono]

    # -- serialization & display ----------------------------------------

    def to_obj(self) -> list:
        return [
            {"coeff": str(coeff), "mono": list(mono)}
            for mono, coeff in self.sorted_terms()
        ]

    @classmethod
    def from_obj(cls, dim: int, obj: Iterable[Mapping]) -> "Poly":
        return cls(dim, [(tuple(t["mono"]), Fraction(t["coeff"])) for t in obj])

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for pos, (mono, coeff) in enumerate(self.sorted_terms()):
            body = format_monomial(mono)
            mag = abs(coeff)
            if body == "1":
                chunk = str(mag)
            elif mag == 1:
                chunk = body
            else:
                chunk = f"{mag}*{body}"
            if pos == 0:
                pieces.append(chunk if coeff > 0 else f"-{chunk}")
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + chunk)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"Poly(dim={self.dim}, {str(self)})"


def format_monomial(mono: Monomial) -> str:
    factors = []
    for k, exp in enumerate(mono):
        if exp == 1:
            factors.append(f"x{k + 1}")
        elif exp:
            factors.append(f"x{k + 1}^{exp}")
    return "*".join(factors) if factors else "1"


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_scale(coeff: CoeffLike, p: Poly) -> Poly:
    return p.scale(coeff)
