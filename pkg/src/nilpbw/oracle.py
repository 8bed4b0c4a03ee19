"""PBW normalization by generic term rewriting over the bracket table.

This is the slow, trust-anchored engine: it only uses the defining relation
x_i x_j = x_j x_i + [x_i, x_j] and therefore works for any validated spec.
Intermediate state is a word -> coefficient map so identical branches merge
instead of blowing up.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Sequence, Tuple

from .algebra import LieAlgebraError, LieAlgebraSpec
from .poly import Monomial, Poly

Word = Tuple[int, ...]

STRATEGIES = ("leftmost", "rightmost")


def _find_descent(word: Word, strategy: str) -> int | None:
    """Position of the selected adjacent out-of-order pair, or None if sorted."""
    rng = range(len(word) - 1)
    if strategy == "rightmost":
        rng = reversed(rng)
    for pos in rng:
        if word[pos] > word[pos + 1]:
            return pos
    return None


def _word_to_monomial(word: Word, dim: int) -> Monomial:
    exps = [0] * dim
    for letter in word:
        exps[letter - 1] += 1
    return tuple(exps)


def straighten_word(spec: LieAlgebraSpec, letters: Sequence[int],
                    strategy: str = "leftmost") -> Poly:
    """Rewrite an arbitrary word of generators into its PBW normal form.

    Each step either swaps an adjacent out-of-order pair (adding the bracket
    contraction, which shortens the word) or finishes a sorted word, so the
    rewriting terminates; the PBW theorem makes the result strategy-independent.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    for letter in letters:
        if not (isinstance(letter, int) and 1 <= letter <= spec.dim):
            raise LieAlgebraError(f"letter {letter} out of range 1..{spec.dim}")

    pending: Dict[Word, Fraction] = {tuple(letters): Fraction(1)}
    finished: Dict[Monomial, Fraction] = {}
    while pending:
        nxt: Dict[Word, Fraction] = {}

        def _accumulate(target, key, value):
            total = target.get(key, Fraction(0)) + value
            if total:
                target[key] = total
            elif key in target:
                del target[key]

        for word, coeff in pending.items():
            pos = _find_descent(word, strategy)
            if pos is None:
                _accumulate(finished, _word_to_monomial(word, spec.dim), coeff)
                continue
            i, j = word[pos], word[pos + 1]
            swapped = word[:pos] + (j, i) + word[pos + 2:]
            _accumulate(nxt, swapped, coeff)
            for g, c in spec.brackets.get((i, j), {}).items():
                contracted = word[:pos] + (g,) + word[pos + 2:]
                _accumulate(nxt, contracted, coeff * c)
        pending = nxt
    return Poly(spec.dim, finished)


def _monomial_word(mono: Monomial) -> Word:
    word = []
    for idx, exp in enumerate(mono, start=1):
        word.extend([idx] * exp)
    return tuple(word)


def oracle_product(spec: LieAlgebraSpec, left: Monomial, right: Monomial,
                   strategy: str = "leftmost") -> Poly:
    """Product of two PBW basis monomials, straightened from the concatenated word."""
    left = tuple(left)
    right = tuple(right)
    if len(left) != spec.dim or len(right) != spec.dim:
        raise LieAlgebraError(
            f"monomial length mismatch: got {len(left)} and {len(right)}, expected {spec.dim}")
    return straighten_word(spec, _monomial_word(left) + _monomial_word(right), strategy)
