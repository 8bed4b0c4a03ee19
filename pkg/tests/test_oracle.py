import random
from fractions import Fraction

import pytest

from nilpbw.algebra import CATALOG_NAMES, LieAlgebraError, builtin
from nilpbw.oracle import STRATEGIES, oracle_product, straighten_word
from nilpbw.poly import Poly, total_degree, unit_monomial


def test_empty_word_is_unit():
    spec = builtin("n3_1")
    assert straighten_word(spec, []) == Poly.one(3)


def test_sorted_word_passes_through():
    spec = builtin("n5_6")
    p = straighten_word(spec, [1, 1, 3, 5])
    assert p == Poly(5, {(2, 0, 1, 0, 1): 1})


def test_single_swap_n3_1():
    spec = builtin("n3_1")
    assert straighten_word(spec, [3, 2]) == Poly(3, {(0, 1, 1): 1, (1, 0, 0): -1})


def test_squared_swap_n3_1():
    spec = builtin("n3_1")
    p = straighten_word(spec, [3, 3, 2, 2])
    assert p == Poly(3, {(0, 2, 2): 1, (1, 1, 1): -4, (2, 0, 0): 2})


def test_product_spot_n5_6():
    spec = builtin("n5_6")
    p = oracle_product(spec, (0, 0, 0, 0, 2), (0, 0, 0, 1, 0))
    assert p == Poly(5, {(0, 0, 0, 1, 2): 1, (0, 0, 1, 0, 1): -2, (0, 1, 0, 0, 0): 1})


def test_unit_laws():
    for name in ("n4_1", "n5_2"):
        spec = builtin(name)
        one = unit_monomial(spec.dim)
        mono = tuple(1 for _ in range(spec.dim))
        assert oracle_product(spec, one, mono) == Poly.monomial(mono)
        assert oracle_product(spec, mono, one) == Poly.monomial(mono)


def test_degree_one_commutator_identity():
    from nilpbw.algebra import bracket
    for name in CATALOG_NAMES:
        spec = builtin(name)
        for i in range(1, spec.dim + 1):
            for j in range(1, spec.dim + 1):
                xi = tuple(1 if k == i - 1 else 0 for k in range(spec.dim))
                xj = tuple(1 if k == j - 1 else 0 for k in range(spec.dim))
                lhs = oracle_product(spec, xi, xj) - oracle_product(spec, xj, xi)
                assert lhs == bracket(spec, i, j)


def test_strategy_confluence_sample():
    rng = random.Random(20240817)
    for name in CATALOG_NAMES:
        spec = builtin(name)
        for _ in range(50):
            word = [rng.randint(1, spec.dim) for _ in range(rng.randint(0, 8))]
            left = straighten_word(spec, word, "leftmost")
            right = straighten_word(spec, word, "rightmost")
            assert left == right, (name, word)


def test_unknown_strategy_rejected():
    with pytest.raises(ValueError):
        straighten_word(builtin("n3_1"), [1], strategy="middle")
    with pytest.raises(LieAlgebraError):
        straighten_word(builtin("n3_1"), [4])
    with pytest.raises(LieAlgebraError):
        oracle_product(builtin("n3_1"), (1, 0), (0, 0, 0))


def test_filtration_top_term():
    rng = random.Random(7)
    for name in CATALOG_NAMES:
        spec = builtin(name)
        for _ in range(30):
            left = tuple(rng.randint(0, 2) for _ in range(spec.dim))
            right = tuple(rng.randint(0, 2) for _ in range(spec.dim))
            p = oracle_product(spec, left, right)
            top = total_degree(left) + total_degree(right)
            assert p.max_degree() == top
            merged = tuple(a + b for a, b in zip(left, right))
            assert p.coeff(merged) == 1
            assert all(total_degree(m) <= top for m in p.terms)


def test_integrality_sample():
    rng = random.Random(99)
    spec = builtin("n5_5")
    for _ in range(60):
        left = tuple(rng.randint(0, 3) for _ in range(5))
        right = tuple(rng.randint(0, 3) for _ in range(5))
        p = oracle_product(spec, left, right)
        assert all(c.denominator == 1 for c in p.terms.values())


def test_strategies_constant():
    assert STRATEGIES == ("leftmost", "rightmost")


def test_coefficients_exact():
    # a fractional bracket flows through exactly
    from nilpbw.algebra import LieAlgebraSpec
    spec = LieAlgebraSpec("half", 3, {(3, 2): {1: Fraction(1, 2)}})
    p = straighten_word(spec, [3, 2])
    assert p.coeff((1, 0, 0)) == Fraction(1, 2)
