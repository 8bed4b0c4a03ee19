"""End-to-end acceptance checks, one numbered criterion per test.

Each test prints a single PASS/FAIL line so the run reads as a checklist
(`pytest -s tests/test_acceptance.py`).  Criterion 10 is a non-gating
performance sanity check: it reports but never fails the suite.  Setting
NILPBW_SLOW=1 escalates the dimension-5 grid bound from degree 3 to 4.
"""

import json
import os
import random
import time
from fractions import Fraction
from functools import lru_cache
from math import factorial

from nilpbw import closedform, table
from nilpbw.algebra import (CATALOG_NAMES, LieAlgebraSpec, builtin, engel_check,
                            lower_central_series, validate)
from nilpbw.closedform import (ACD, ALGEBRA_IDS, BCD_ACG, CHAIN, CHAIN_BC, CPR,
                               LEMMA_TERMS, product)
from nilpbw.oracle import oracle_product, straighten_word
from nilpbw.poly import Poly, total_degree, unit_monomial

SLOW = os.environ.get("NILPBW_SLOW") == "1"


def _line(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num:02d}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num} failed: {detail}"


def _grid_degree(dim: int) -> int:
    if dim <= 4:
        return 4
    return 4 if SLOW else 3


@lru_cache(maxsize=1)
def _full_grid():
    """Shared sweep for criteria 1 and 6: mismatches and fractional constants."""
    pair_count = 0
    mismatches = []
    nonintegral = []
    for aid in ALGEBRA_IDS:
        spec = builtin(aid)
        monos = table.monomials_upto(spec.dim, _grid_degree(spec.dim))
        for left in monos:
            for right in monos:
                pair_count += 1
                closed = product(aid, left, right)
                if closed != oracle_product(spec, left, right):
                    mismatches.append((aid, left, right))
                if any(c.denominator != 1 for c in closed.terms.values()):
                    nonintegral.append((aid, left, right))
    return pair_count, mismatches, nonintegral


def test_criterion_01_oracle_equivalence():
    pairs, mismatches, _ = _full_grid()
    _line(1, not mismatches,
          f"closed form equals oracle on {pairs} monomial pairs across "
          f"{len(ALGEBRA_IDS)} algebras ({len(mismatches)} mismatches)")


def test_criterion_02_spot_values():
    checks = []
    checks.append(product("n3_1", (0, 0, 1), (0, 1, 0))
                  == Poly(3, {(0, 1, 1): 1, (1, 0, 0): -1}))
    checks.append(product("n3_1", (0, 0, 2), (0, 2, 0))
                  == Poly(3, {(0, 2, 2): 1, (1, 1, 1): -4, (2, 0, 0): 2}))
    checks.append(product("n5_6", (0, 0, 0, 0, 2), (0, 0, 0, 1, 0))
                  == Poly(5, {(0, 0, 0, 1, 2): 1, (0, 0, 1, 0, 1): -2,
                              (0, 1, 0, 0, 0): 1}))

    def coeffs(lemma, t, u):
        return {term.multi_index: (term.coeff * (-1) ** term.neg_g_power,
                                   dict(term.role_exponents))
                for term in LEMMA_TERMS[lemma](t, u)}

    # a^2 b = b a^2 + 2 c a + d
    acd = coeffs(ACD, 2, 1)
    checks.append(acd[(0, 0)][0] == 1 and acd[(1, 0)][0] == 2 and acd[(0, 1)][0] == 1)
    # a b^2 = b^2 a + 2 c b + d
    bcd = coeffs(BCD_ACG, 1, 2)
    checks.append(bcd[(0, 0, 0)][0] == 1 and bcd[(1, 0, 0)][0] == 2
                  and bcd[(0, 1, 0)][0] == 1)
    # a^3 b = b a^3 + 3 c a^2 + 3 d a + g
    chain = coeffs(CHAIN, 3, 1)
    checks.append(chain[(0, 0, 0)][0] == 1 and chain[(1, 0, 0)][0] == 3
                  and chain[(0, 1, 0)][0] == 3 and chain[(0, 0, 1)][0] == 1)
    # a b^2 = b^2 a + 2 c b - g
    cbc = coeffs(CHAIN_BC, 1, 2)
    checks.append(cbc[(0, 0, 0, 0)][0] == 1 and cbc[(1, 0, 0, 0)][0] == 2
                  and cbc[(0, 0, 0, 1)][0] == -1)
    _line(2, all(checks), f"{len(checks)} pinned product and lemma base-case values")


def test_criterion_03_axioms():
    catalog_ok = all(validate(builtin(name)).ok for name in CATALOG_NAMES)
    flipped = LieAlgebraSpec("sl2_flipped", 3, {
        (2, 1): {3: Fraction(-1)},
        (3, 1): {1: Fraction(-2)},  # correct sl2 has [x3,x1] = 2 x1
        (3, 2): {2: Fraction(-2)},
    })
    report = validate(flipped)
    located = (not report.ok
               and any(t == (3, 2, 1) and not residual.is_zero()
                       for t, residual in report.jacobi_violations))
    _line(3, catalog_ok and located,
          "catalog validates; sign-flipped fixture fails with a located "
          "Jacobi residual")


def test_criterion_04_nilpotency():
    expected = {"n3_1": 2, "n4_1": 3, "n5_1": 2, "n5_2": 3,
                "n5_3": 2, "n5_4": 3, "n5_5": 4, "n5_6": 4}
    classes = {name: lower_central_series(builtin(name)).nilpotency_class
               for name in expected}
    engel_ok = all(engel_check(builtin(name)) for name in expected)
    _line(4, classes == expected and engel_ok,
          f"nilpotency classes {classes}; engel_check succeeds everywhere")


def _mul(aid, p: Poly, q: Poly) -> Poly:
    acc = Poly.zero(p.dim)
    for ml, cl in p.terms.items():
        for mr, cr in q.terms.items():
            acc = acc + product(aid, ml, mr).scale(cl * cr)
    return acc


def test_criterion_05_algebraic_laws():
    rng = random.Random(52090)
    cases = 200
    pools = {aid: table.monomials_upto(builtin(aid).dim, 3) for aid in ALGEBRA_IDS}

    for _ in range(cases):  # associativity
        aid = rng.choice(ALGEBRA_IDS)
        a, b, c = (rng.choice(pools[aid]) for _ in range(3))
        lhs = _mul(aid, product(aid, a, b), Poly.monomial(c))
        rhs = _mul(aid, Poly.monomial(a), product(aid, b, c))
        assert lhs == rhs, ("assoc", aid, a, b, c)

    for _ in range(cases):  # unit laws
        aid = rng.choice(ALGEBRA_IDS)
        mono = rng.choice(pools[aid])
        one = unit_monomial(len(mono))
        assert product(aid, one, mono) == Poly.monomial(mono)
        assert product(aid, mono, one) == Poly.monomial(mono)

    from nilpbw.algebra import bracket
    for _ in range(cases):  # degree-1 commutator identity
        aid = rng.choice(ALGEBRA_IDS)
        spec = builtin(aid)
        i, j = rng.randint(1, spec.dim), rng.randint(1, spec.dim)
        xi = tuple(1 if k == i - 1 else 0 for k in range(spec.dim))
        xj = tuple(1 if k == j - 1 else 0 for k in range(spec.dim))
        assert product(aid, xi, xj) - product(aid, xj, xi) == bracket(spec, i, j)

    for _ in range(cases):  # PBW filtration with monic top term
        aid = rng.choice(ALGEBRA_IDS)
        left, right = rng.choice(pools[aid]), rng.choice(pools[aid])
        result = product(aid, left, right)
        top = total_degree(left) + total_degree(right)
        assert result.max_degree() == top
        assert result.coeff(tuple(a + b for a, b in zip(left, right))) == 1

    _line(5, True, f"associativity, units, commutator, filtration: {cases} "
          "random cases each")


def test_criterion_06_integrality():
    pairs, _, nonintegral = _full_grid()
    _line(6, not nonintegral,
          f"all structure constants over the {pairs}-pair grid are integers")


def test_criterion_07_divided_power_consistency():
    prefactor = {
        CPR: lambda mi: Fraction(1),
        ACD: lambda mi: Fraction(1, 2 ** mi[1]),
        BCD_ACG: lambda mi: Fraction(1, 2 ** (mi[1] + mi[2])),
        CHAIN: lambda mi: Fraction(1, 2 ** mi[1] * 6 ** mi[2]),
        CHAIN_BC: lambda mi: Fraction(1, 2 ** (mi[1] + mi[3]) * 6 ** mi[2]),
    }
    checked = 0
    for lemma, fn in LEMMA_TERMS.items():
        for t in range(7):
            for u in range(7):
                for term in fn(t, u):
                    denom = Fraction(1)
                    for k in term.multi_index:
                        denom *= factorial(k)
                    denom *= factorial(term.role_exponents["b"])
                    denom *= factorial(term.role_exponents["a"])
                    expected = (factorial(t) * factorial(u)
                                * prefactor[lemma](term.multi_index) / denom)
                    assert term.coeff == expected, (lemma, t, u, term.multi_index)
                    checked += 1
    _line(7, True, f"{checked} coefficients reproduce from divided-power form")


def test_criterion_08_confluence():
    rng = random.Random(61803)
    words = 1000
    for name in CATALOG_NAMES:
        spec = builtin(name)
        for _ in range(words):
            word = [rng.randint(1, spec.dim) for _ in range(rng.randint(0, 8))]
            left = straighten_word(spec, word, "leftmost")
            right = straighten_word(spec, word, "rightmost")
            assert left == right, (name, word)
    _line(8, True, f"leftmost and rightmost strategies agree on {words} words "
          f"per algebra")


def test_criterion_09_determinism():
    first = table.export_json(*table.generate_table("n5_2", 2, "cross_checked"))
    second = table.export_json(*table.generate_table("n5_2", 2, "cross_checked"))
    entries = len(json.loads(first)["entries"])
    _line(9, first == second,
          f"n5_2 degree-2 cross-checked table ({entries} entries) is "
          "byte-identical across runs")


def test_criterion_10_performance_sanity():
    spec = builtin("n5_6")
    monos = table.monomials_upto(5, 3)
    pairs = [(l, r) for l in monos for r in monos]

    def best_of(fn, repeats=3):
        times = []
        for _ in range(repeats):
            start = time.perf_counter()
            for l, r in pairs:
                fn(l, r)
            times.append(time.perf_counter() - start)
        return min(times)

    closed_secs = best_of(lambda l, r: product("n5_6", l, r))
    oracle_secs = best_of(lambda l, r: oracle_product(spec, l, r))

    speedup = oracle_secs / closed_secs if closed_secs else float("inf")
    verdict = "PASS" if speedup >= 10 else "SOFT-FAIL (non-gating)"
    print(f"criterion 10: {verdict} - closed form {speedup:.1f}x faster than "
          f"oracle on the n5_6 degree-3 grid (target 10x)")
