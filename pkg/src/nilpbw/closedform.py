"""Closed-form straightening identities and per-algebra product formulas.

The straightening identities reorder a^t b^u for five bracket patterns among
role elements a, b, c, d, g; ``apply_roles`` instantiates the abstract terms
in a concrete algebra after checking the pattern's bracket hypotheses.  The
per-algebra ``product`` branches evaluate the explicit multi-index sums for
the eight catalog algebras directly in exact integer arithmetic, with the
bounded coefficient tables memoized per (t, u) pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Dict, Iterator, List, Tuple

from .algebra import LieAlgebraSpec, bracket_combo
from .poly import Monomial, Poly

# Lemma identifiers, named by their bracket patterns.
CPR = "cpr"                # [a,b]=c, c central among a,b,c
ACD = "acd"                # [a,b]=c, [a,c]=d
BCD_ACG = "bcd_acg"        # [a,b]=c, [b,c]=d, [a,c]=g
CHAIN = "chain"            # [a,b]=c, [a,c]=d, [a,d]=g
CHAIN_BC = "chain_bc"      # chain plus [b,c]=-g

LEMMA_ROLES: Dict[str, Tuple[str, ...]] = {
    CPR: ("a", "b", "c"),
    ACD: ("a", "b", "c", "d"),
    BCD_ACG: ("a", "b", "c", "d", "g"),
    CHAIN: ("a", "b", "c", "d", "g"),
    CHAIN_BC: ("a", "b", "c", "d", "g"),
}

# Required brackets per lemma; every pair of roles not listed must bracket to 0.
LEMMA_HYPOTHESES: Dict[str, Dict[Tuple[str, str], str]] = {
    CPR: {("a", "b"): "c"},
    ACD: {("a", "b"): "c", ("a", "c"): "d"},
    BCD_ACG: {("a", "b"): "c", ("b", "c"): "d", ("a", "c"): "g"},
    CHAIN: {("a", "b"): "c", ("a", "c"): "d", ("a", "d"): "g"},
    CHAIN_BC: {("a", "b"): "c", ("a", "c"): "d", ("a", "d"): "g", ("b", "c"): "-g"},
}

ALGEBRA_IDS = ("n3_1", "n4_1", "n5_1", "n5_2", "n5_3", "n5_4", "n5_5", "n5_6")


class RoleBindingError(ValueError):
    pass


class UnsupportedAlgebraError(ValueError):
    pass


def _exact_div(num: int, den: int) -> int:
    quot, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"{num} not divisible by {den}")
    return quot


def divided_power_coeff(k: int) -> Fraction:
    """1/k! for k >= 0; zero for k < 0 so negative powers annihilate a term."""
    if k < 0:
        return Fraction(0)
    return Fraction(1, factorial(k))


@dataclass(frozen=True)
class StraighteningTerm:
    """One abstract summand of a straightening identity.

    ``coeff`` is the unsigned integer coefficient; signs enter only through
    role signs and the (-g) power when the term is instantiated.
    """

    lemma: str
    multi_index: Tuple[int, ...]
    coeff: Fraction
    role_exponents: Dict[str, int]
    neg_g_power: int = 0


# -- memoized coefficient tables ----------------------------------------

@lru_cache(maxsize=8192)
def _frac(value: int) -> Fraction:
    """Integer structure constants repeat constantly across a table sweep."""
    return Fraction(value)


@lru_cache(maxsize=None)
def _cpr_table(r: int, s: int) -> Tuple[Tuple[int, int], ...]:
    """(j, C(r,j) C(s,j) j!) over j <= min(r, s)."""
    return tuple(
        (j, comb(r, j) * comb(s, j) * factorial(j))
        for j in range(min(r, s) + 1))


@lru_cache(maxsize=None)
def _acd_table(t: int, u: int) -> Tuple[Tuple[int, int, int], ...]:
    """(k1, k2, coeff) over k1 + k2 <= u, k1 + 2 k2 <= t."""
    out = []
    for k1 in range(min(u, t) + 1):
        for k2 in range(min(u - k1, (t - k1) // 2) + 1):
            coeff = (comb(u, k1 + k2) * comb(t, k1 + 2 * k2) * comb(k1 + k2, k1)
                     * _exact_div(factorial(k1 + 2 * k2), 2 ** k2))
            out.append((k1, k2, coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def _bcd_acg_table(t: int, u: int) -> Tuple[Tuple[int, int, int, int], ...]:
    """(k1, k2, k3, coeff) over k1 + 2 k2 + k3 <= u, k1 + k2 + 2 k3 <= t."""
    out = []
    for k1 in range(min(u, t) + 1):
        for k2 in range((u - k1) // 2 + 1):
            for k3 in range(min(u - k1 - 2 * k2, (t - k1 - k2) // 2) + 1):
                num = factorial(k1 + 2 * k2 + k3) * factorial(k1 + k2 + 2 * k3)
                den = 2 ** (k2 + k3) * factorial(k3) * factorial(k2) * factorial(k1)
                coeff = (comb(u, k1 + 2 * k2 + k3) * comb(t, k1 + k2 + 2 * k3)
                         * _exact_div(num, den))
                out.append((k1, k2, k3, coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def _chain_table(t: int, u: int) -> Tuple[Tuple[int, int, int, int], ...]:
    """(k1, k2, k3, coeff) over k1 + k2 + k3 <= u, k1 + 2 k2 + 3 k3 <= t."""
    out = []
    for k1 in range(min(u, t) + 1):
        for k2 in range(min(u - k1, (t - k1) // 2) + 1):
            for k3 in range(min(u - k1 - k2, (t - k1 - 2 * k2) // 3) + 1):
                num = factorial(k1 + k2 + k3) * factorial(k1 + 2 * k2 + 3 * k3)
                den = 2 ** k2 * 6 ** k3 * factorial(k3) * factorial(k2) * factorial(k1)
                coeff = (comb(u, k1 + k2 + k3) * comb(t, k1 + 2 * k2 + 3 * k3)
                         * _exact_div(num, den))
                out.append((k1, k2, k3, coeff))
    return tuple(out)


@lru_cache(maxsize=None)
def _chain_bc_table(t: int, u: int) -> Tuple[Tuple[int, int, int, int, int], ...]:
    """(k1, k2, k3, k4, signless coeff) over k1+k2+k3+2k4 <= u, k1+2k2+3k3+k4 <= t."""
    out = []
    for k1 in range(min(u, t) + 1):
        for k2 in range(min(u - k1, (t - k1) // 2) + 1):
            for k3 in range(min(u - k1 - k2, (t - k1 - 2 * k2) // 3) + 1):
                k4max = min((u - k1 - k2 - k3) // 2, t - k1 - 2 * k2 - 3 * k3)
                for k4 in range(k4max + 1):
                    num = (factorial(k1 + k2 + k3 + 2 * k4)
                           * factorial(k1 + 2 * k2 + 3 * k3 + k4))
                    den = (2 ** (k2 + k4) * 6 ** k3
                           * factorial(k4) * factorial(k3) * factorial(k2) * factorial(k1))
                    coeff = (comb(u, k1 + k2 + k3 + 2 * k4)
                             * comb(t, k1 + 2 * k2 + 3 * k3 + k4)
                             * _exact_div(num, den))
                    out.append((k1, k2, k3, k4, coeff))
    return tuple(out)


# -- abstract straightening terms ---------------------------------------

def cpr_terms(r: int, s: int) -> List[StraighteningTerm]:
    """a^r b^s with [a,b]=c and c central: sum over j <= min(r,s)."""
    return [
        StraighteningTerm(CPR, (j,), Fraction(coeff),
                          {"c": j, "b": s - j, "a": r - j})
        for j, coeff in _cpr_table(r, s)
    ]


def lemma_acd_terms(t: int, u: int) -> List[StraighteningTerm]:
    """a^t b^u under [a,b]=c, [a,c]=d."""
    return [
        StraighteningTerm(ACD, (k1, k2), Fraction(coeff),
                          {"d": k2, "c": k1, "b": u - k1 - k2, "a": t - k1 - 2 * k2})
        for k1, k2, coeff in _acd_table(t, u)
    ]


def lemma_bcd_acg_terms(t: int, u: int) -> List[StraighteningTerm]:
    """a^t b^u under [a,b]=c, [b,c]=d, [a,c]=g."""
    return [
        StraighteningTerm(BCD_ACG, (k1, k2, k3), Fraction(coeff),
                          {"g": k3, "d": k2, "c": k1,
                           "b": u - k1 - 2 * k2 - k3, "a": t - k1 - k2 - 2 * k3})
        for k1, k2, k3, coeff in _bcd_acg_table(t, u)
    ]


def lemma_chain_terms(t: int, u: int) -> List[StraighteningTerm]:
    """a^t b^u under the chain [a,b]=c, [a,c]=d, [a,d]=g."""
    return [
        StraighteningTerm(CHAIN, (k1, k2, k3), Fraction(coeff),
                          {"g": k3, "d": k2, "c": k1,
                           "b": u - k1 - k2 - k3, "a": t - k1 - 2 * k2 - 3 * k3})
        for k1, k2, k3, coeff in _chain_table(t, u)
    ]


def lemma_chain_bc_terms(t: int, u: int) -> List[StraighteningTerm]:
    """a^t b^u under the chain pattern plus [b,c]=-g; the k4 index carries (-g)."""
    return [
        StraighteningTerm(CHAIN_BC, (k1, k2, k3, k4), Fraction(coeff),
                          {"g": k3 + k4, "d": k2, "c": k1,
                           "b": u - k1 - k2 - k3 - 2 * k4,
                           "a": t - k1 - 2 * k2 - 3 * k3 - k4},
                          neg_g_power=k4)
        for k1, k2, k3, k4, coeff in _chain_bc_table(t, u)
    ]


LEMMA_TERMS = {
    CPR: cpr_terms,
    ACD: lemma_acd_terms,
    BCD_ACG: lemma_bcd_acg_terms,
    CHAIN: lemma_chain_terms,
    CHAIN_BC: lemma_chain_bc_terms,
}


# -- role binding -------------------------------------------------------

@dataclass(frozen=True)
class RoleBinding:
    """Assignment of each lemma role to a signed generator of a concrete algebra."""

    spec: LieAlgebraSpec
    lemma: str
    assignment: Dict[str, Tuple[int, int]]  # role -> (generator index, sign +-1)


def check_role_binding(binding: RoleBinding) -> None:
    """Verify the lemma's bracket hypotheses; raise RoleBindingError otherwise."""
    roles = LEMMA_ROLES[binding.lemma]
    spec = binding.spec
    for role in roles:
        if role not in binding.assignment:
            raise RoleBindingError(f"role {role!r} is unbound")
        gen, sign = binding.assignment[role]
        if not 1 <= gen <= spec.dim:
            raise RoleBindingError(f"role {role!r} bound to out-of-range generator {gen}")
        if sign not in (1, -1):
            raise RoleBindingError(f"role {role!r} has sign {sign}, expected +-1")
    gens = [binding.assignment[role][0] for role in roles]
    if len(set(gens)) != len(gens):
        raise RoleBindingError("bound generators must be pairwise distinct")
    if any(g1 <= g2 for g1, g2 in zip(gens, gens[1:])):
        raise RoleBindingError(
            f"bound indices must strictly decrease along roles {roles}, got {gens}")

    hypotheses = LEMMA_HYPOTHESES[binding.lemma]
    for pos1 in range(len(roles)):
        for pos2 in range(pos1 + 1, len(roles)):
            r1, r2 = roles[pos1], roles[pos2]
            g1, s1 = binding.assignment[r1]
            g2, s2 = binding.assignment[r2]
            actual = {g: s1 * s2 * c for g, c in bracket_combo(spec, g1, g2).items()}
            target = hypotheses.get((r1, r2))
            if target is None:
                expected: Dict[int, Fraction] = {}
            else:
                flip = -1 if target.startswith("-") else 1
                tg, ts = binding.assignment[target.lstrip("-")]
                expected = {tg: Fraction(flip * ts)}
            if actual != expected:
                raise RoleBindingError(
                    f"bracket [{r1},{r2}] mismatch: expected {target or '0'}, "
                    f"got combination {actual} in {spec.name}")


def _instantiate(binding: RoleBinding,
                 terms: List[StraighteningTerm]) -> Iterator[Tuple[Fraction, List[Tuple[int, int]]]]:
    """Yield (signed coefficient, [(generator, exponent), ...] ascending) per term."""
    for term in terms:
        coeff = term.coeff * (-1) ** term.neg_g_power
        factors = []
        for role, exp in term.role_exponents.items():
            if exp == 0:
                continue
            gen, sign = binding.assignment[role]
            coeff *= sign ** exp
            factors.append((gen, exp))
        factors.sort()
        yield coeff, factors


def apply_roles(binding: RoleBinding, terms: List[StraighteningTerm]) -> Poly:
    """Instantiate abstract lemma terms into a concrete PBW polynomial."""
    check_role_binding(binding)
    dim = binding.spec.dim
    out: Dict[Monomial, Fraction] = {}
    for coeff, factors in _instantiate(binding, terms):
        exps = [0] * dim
        for gen, exp in factors:
            exps[gen - 1] += exp
        mono = tuple(exps)
        total = out.get(mono, Fraction(0)) + coeff
        if total:
            out[mono] = total
        elif mono in out:
            del out[mono]
    return Poly(dim, out)


# -- per-algebra closed forms -------------------------------------------

def _product_n3_1(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l = left
    m, n, p = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(l, n):
        mono = (j + m + a, k + n - a, l + p - a)
        out[mono] = out.get(mono, 0) + ca * (-1) ** a
    return out


def _product_n4_1(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m = left
    n, p, q, r = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(m, p):
        for b1, b2, cb in _acd_table(m - a, q):
            coeff = ca * cb * (-1) ** (a + b1)
            mono = (j + n + a + b2, k + p - a + b1, l + q - b1 - b2,
                    m + r - a - b1 - 2 * b2)
            out[mono] = out.get(mono, 0) + coeff
    return out


def _product_n5_1(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m, n = left
    p, q, r, s, t = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(n, r):
        for b, cb in _cpr_table(n - a, s):
            coeff = ca * cb * (-1) ** (a + b)
            mono = (j + p + a, k + q + b, l + r - a, m + s - b, n + t - a - b)
            out[mono] = out.get(mono, 0) + coeff
    return out


def _product_n5_2(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m, n = left
    p, q, r, s, t = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(n, r):
        for b1, b2, b3, cb in _bcd_acg_table(n - a, s):
            for g, cg in _cpr_table(m, r - a + b1):
                coeff = ca * cb * cg * (-1) ** (a + b1 + g)
                mono = (j + p + a + b3, k + q + b2 + g, l + r - a + b1 - g,
                        m + s - g - b1 - 2 * b2 - b3,
                        n + t - a - b1 - b2 - 2 * b3)
                out[mono] = out.get(mono, 0) + coeff
    return out


def _product_n5_3(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m, n = left
    p, q, r, s, t = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(n, r):
        for b, cb in _cpr_table(m, q):
            coeff = ca * cb * (-1) ** (a + b)
            mono = (j + p + a + b, k + q - b, l + r - a, m + s - b, n + t - a)
            out[mono] = out.get(mono, 0) + coeff
    return out


def _product_n5_4(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m, n = left
    p, q, r, s, t = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(n, q):
        # here the acd pattern runs over the x5/x4 block: k1+k2 <= s, k1+2k2 <= n-a
        for b1, b2, cb in _acd_table(n - a, s):
            for g, cg in _cpr_table(m, r):
                coeff = ca * cb * cg * (-1) ** (a + b1 + g)
                mono = (j + p + a + b2 + g, k + q - a + b1, l + r - g,
                        m + s - g - b1 - b2, n + t - a - b1 - 2 * b2)
                out[mono] = out.get(mono, 0) + coeff
    return out


def _product_n5_5(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m, n = left
    p, q, r, s, t = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(n, q):
        for b1, b2, cb in _acd_table(n - a, r):
            rest = n - a - b1 - 2 * b2
            for g1, g2, g3, cg in _chain_table(rest, s):
                coeff = ca * cb * cg * (-1) ** (a + b1 + g1 + g3)
                mono = (j + p + a + b2 + g3, k + q - a + b1 + g2,
                        l + r - b1 - b2 + g1, m + s - g1 - g2 - g3,
                        n + t - a - b1 - 2 * b2 - g1 - 2 * g2 - 3 * g3)
                out[mono] = out.get(mono, 0) + coeff
    return out


def _product_n5_6(left: Monomial, right: Monomial) -> Dict[Monomial, int]:
    j, k, l, m, n = left
    p, q, r, s, t = right
    out: Dict[Monomial, int] = {}
    for a, ca in _cpr_table(n, q):
        for b1, b2, cb in _acd_table(n - a, r):
            rest = n - a - b1 - 2 * b2
            for g1, g2, g3, g4, cg in _chain_bc_table(rest, s):
                base = ca * cb * cg
                for d, cd in _cpr_table(m, r - b1 - b2 + g1):
                    coeff = base * cd * (-1) ** (a + b1 + g1 + g3 + d)
                    mono = (j + p + a + b2 + g4 + g3 + d,
                            k + q - a + b1 + g2,
                            l + r - b1 - b2 + g1 - d,
                            m + s - d - g1 - g2 - g3 - 2 * g4,
                            n + t - a - b1 - 2 * b2 - g1 - 2 * g2 - 3 * g3 - g4)
                    out[mono] = out.get(mono, 0) + coeff
    return out


_PRODUCT_BRANCHES = {
    "n3_1": (3, _product_n3_1),
    "n4_1": (4, _product_n4_1),
    "n5_1": (5, _product_n5_1),
    "n5_2": (5, _product_n5_2),
    "n5_3": (5, _product_n5_3),
    "n5_4": (5, _product_n5_4),
    "n5_5": (5, _product_n5_5),
    "n5_6": (5, _product_n5_6),
}


def product(algebra_id: str, left: Monomial, right: Monomial) -> Poly:
    """Structure-constant product of two PBW monomials via the closed formula."""
    try:
        dim, branch = _PRODUCT_BRANCHES[algebra_id]
    except KeyError:
        raise UnsupportedAlgebraError(
            f"no closed-form branch for {algebra_id!r}; known: {ALGEBRA_IDS}") from None
    left = tuple(left)
    right = tuple(right)
    if len(left) != dim or len(right) != dim:
        raise ValueError(
            f"monomial length mismatch for {algebra_id}: got {len(left)} and "
            f"{len(right)}, expected {dim}")
    raw = branch(left, right)
    return Poly._from_raw(dim, {m: _frac(c) for m, c in raw.items() if c})


# -- lemma-composition engine (debug path) ------------------------------

class UnsupportedPatternError(ValueError):
    """The bracket configuration matches none of the straightening patterns."""


def _signed_bracket(spec: LieAlgebraSpec, e1: Tuple[int, int],
                    e2: Tuple[int, int]) -> Tuple[int, int] | None:
    """Bracket of signed generators, required to be 0 or +- one generator."""
    (g1, s1), (g2, s2) = e1, e2
    combo = bracket_combo(spec, g1, g2)
    if not combo:
        return None
    if len(combo) != 1:
        raise UnsupportedPatternError(
            f"[x{g1},x{g2}] is not a single generator in {spec.name}")
    gen, coeff = next(iter(combo.items()))
    coeff = coeff * s1 * s2
    if coeff not in (1, -1):
        raise UnsupportedPatternError(
            f"[x{g1},x{g2}] has coefficient {coeff}, expected +-1")
    return (gen, int(coeff))


def _classify_block(spec: LieAlgebraSpec, i: int, j: int):
    """Pick the straightening identity for x_i^t x_j^u (i > j)."""
    a = (i, 1)
    b = (j, 1)
    c = _signed_bracket(spec, a, b)
    if c is None:
        return None
    d_ac = _signed_bracket(spec, a, c)
    d_bc = _signed_bracket(spec, b, c)
    if d_ac is None and d_bc is None:
        return CPR, {"a": a, "b": b, "c": c}
    if d_ac is not None and d_bc is None:
        g = _signed_bracket(spec, a, d_ac)
        if g is None:
            return ACD, {"a": a, "b": b, "c": c, "d": d_ac}
        return CHAIN, {"a": a, "b": b, "c": c, "d": d_ac, "g": g}
    if d_ac is not None and d_bc is not None:
        g = _signed_bracket(spec, a, d_ac)
        if g is not None:
            return CHAIN_BC, {"a": a, "b": b, "c": c, "d": d_ac, "g": g}
        return BCD_ACG, {"a": a, "b": b, "c": c, "d": d_bc, "g": d_ac}
    raise UnsupportedPatternError(
        f"bracket pattern of (x{i}, x{j}) in {spec.name} matches no identity")


def _expand_block(spec: LieAlgebraSpec, i: int, t: int, j: int, u: int):
    """Straighten the block x_i^t x_j^u (i > j) into PBW-ordered power factors."""
    classified = _classify_block(spec, i, j)
    if classified is None:
        return [(Fraction(1), [(j, u), (i, t)])]
    lemma, assignment = classified
    binding = RoleBinding(spec, lemma, assignment)
    check_role_binding(binding)
    terms = LEMMA_TERMS[lemma](t, u)
    return list(_instantiate(binding, terms))


def _normalize_power_word(factors) -> Tuple[Tuple[int, int], ...]:
    out: List[Tuple[int, int]] = []
    for gen, exp in factors:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            out[-1] = (gen, out[-1][1] + exp)
        else:
            out.append((gen, exp))
    return tuple(out)


def product_via_lemmas(spec: LieAlgebraSpec, left: Monomial, right: Monomial) -> Poly:
    """Product computed by composing the straightening identities block by block.

    Mirrors the derivations behind the per-algebra formulas: repeatedly locate
    the leftmost out-of-order adjacent power pair and expand it with whichever
    identity matches the local bracket pattern.
    """
    left = tuple(left)
    right = tuple(right)
    if len(left) != spec.dim or len(right) != spec.dim:
        raise ValueError("monomial length mismatch")
    start = _normalize_power_word(
        [(g, e) for g, e in enumerate(left, start=1)]
        + [(g, e) for g, e in enumerate(right, start=1)])
    state: Dict[Tuple[Tuple[int, int], ...], Fraction] = {start: Fraction(1)}
    finished: Dict[Monomial, Fraction] = {}
    while state:
        nxt: Dict[Tuple[Tuple[int, int], ...], Fraction] = {}
        for word, coeff in state.items():
            pos = next((p for p in range(len(word) - 1) if word[p][0] > word[p + 1][0]), None)
            if pos is None:
                exps = [0] * spec.dim
                for gen, exp in word:
                    exps[gen - 1] += exp
                mono = tuple(exps)
                total = finished.get(mono, Fraction(0)) + coeff
                if total:
                    finished[mono] = total
                elif mono in finished:
                    del finished[mono]
                continue
            (i, t), (j, u) = word[pos], word[pos + 1]
            for c2, factors in _expand_block(spec, i, t, j, u):
                new_word = _normalize_power_word(
                    list(word[:pos]) + list(factors) + list(word[pos + 2:]))
                total = nxt.get(new_word, Fraction(0)) + coeff * c2
                if total:
                    nxt[new_word] = total
                elif new_word in nxt:
                    del nxt[new_word]
        state = nxt
    return Poly(spec.dim, finished)
