"""Exact structure constants for enveloping algebras of nilpotent Lie algebras
of dimension at most five, with a closed-form engine and a rewriting oracle."""

from .algebra import (LieAlgebraSpec, NilpotencyProfile, ValidationReport,
                      bracket, builtin, engel_check, lower_central_series,
                      spec_from_json, spec_to_json, validate)
from .closedform import (ALGEBRA_IDS, RoleBinding, StraighteningTerm, apply_roles,
                         cpr_terms, divided_power_coeff, lemma_acd_terms,
                         lemma_bcd_acg_terms, lemma_chain_bc_terms,
                         lemma_chain_terms, product, product_via_lemmas)
from .oracle import oracle_product, straighten_word
from .poly import Poly, total_degree, unit_monomial
from .table import export, generate_table, import_json, monomials_upto

__all__ = [
    "ALGEBRA_IDS", "LieAlgebraSpec", "NilpotencyProfile", "Poly", "RoleBinding",
    "StraighteningTerm", "ValidationReport", "apply_roles", "bracket", "builtin",
    "cpr_terms", "divided_power_coeff", "engel_check", "export", "generate_table",
    "import_json", "lemma_acd_terms", "lemma_bcd_acg_terms", "lemma_chain_bc_terms",
    "lemma_chain_terms", "lower_central_series", "monomials_upto", "oracle_product",
    "product", "product_via_lemmas", "spec_from_json", "spec_to_json",
    "straighten_word", "total_degree", "unit_monomial", "validate",
]
