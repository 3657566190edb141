"""cu-lab: decision procedures, structural constructions, and a
theorem-checking harness for finite positively ordered monoids."""

from .axioms import AxiomCounterexample, check_axiom, check_dim_leq
from .corpus import builtin_from_spec, builtin_model, enumerate_corpus
from .divisibility import (
    check_scale_divisibility,
    is_divisible,
    is_weakly_divisible,
    model_divisible,
    model_weakly_divisible,
    rel_below_ideal,
)
from .glimm import full_elements_filtered, has_property_V, is_ideal_filtered
from .harness import RULES, RULES_BY_ID, run_rules
from .ideals import (
    Ideal,
    enumerate_ideals,
    ideal_generated,
    is_almost_unperforated,
    is_refinement_monoid,
    is_stably_finite,
    latf,
    maximal_divisible_ideals,
    quotient,
)
from .model import (
    FiniteOrderedMonoid,
    ModelDocument,
    canonical_form,
    document_of,
    emit_model,
    infinity_multiple,
    is_full,
    is_isomorphic,
    load_model,
    model_hash,
    parse_model,
    product_model,
    validate,
)
from .witnesses import (
    witness_div_o5,
    witness_ref_o7,
    witness_refinement_ef,
    witness_wkdiv_decomposition,
    witness_wkdiv_pair,
)

__version__ = "0.1.0"
