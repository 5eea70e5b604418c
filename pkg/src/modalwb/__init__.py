"""modalwb: model checking for epistemic might-logics over information states.

The package evaluates formulas of a propositional language with an
epistemic possibility operator and indexed knowledge operators, under
two semantics: truth at world-state pairs over classical models, and a
bilateral support/rejection semantics over bounded models. Consequence
questions are settled by exhaustive enumeration of finite models up to
a bound, with counter-model minimization and a built-in fact suite.
"""

from .checker import (
    Bound,
    Claim,
    check_claims_file,
    find_countermodel,
    isomorphic,
    run_claim,
    run_fact_suite,
)
from .domain import KVariant, accepts, entails_acceptance, entails_truth, truth_at
from .models import (
    BoundedModel,
    ClassicalModel,
    InformationModel,
    accessible_refinements,
    enumerate_bounded_models,
    enumerate_classical_models,
    enumerate_information_models,
    is_accessible,
    is_internally_coherent,
    load_model,
    save_model,
    validate,
)
from .normal_form import NormalForm, normal_form, verify_normal_form
from .results import CounterExample, ValidUpTo
from .stable import (
    Verdict,
    assertorically_equivalent,
    coherent_entails,
    rejects,
    rejects_K_pointwise,
    supports,
    supports_K_pointwise,
    verdict,
)
from .syntax import (
    And,
    Atom,
    Formula,
    Know,
    Might,
    Neg,
    ParseError,
    is_diamond_restricted,
    parse,
    print_formula,
)

__version__ = "0.1.0"
