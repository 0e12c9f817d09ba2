"""The four trinomial families, their conditions, identities and pipelines."""

from .identities import (
    IdentityComponents,
    IdentityReport,
    check_components,
    identity_components,
    identity_report,
    reciprocal_identity,
    verify_identity,
)
from .pipeline import (
    BRANCHES,
    EVAL_PRIME,
    PipelineError,
    PipelineReport,
    homomorphism_check,
    run_resultant_pipeline,
)
from .preimage import closed_form_preimage
from .trinomials import (
    FAMILIES,
    H1_FACTORS,
    CongruenceError,
    ConditionReport,
    TrinomialSpec,
    check_conditions,
    exponents,
    h1_eval,
    trinomial_eval,
)

__all__ = [
    "BRANCHES", "EVAL_PRIME", "FAMILIES", "H1_FACTORS",
    "CongruenceError", "ConditionReport", "IdentityComponents", "IdentityReport",
    "PipelineError", "PipelineReport", "TrinomialSpec",
    "check_components", "check_conditions", "closed_form_preimage", "exponents",
    "h1_eval", "homomorphism_check", "identity_components", "identity_report",
    "reciprocal_identity", "run_resultant_pipeline", "trinomial_eval", "verify_identity",
]
