"""Exact cyclic cohomology of graded algebras and Hopf actions."""

from ._hopfcyc import (
    ScenarioError,
    WindowTooSmall,
    builtin_algebras,
    builtin_hopf_algebras,
    builtin_lie_algebras,
    check_cyclic_axioms,
    check_dga,
    check_operator_identities,
    format_scenario,
    hc,
    hh,
    hp,
    run_scenario,
    verify_certificate,
    weil_cohomology,
)

__all__ = [
    "ScenarioError",
    "WindowTooSmall",
    "builtin_algebras",
    "builtin_hopf_algebras",
    "builtin_lie_algebras",
    "check_cyclic_axioms",
    "check_dga",
    "check_operator_identities",
    "format_scenario",
    "hc",
    "hh",
    "hp",
    "run_scenario",
    "verify_certificate",
    "weil_cohomology",
]
