"""q-deformed commutation relations: symbolic Wick algebra, truncated Fock
representations, single-mode analytics and the boundary cases |q| = 1."""

from ._core import (
    BudgetExceeded,
    ParseError,
    StateViolation,
    acceptance,
    beta_bounds,
    clifford_rep,
    coherent_theta,
    epsilon,
    epsilon_threshold,
    expectation,
    export_fock,
    fock_rep,
    normal_form,
    shift_norm,
    verify,
)

__all__ = [
    "BudgetExceeded",
    "ParseError",
    "StateViolation",
    "acceptance",
    "beta_bounds",
    "clifford_rep",
    "coherent_theta",
    "epsilon",
    "epsilon_threshold",
    "expectation",
    "export_fock",
    "fock_rep",
    "normal_form",
    "shift_norm",
    "verify",
]
