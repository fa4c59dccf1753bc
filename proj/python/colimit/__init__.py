"""Homotopy formulas for tuples of normal subgroups, evaluated on
finite catalog groups and free nilpotent truncations."""

from ._colimit import (
    BudgetError,
    HypothesisError,
    InputError,
    basis_size,
    boundary_kernel,
    catalog_names,
    catalog_order,
    h1,
    hopf_element,
    is_connected,
    normal_subgroup_orders,
    pi2,
    pi_n,
    run,
    wu,
    wu_membership,
)

__all__ = [
    "BudgetError",
    "HypothesisError",
    "InputError",
    "basis_size",
    "boundary_kernel",
    "catalog_names",
    "catalog_order",
    "h1",
    "hopf_element",
    "is_connected",
    "normal_subgroup_orders",
    "pi2",
    "pi_n",
    "run",
    "wu",
    "wu_membership",
]
