"""Exact hull descriptions and cutting planes for two-monomial sets with a cardinality constraint."""
from .model import Instance, Point, enumerate_points, new_instance
from .ineqs import LinIneq, all_family_ineqs, base_system, family_ineq
from .separation import separate_all
from .solver import optimize, optimize_general, new_general_instance

__all__ = [
    "Instance", "Point", "enumerate_points", "new_instance", "LinIneq", "all_family_ineqs",
    "base_system", "family_ineq", "separate_all", "optimize", "optimize_general",
    "new_general_instance",
]
__version__ = "0.1.0"
