"""Hamiltonian paths in hypercubes with faulty edges."""

from .construct import (
    ham_path_avoiding_edge,
    ham_path_fault_free,
    ham_path_through_edge,
    spanning_2path,
    spanning_3path_minus_edge,
    spanning_k_path,
)
from .engine import SolveTrace, base_solve, ham_path_laceable
from .errors import ConditionViolated, ConstructionFailed, ContractViolation, Inadmissible, NotFound, SameParity
from .faults import FaultSet, SplitView, check_conditions, choose_direction, fault_bound, separating_direction, split
from .oracle import InstanceSpec, SearchBudget, exhaustive_ham_path, exhaustive_spanning_k, random_instance
from .paths import verify_hamiltonian_path, verify_spanning_k_path

__all__ = [
    "ConditionViolated", "ConstructionFailed", "ContractViolation", "FaultSet", "Inadmissible",
    "InstanceSpec", "NotFound", "SameParity", "SearchBudget", "SolveTrace", "SplitView",
    "base_solve", "check_conditions", "choose_direction", "exhaustive_ham_path", "exhaustive_spanning_k",
    "fault_bound", "ham_path_avoiding_edge", "ham_path_fault_free", "ham_path_laceable",
    "ham_path_through_edge", "random_instance", "separating_direction", "spanning_2path",
    "spanning_3path_minus_edge", "spanning_k_path", "split", "verify_hamiltonian_path",
    "verify_spanning_k_path",
]
