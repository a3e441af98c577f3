"""Pauli algebra, stabilizer tableaux, code constructors and graph states."""

from .codes import CODE_NAMES, StabilizerCode, build_code, code_from_strings, correlator_group, trivial_code
from .graph import GraphState, graph_state_in_orbit, graph_tableau, local_complement, ring_adjacency, to_graph_state
from .pauli import PauliOperator, apply_pauli, commutation_matrix, pauli, paulis, symplectic_commute
from .tableau import (
    Tableau,
    apply_circuit,
    canonical_rows,
    conjugate_paulis,
    expectation,
    inverse_circuit,
    membership,
    same_group,
    stabilizer_state_vector,
    tableau_apply,
    tableau_measure,
)

__all__ = [
    "CODE_NAMES",
    "GraphState",
    "PauliOperator",
    "StabilizerCode",
    "Tableau",
    "apply_circuit",
    "apply_pauli",
    "build_code",
    "canonical_rows",
    "code_from_strings",
    "commutation_matrix",
    "conjugate_paulis",
    "correlator_group",
    "expectation",
    "graph_state_in_orbit",
    "graph_tableau",
    "inverse_circuit",
    "local_complement",
    "membership",
    "pauli",
    "paulis",
    "ring_adjacency",
    "same_group",
    "stabilizer_state_vector",
    "symplectic_commute",
    "tableau_apply",
    "tableau_measure",
    "to_graph_state",
    "trivial_code",
]
