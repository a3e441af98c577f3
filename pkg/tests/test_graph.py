import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saqec.errors import ValidationError
from saqec.samples import random_tableau
from saqec.stabilizer.codes import build_code, correlator_group
from saqec.stabilizer.graph import (
    complete_adjacency,
    graph_state_in_orbit,
    graph_tableau,
    local_complement,
    ring_adjacency,
    star_adjacency,
    to_graph_state,
)
from saqec.stabilizer.tableau import Tableau, same_group

from dense import circuit_matrix


def graph_vector(adj):
    """Direct amplitude formula: (-1)^(#edges inside the support of x) / sqrt(2^n)."""
    a = np.asarray(adj)
    n = a.shape[0]
    psi = np.empty(2**n)
    for idx in range(2**n):
        x = np.array([(idx >> (n - 1 - q)) & 1 for q in range(n)])
        psi[idx] = (-1) ** (int(x @ np.triu(a) @ x) % 2)
    return psi / np.sqrt(2**n)


def same_ray(a, b):
    return abs(abs(np.vdot(a, b)) - 1) < 1e-9


@pytest.mark.parametrize("adj", [ring_adjacency(4), star_adjacency(4), complete_adjacency(3)])
def test_graph_tableau_matches_amplitude_formula(adj):
    assert same_ray(graph_tableau(adj).to_statevector(), graph_vector(adj))


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6), st.integers(0, 2**32 - 1))
def test_conversion_rebuilds_the_state(n, seed):
    t = random_tableau(n, seed=seed)
    g = to_graph_state(t)
    assert same_group(g.source_tableau().generators, t.generators)
    # independent check with dense gates on the amplitude-formula graph vector
    psi = circuit_matrix(g.circuit(), n) @ graph_vector(g.adjacency)
    assert same_ray(psi, t.to_statevector())
    assert all(len(w) <= 3 for w in g.local_cliffords)


def test_ghz_is_a_star():
    ghz = Tableau.from_strings(["XXX", "ZZI", "IZZ"])
    g = to_graph_state(ghz)
    assert sorted(g.adjacency.sum(axis=0)) == [1, 1, 2]


def test_local_complement_involution_and_errors():
    a = star_adjacency(4)
    assert np.array_equal(local_complement(a, 0), complete_adjacency(4))
    assert np.array_equal(local_complement(local_complement(a, 0), 0), a)
    with pytest.raises(ValidationError):
        graph_tableau(np.ones((2, 2)))


def test_five_qubit_code_state_is_a_ring():
    t = correlator_group(build_code("five_qubit"))
    g = graph_state_in_orbit(t, ring_adjacency(5))
    assert g is not None
    assert np.array_equal(g.adjacency, ring_adjacency(5))
    psi = circuit_matrix(g.circuit(), 5) @ graph_vector(g.adjacency)
    assert same_ray(psi, t.to_statevector())


def test_orbit_search_returns_none_for_unreachable_graph():
    # a product state cannot be turned into a connected graph by local Cliffords
    t = Tableau.zero_state(3)
    assert graph_state_in_orbit(t, star_adjacency(3)) is None
