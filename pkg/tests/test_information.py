
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saqec.channels import build_family, complementary, identity_channel, tensor
from saqec.errors import ValidationError
from saqec.information import (
    binary_entropy,
    capacity_value,
    coherent_information,
    entanglement_fidelity,
    entropy,
    info_report,
    maximize_capacity,
    mutual_information,
)
from saqec.numerics import kron, maximally_mixed, pure
from saqec.samples import random_channel, random_density_matrix

import oracles


def test_entropies():
    assert binary_entropy(0.5) == 1.0
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(0.11) == pytest.approx(oracles.h2(0.11), abs=1e-15)
    assert entropy(maximally_mixed(4)) == pytest.approx(2.0)
    assert entropy(pure([1, 2, 3])) == pytest.approx(0.0, abs=1e-12)


def test_identity_channel_report():
    rep = info_report(maximally_mixed(2), identity_channel(2))
    assert rep.S_E == pytest.approx(0.0, abs=1e-12)
    assert rep.I_c == pytest.approx(1.0)
    assert rep.I == pytest.approx(2.0)


def test_depolarizing_mutual_at_maximally_mixed():
    for p in (0.0, 0.1, 0.37, 0.75):
        rep = mutual_information(maximally_mixed(2), build_family("depolarizing", p))
        assert rep.I == pytest.approx(oracles.depolarizing_mutual_full(p), abs=1e-12)


def test_dimension_check():
    with pytest.raises(ValidationError):
        info_report(maximally_mixed(3), build_family("dephasing", 0.1))


@settings(max_examples=50, deadline=None)
@given(st.integers(2, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_information_identities(d, rank, seed):
    ch = random_channel(d, d, rank, seed=seed)
    rho = random_density_matrix(d, seed=seed ^ 0x5A5A)
    rep = info_report(rho, ch)
    assert rep.I == pytest.approx(rep.S_A + rep.I_c, abs=1e-9)
    assert rep.I == pytest.approx(rep.S_B - rep.S_B_given_A, abs=1e-9)
    assert rep.I_c <= rep.I / 2 + 1e-9
    assert rep.I_c <= rep.S_A + 1e-9
    assert rep.I >= -1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_coherent_information_additive_on_products(seed):
    a = random_channel(2, 2, 2, seed=seed)
    b = random_channel(2, 3, 2, seed=seed + 1)
    ra = random_density_matrix(2, seed=seed + 2)
    rb = random_density_matrix(2, seed=seed + 3)
    both = coherent_information(kron(ra, rb), tensor(a, b)).I_c
    assert both == pytest.approx(coherent_information(ra, a).I_c + coherent_information(rb, b).I_c, abs=1e-8)


def test_entanglement_fidelity_depolarizing():
    assert entanglement_fidelity(build_family("depolarizing", 0.3)) == pytest.approx(0.7, abs=1e-12)


@pytest.mark.parametrize("p", [0.0, 0.05, 0.11, 0.3, 0.5])
def test_dephasing_capacities_match_closed_form(p):
    ch = build_family("dephasing", p)
    assert maximize_capacity(ch, "coherent").value == pytest.approx(oracles.dephasing_coherent(p), abs=1e-6)
    assert maximize_capacity(ch, "mutual").value == pytest.approx(oracles.dephasing_mutual_half(p), abs=1e-6)


@pytest.mark.parametrize("p", [0.02, 0.1, 0.15, 0.25, 0.6])
def test_depolarizing_capacities(p):
    ch = build_family("depolarizing", p)
    assert maximize_capacity(ch, "mutual").value == pytest.approx(oracles.depolarizing_mutual_full(p) / 2, abs=1e-6)
    assert maximize_capacity(ch, "coherent").value == pytest.approx(oracles.depolarizing_hashing(p), abs=1e-6)


@pytest.mark.parametrize("p", [0.1, 0.4, 0.7])
def test_erasure_capacities(p):
    ch = build_family("erasure", p)
    assert maximize_capacity(ch, "coherent").value == pytest.approx(max(0.0, 1 - 2 * p), abs=1e-6)
    assert maximize_capacity(ch, "mutual").value == pytest.approx(1 - p, abs=1e-6)


@pytest.mark.parametrize("g", [0.1, 0.3, 0.45, 0.8])
def test_amplitude_damping_capacities(g):
    ch = build_family("amplitude_damping", g)
    assert maximize_capacity(ch, "coherent").value == pytest.approx(oracles.amplitude_damping_coherent(g), abs=1e-5)
    assert maximize_capacity(ch, "mutual").value == pytest.approx(oracles.amplitude_damping_mutual_half(g), abs=1e-5)


def test_maximizer_attains_value_and_is_state():
    ch = build_family("amplitude_damping", 0.3)
    est = maximize_capacity(ch, "mutual", seed=3)
    assert np.trace(est.maximizer).real == pytest.approx(1.0)
    assert capacity_value(est.maximizer, ch, "mutual") == pytest.approx(est.value, abs=1e-12)
    assert est.converged and est.restarts_agree
    assert len(est.restart_values) == est.restarts_used == 5


def test_two_letter_depolarizing_equals_single_letter():
    ch = build_family("depolarizing", 0.1)
    one = maximize_capacity(ch, "coherent").value
    two = maximize_capacity(ch, "coherent", letters=2, restarts=2).value
    assert two == pytest.approx(one, abs=1e-4)


def test_deterministic_under_seed():
    ch = random_channel(3, 3, 2, seed=1)
    a = maximize_capacity(ch, "mutual", seed=5)
    b = maximize_capacity(ch, "mutual", seed=5)
    assert a.value == b.value
    np.testing.assert_array_equal(a.maximizer, b.maximizer)


def test_warm_start_is_used():
    ch = build_family("amplitude_damping", 0.2)
    cold = maximize_capacity(ch, "coherent", restarts=1)
    warm = maximize_capacity(ch, "coherent", restarts=1, warm_start=cold.maximizer)
    assert warm.value >= cold.value - 1e-12
    assert warm.value == pytest.approx(cold.value, abs=1e-6)
    assert warm.iterations <= cold.iterations


def test_invalid_arguments():
    ch = build_family("dephasing", 0.1)
    with pytest.raises(ValidationError):
        maximize_capacity(ch, "holevo")
    with pytest.raises(ValidationError):
        maximize_capacity(ch, letters=3)
    with pytest.raises(ValidationError):
        maximize_capacity(ch, restarts=0)


def test_coherent_never_negative():
    # beyond the hashing point the pure input gives zero
    assert maximize_capacity(build_family("depolarizing", 0.4), "coherent").value == 0.0
    assert maximize_capacity(complementary(build_family("dephasing", 0.1)), "coherent").value >= 0.0
