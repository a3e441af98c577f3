import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from saqec.channels import (
    FAMILIES,
    ChoiState,
    QuantumChannel,
    apply,
    build_family,
    canonicalize,
    channel_action_deviation,
    choi_convert,
    complementary,
    complementary_output,
    compose,
    cptp_deviation,
    identity_channel,
    iid,
    tensor,
)
from saqec.errors import DimensionError, ResourceError, ValidationError
from saqec.information import binary_entropy, entropy, info_report
from saqec.numerics import bell_state, kron, maximally_mixed, pure
from saqec.samples import random_channel, random_density_matrix


@pytest.mark.parametrize("kind", FAMILIES)
@pytest.mark.parametrize("lam", [0.0, 0.13, 0.5, 1.0])
def test_families_are_cptp(kind, lam):
    ch = build_family(kind, lam)
    assert cptp_deviation(ch.kraus) < 1e-12
    out = apply(ch, random_density_matrix(2, seed=4))
    assert np.trace(out).real == pytest.approx(1.0, abs=1e-10)


def test_family_domain_and_name_errors():
    with pytest.raises(ValidationError, match="outside"):
        build_family("depolarizing", 1.2)
    with pytest.raises(ValidationError, match="unknown"):
        build_family("bitflip", 0.1)


def test_depolarizing_zero_is_identity():
    assert channel_action_deviation(build_family("depolarizing", 0.0), identity_channel(2)) < 1e-15


def test_depolarizing_three_quarters_is_completely_depolarizing():
    ch = build_family("depolarizing", 0.75)
    for seed in range(5):
        np.testing.assert_allclose(apply(ch, random_density_matrix(2, seed=seed)), np.eye(2) / 2, atol=1e-12)


def test_dephasing_half_kills_coherences():
    rho = random_density_matrix(2, seed=11)
    out = apply(build_family("dephasing", 0.5), rho)
    np.testing.assert_allclose(out, np.diag(np.diag(rho)), atol=1e-12)


def test_dephasing_on_plus_state():
    p = 0.2
    out = apply(build_family("dephasing", p), pure([1, 1]))
    np.testing.assert_allclose(out, [[0.5, (1 - 2 * p) / 2], [(1 - 2 * p) / 2, 0.5]], atol=1e-12)


def test_amplitude_damping_and_erasure_actions():
    g = 0.3
    out = apply(build_family("amplitude_damping", g), pure([0, 1]))
    np.testing.assert_allclose(out, np.diag([g, 1 - g]), atol=1e-12)
    rho = random_density_matrix(2, seed=2)
    e = apply(build_family("erasure", 0.25), rho)
    np.testing.assert_allclose(e[:2, :2], 0.75 * rho, atol=1e-12)
    assert e[2, 2].real == pytest.approx(0.25)


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply(build_family("dephasing", 0.1), np.eye(3) / 3)


def test_non_cptp_kraus_rejected():
    with pytest.raises(ValidationError, match="trace preserving"):
        QuantumChannel(np.array([np.eye(2) * 0.9]))


def test_choi_of_identity_is_bell_state():
    np.testing.assert_allclose(choi_convert(identity_channel(2)).matrix, bell_state(2), atol=1e-15)


def test_depolarizing_choi_spectrum():
    p = 0.3
    w = np.linalg.eigvalsh(choi_convert(build_family("depolarizing", p)).matrix)
    np.testing.assert_allclose(np.sort(w), np.sort([1 - p, p / 3, p / 3, p / 3]), atol=1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_choi_round_trip(din, dout, rank, seed):
    rank = max(rank, -(-din // dout))
    ch = random_channel(din, dout, rank, seed=seed)
    back = choi_convert(choi_convert(ch))
    assert channel_action_deviation(ch, back) < 1e-8
    assert back.rank <= min(rank, din * dout)


def test_choi_marginal_violation_rejected():
    m = np.diag([1.0, 0, 0, 0]).astype(complex)
    with pytest.raises(ValidationError, match="marginal"):
        choi_convert(ChoiState(2, 2, m))


def test_complementary_of_identity_is_constant():
    c = complementary(identity_channel(2))
    outs = [apply(c, random_density_matrix(2, seed=s)) for s in range(3)]
    for o in outs:
        np.testing.assert_allclose(o, [[1]], atol=1e-12)


def test_complementary_of_dephasing_at_maximally_mixed():
    p = 0.2
    out = apply(complementary(build_family("dephasing", p)), maximally_mixed(2))
    np.testing.assert_allclose(out, np.diag([1 - p, p]), atol=1e-12)
    np.testing.assert_allclose(complementary_output(build_family("dephasing", p), maximally_mixed(2)), out, atol=1e-12)


def test_depolarizing_environment_entropy():
    # S(Phi^c(I/2)) equals the Choi entropy h(p) + p log2 3
    p = 0.17
    env = apply(complementary(build_family("depolarizing", p)), maximally_mixed(2))
    assert entropy(env) == pytest.approx(binary_entropy(p) + p * np.log2(3), abs=1e-10)


def test_double_complement_is_channel():
    ch = random_channel(2, 3, 3, seed=3)
    assert channel_action_deviation(complementary(complementary(ch)), ch) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.integers(2, 3), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_coherent_information_flips_under_complement(d, rank, seed):
    ch = random_channel(d, d, rank, seed=seed)
    rho = random_density_matrix(d, seed=seed + 7)
    assert info_report(rho, ch).I_c == pytest.approx(-info_report(rho, complementary(ch)).I_c, abs=1e-8)


def test_tensor_product_action_and_counts():
    dep = build_family("depolarizing", 0.2)
    both = tensor(dep, identity_channel(2))
    a = random_density_matrix(2, seed=1)
    b = random_density_matrix(2, seed=2)
    np.testing.assert_allclose(apply(both, kron(a, b)), kron(apply(dep, a), b), atol=1e-12)
    assert tensor(dep, dep).rank == 16
    # 64 Kraus operators on 8x8 equal din * dout, so no canonicalization yet
    assert iid(dep, 3).rank == 64
    assert iid(dep, 4).rank <= 256


def test_tensor_resource_limit():
    dep = build_family("depolarizing", 0.2)
    with pytest.raises(ResourceError):
        iid(dep, 9)


def test_compose_dephasing():
    d = build_family("dephasing", 0.1)
    two = compose(d, d)
    # two dephasings compose to dephasing with 1-2p' = (1-2p)^2
    p2 = (1 - (1 - 0.2) ** 2) / 2
    assert channel_action_deviation(canonicalize(two), build_family("dephasing", p2)) < 1e-12
