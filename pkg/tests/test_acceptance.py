"""Acceptance criteria 1-9 at their stated sizes and tolerances.

Each test carries a ``criterion_N`` marker; the terminal summary prints one
PASS/FAIL line per criterion (see conftest.py).
"""

import itertools
import subprocess
import sys
import time
from pathlib import Path

import numpy as np
import pytest

from saqec.channels import apply, build_family, complementary, tensor
from saqec.code_switch import encoded_state, rm15_steane_spec, switch, transversal_gate_check
from saqec.information import info_report, maximize_capacity
from saqec.numerics import fidelity, kron, partial_trace
from saqec.qec_core import dense_code_from_stabilizer, kl_check, pauli_errors, petz_map
from saqec.sa_decoder import exact_failure_probability, exhaustive_eval, monte_carlo, standard_table, state_adaptive_table
from saqec.samples import random_channel, random_density_matrix, random_tableau
from saqec.stabilizer.codes import build_code, correlator_group
from saqec.stabilizer.graph import graph_state_in_orbit, ring_adjacency, to_graph_state
from saqec.stabilizer.pauli import pauli
from saqec.stabilizer.tableau import expectation, same_group

import oracles

SPECS = Path(__file__).resolve().parents[1] / "demos" / "specs"


def _entropy(m):
    w = np.linalg.eigvalsh((m + m.conj().T) / 2)
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


@pytest.mark.criterion_1
def test_petz_exactness_500_pairs():
    rng = np.random.default_rng(2024)
    start = time.perf_counter()
    worst = 1.0
    for _ in range(500):
        d = int(rng.integers(2, 9))
        dout = int(rng.integers(2, 9))
        rank = int(rng.integers(1, d + 1))
        k = max(int(rng.integers(1, 4)), -(-d // dout))
        rho = random_density_matrix(d, rank, rng)
        ch = random_channel(d, dout, k, rng)
        worst = min(worst, fidelity(apply(petz_map(rho, ch), apply(ch, rho)), rho))
    elapsed = time.perf_counter() - start
    assert worst >= 1 - 1e-8
    assert elapsed < 60


@pytest.mark.criterion_2
@pytest.mark.parametrize("p", np.linspace(0, 1, 11).round(10).tolist())
def test_dephasing_capacity_closed_forms(p):
    ch = build_family("dephasing", p)
    q = maximize_capacity(ch, "coherent", seed=1).value
    qsa = maximize_capacity(ch, "mutual", seed=1).value
    assert q == pytest.approx(1 - oracles.h2(p), abs=1e-4)
    assert qsa == pytest.approx(1 - oracles.h2(p) / 2, abs=1e-4)


@pytest.mark.criterion_2
@pytest.mark.parametrize("p", [0.0, 0.05, 0.2, 0.5, 0.75, 1.0])
def test_depolarizing_mutual_at_maximally_mixed(p):
    rep = info_report(np.eye(2) / 2, build_family("depolarizing", p))
    assert rep.I == pytest.approx(oracles.depolarizing_mutual_full(p), abs=1e-6)


@pytest.mark.criterion_3
def test_thresholds():
    from saqec.threshold import find_threshold

    assert find_threshold("dephasing", "coherent_1letter").lambda_star == pytest.approx(0.5, abs=1e-4)
    dep_c = find_threshold("depolarizing", "coherent_1letter")
    assert dep_c.lambda_star == pytest.approx(0.18929, abs=5e-4)
    assert dep_c.lambda_star == pytest.approx(oracles.hashing_threshold(), abs=5e-4)
    assert find_threshold("depolarizing", "mutual_half").lambda_star == pytest.approx(0.75, abs=1e-4)
    for fam in ("depolarizing", "dephasing", "amplitude_damping", "erasure"):
        c = find_threshold(fam, "coherent_1letter")
        m = find_threshold(fam, "mutual_half", allow_boundary=True)
        assert m.lambda_star >= c.lambda_star, fam


@pytest.mark.criterion_4
def test_knill_laflamme():
    for name, n in (("five_qubit", 5), ("steane", 7)):
        rep = kl_check(dense_code_from_stabilizer(build_code(name)), pauli_errors(n, 1))
        assert rep.exact and rep.residual < 1e-8
        np.testing.assert_allclose(rep.c, np.eye(3 * n + 1), atol=1e-8)
    shor = kl_check(dense_code_from_stabilizer(build_code("shor")), [pauli("ZIIIIIIII"), pauli("IZIIIIIII")])
    assert shor.degeneracy_rank == 1
    five = dense_code_from_stabilizer(build_code("five_qubit"))
    e1, e2 = _weight_two_pair_hiding_a_logical(build_code("five_qubit"))
    assert e1.weight == e2.weight == 2
    assert not kl_check(five, [e1, e2]).exact


def _weight_two_pair_hiding_a_logical(code):
    """Two weight-2 Paulis whose product is a weight-3 logical operator."""
    stabs = code.stabilizers
    for mask in range(2 ** len(stabs)):
        op = code.logical_x[0]
        for i, s in enumerate(stabs):
            if mask >> i & 1:
                op = op * s
        if op.weight == 3:
            break
    text = str(op).lstrip("+-i")
    a, b, c = [q for q, ch in enumerate(text) if ch != "I"]
    # split the middle letter: M N = L_b up to phase, with M, N both non-identity
    m = next(x for x in "XYZ" if x != text[b])
    n = next(x for x in "XYZ" if x not in (m, text[b]))
    first, second = ["I"] * code.n, ["I"] * code.n
    first[a], first[b] = text[a], m
    second[b], second[c] = n, text[c]
    return pauli("".join(first)), pauli("".join(second))


@pytest.mark.criterion_5
def test_state_adaptive_correctability():
    start = time.perf_counter()
    code = build_code("five_qubit")
    std, sa = standard_table(code), state_adaptive_table(code)
    assert exhaustive_eval(sa).correctable_count == 1024
    failing = set(exhaustive_eval(std).failing_errors)
    # every weight-2 Pauli on any pair of qubits
    for qs in itertools.combinations(range(5), 2):
        for a, b in itertools.product("XYZ", repeat=2):
            letters = ["I"] * 5
            letters[qs[0]], letters[qs[1]] = a, b
            assert "".join(letters) in failing
    p = 0.1
    exact = exact_failure_probability(std, p)
    r_std, r_sa = monte_carlo([std, sa], p, 0.0, 100_000, seed=5)
    sigma = np.sqrt(exact * (1 - exact) / r_std.trials)
    assert abs(r_std.logical_error_rate - exact) <= 3 * sigma
    assert r_sa.failures == 0
    assert time.perf_counter() - start < 120


@pytest.mark.criterion_6
def test_information_identities_1000_pairs():
    rng = np.random.default_rng(6)
    for _ in range(1000):
        d = int(rng.integers(2, 5))
        dout = int(rng.integers(2, 5))
        k = max(int(rng.integers(1, 4)), -(-d // dout))
        rho = random_density_matrix(d, int(rng.integers(1, d + 1)), rng)
        ch = random_channel(d, dout, k, rng)
        rep = info_report(rho, ch)
        # independent oracle: S(R) + S(B) - S(RB) on a purification |psi>_{AR}
        w, v = np.linalg.eigh(rho)
        psi = sum(np.sqrt(max(w[i], 0)) * np.kron(v[:, i], np.eye(d)[i]) for i in range(d))
        joint = np.outer(psi, psi.conj())
        out = sum(np.kron(kk, np.eye(d)) @ joint @ np.kron(kk, np.eye(d)).conj().T for kk in ch.kraus)
        s_b = _entropy(partial_trace(out, [dout, d], [0]))
        s_r = _entropy(partial_trace(out, [dout, d], [1]))
        mutual = s_r + s_b - _entropy(out)
        assert rep.I == pytest.approx(mutual, abs=1e-9)
        assert rep.I == pytest.approx(rep.S_A + rep.I_c, abs=1e-9)
        assert rep.I == pytest.approx(rep.S_B - rep.S_B_given_A, abs=1e-9)
        assert rep.I_c <= rep.I / 2 + 1e-9
        assert info_report(rho, complementary(ch)).I_c == pytest.approx(-rep.I_c, abs=1e-8)
    # additivity on products
    for _ in range(50):
        a, b = random_channel(2, 2, 2, rng), random_channel(2, 2, 2, rng)
        ra, rb = random_density_matrix(2, seed=rng), random_density_matrix(2, seed=rng)
        both = info_report(kron(ra, rb), tensor(a, b))
        assert both.I_c == pytest.approx(info_report(ra, a).I_c + info_report(rb, b).I_c, abs=1e-8)
        assert both.I == pytest.approx(info_report(ra, a).I + info_report(rb, b).I, abs=1e-8)


@pytest.mark.criterion_7
def test_graph_state_conversion():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        n = int(rng.integers(1, 13))
        t = random_tableau(n, seed=rng)
        g = to_graph_state(t)
        assert same_group(g.source_tableau().generators, t.generators)
    zero = correlator_group(build_code("five_qubit"))
    ring = graph_state_in_orbit(zero, ring_adjacency(5))
    assert ring is not None
    assert np.array_equal(ring.adjacency, ring_adjacency(5))
    assert same_group(ring.source_tableau().generators, zero.generators)


@pytest.mark.criterion_8
def test_code_switching_and_transversal_gates():
    start = time.perf_counter()
    spec = rm15_steane_spec()
    rng = np.random.default_rng(8)
    lx, lz = spec.logical_x[0], spec.logical_z[0]
    for side, (a, b) in (("a", ("a_to_b", "b_to_a")), ("b", ("b_to_a", "a_to_b"))):
        for basis in ("Z", "X"):
            for sign in (1, -1):
                st0 = encoded_state(spec.code(side), basis, sign)
                before = (expectation(st0, lx), expectation(st0, lz))
                st1, _ = switch(st0, spec, a, rng=rng)
                assert (expectation(st1, lx), expectation(st1, lz)) == before
                st2, _ = switch(st1, spec, b, rng=rng)
                assert (expectation(st2, lx), expectation(st2, lz)) == before
    t = transversal_gate_check("reed_muller_15", "T")
    assert t.verdict in ("logical T", "logical T^-1")
    assert max(t.overlaps.values()) >= 1 - 1e-9
    for gate in ("H", "S", "CNOT"):
        assert transversal_gate_check("steane", gate).preserved
        assert transversal_gate_check("steane", gate).verdict.startswith("logical")
    assert transversal_gate_check("steane", "T").verdict == "not transversal"
    assert time.perf_counter() - start < 180


@pytest.mark.criterion_9
@pytest.mark.parametrize("path", sorted(SPECS.glob("*.json")), ids=lambda p: p.stem)
@pytest.mark.parametrize("fmt", ["json", "csv"])
def test_cli_outputs_are_byte_identical(tmp_path, path, fmt):
    command = path.stem.split("_")[0]
    outs = []
    for i in range(2):
        out = tmp_path / f"run{i}.{fmt}"
        proc = subprocess.run([sys.executable, "-m", "saqec.cli", command, "--spec", str(path), "--seed", "13",
                               "--format", fmt, "--out", str(out)], capture_output=True, text=True)
        assert proc.returncode == 0, proc.stdout + proc.stderr
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] and outs[0]
