import numpy as np
import pytest

from saqec.errors import ValidationError
from saqec.stabilizer.codes import CODE_NAMES, build_code, code_from_strings, correlator_group, trivial_code
from saqec.stabilizer.pauli import pauli
from saqec.stabilizer.tableau import expectation

# (n, k, distance) of the named codes
PARAMS = {"five_qubit": (5, 1, 3), "steane": (7, 1, 3), "shor": (9, 1, 3), "reed_muller_15": (15, 1, 3)}


@pytest.mark.parametrize("name", CODE_NAMES)
def test_named_codes_have_expected_parameters(name):
    code = build_code(name)
    n, k, _ = PARAMS[name]
    assert (code.n, code.k) == (n, k)
    assert len(code.stabilizers) == n - k


@pytest.mark.parametrize("name", ["five_qubit", "steane"])
def test_logical_operators_have_distance_weight_representative(name):
    # brute force over stabilizer products: the minimum weight of a logical X
    code = build_code(name)
    _, _, d = PARAMS[name]
    best = code.n
    m = len(code.stabilizers)
    for mask in range(2**m):
        p = code.logical_x[0]
        for i in range(m):
            if mask >> i & 1:
                p = p * code.stabilizers[i]
        best = min(best, p.weight)
    assert best == d


def test_validation_errors():
    with pytest.raises(ValidationError, match="commute"):
        code_from_strings(["XI", "ZI"], [], [])
    with pytest.raises(ValidationError, match="anticommute"):
        code_from_strings(["ZZI", "IZZ"], ["XXX"], ["XXX"])
    with pytest.raises(ValidationError, match="commute with stabilizers"):
        code_from_strings(["ZZI", "IZZ"], ["XII"], ["ZII"])
    with pytest.raises(ValidationError):
        build_code("toric")
    with pytest.raises(ValidationError):
        code_from_strings(["ZZ", "ZZ"], [], [])


def test_trivial_and_tensor():
    t = trivial_code(3)
    assert t.k == 3 and not t.stabilizers
    both = build_code("five_qubit").tensor(trivial_code(1))
    assert (both.n, both.k, len(both.stabilizers)) == (6, 2, 4)


def test_correlator_group_signs():
    code = build_code("steane")
    zero = correlator_group(code)
    one = correlator_group(code, frame=[-1])
    plus = correlator_group(code, basis="X")
    assert expectation(zero, pauli("Z" * 7)) == 1
    assert expectation(one, pauli("Z" * 7)) == -1
    assert expectation(plus, pauli("X" * 7)) == 1
    assert expectation(plus, pauli("Z" * 7)) == 0
    with pytest.raises(ValidationError):
        correlator_group(code, frame=[2])
    with pytest.raises(ValidationError):
        correlator_group(code, basis="Y")


def test_logical_zero_of_steane_is_even_hamming_codewords():
    # |0_L> is the uniform superposition over the even-weight words of the [7,4] Hamming code
    psi = correlator_group(build_code("steane")).to_statevector()
    support = {i for i, a in enumerate(psi) if abs(a) > 1e-9}
    assert len(support) == 8
    assert all(bin(i).count("1") % 2 == 0 for i in support)
    vals = np.array([psi[i] for i in support])
    np.testing.assert_allclose(np.abs(vals), 1 / np.sqrt(8))
