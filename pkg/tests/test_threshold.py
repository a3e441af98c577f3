import pytest

from saqec.errors import BracketError, ValidationError
from saqec.threshold import evaluate, find_threshold, sweep

import oracles


def test_dephasing_coherent_threshold():
    res = find_threshold("dephasing", "coherent_1letter")
    assert res.lambda_star == pytest.approx(0.5, abs=1e-4)
    assert res.converged and not res.boundary


def test_depolarizing_coherent_threshold_is_hashing_point():
    res = find_threshold("depolarizing", "coherent_1letter")
    assert res.lambda_star == pytest.approx(oracles.hashing_threshold(), abs=5e-4)


def test_depolarizing_mutual_threshold():
    res = find_threshold("depolarizing", "mutual_half")
    assert res.lambda_star == pytest.approx(0.75, abs=1e-4)


@pytest.mark.parametrize("family", ["amplitude_damping", "erasure"])
def test_coherent_threshold_at_one_half(family):
    # both channels are degradable/antidegradable exactly at 1/2
    assert find_threshold(family, "coherent_1letter").lambda_star == pytest.approx(0.5, abs=1e-3)


def test_boundary_handling():
    with pytest.raises(BracketError):
        find_threshold("dephasing", "mutual_half")
    res = find_threshold("dephasing", "mutual_half", allow_boundary=True)
    assert res.boundary and res.lambda_star == 0.5
    with pytest.raises(BracketError):
        find_threshold("depolarizing", "coherent_1letter", bracket=(0.3, 0.5))


def test_argument_checks():
    with pytest.raises(ValidationError):
        find_threshold("bitflip", "coherent_1letter")
    with pytest.raises(ValidationError):
        find_threshold("dephasing", "capacity")
    with pytest.raises(ValidationError):
        find_threshold("dephasing", "coherent_1letter", bracket=(0.2, 1.5))
    with pytest.raises(ValidationError):
        find_threshold("dephasing", "coherent_1letter", tol=0)


@pytest.mark.parametrize("family", ["depolarizing", "dephasing", "amplitude_damping", "erasure"])
def test_mutual_threshold_not_below_coherent(family):
    c = find_threshold(family, "coherent_1letter", tol=1e-3)
    m = find_threshold(family, "mutual_half", tol=1e-3, allow_boundary=True)
    assert m.lambda_star >= c.lambda_star


def test_sweep_matches_closed_forms():
    grid = [0.0, 0.1, 0.3]
    rows = sweep("dephasing", "mutual_half", grid)
    assert [r.lam for r in rows] == grid
    for r in rows:
        assert r.value == pytest.approx(oracles.dephasing_mutual_half(r.lam), abs=1e-4)
    threaded = sweep("dephasing", "mutual_half", grid, threads=3)
    assert threaded == rows
    with pytest.raises(ValidationError):
        sweep("dephasing", "mutual_half", [1.2])


def test_evaluate_amplitude_damping_against_oracle():
    est = evaluate("amplitude_damping", "coherent_1letter", 0.2)
    assert est.value == pytest.approx(oracles.amplitude_damping_coherent(0.2), abs=1e-4)
