"""Random states, channels and stabilizer states for property tests and demos."""

from __future__ import annotations

import numpy as np
from scipy.stats import unitary_group

from .channels import QuantumChannel
from .errors import ValidationError
from .stabilizer.tableau import Tableau, apply_circuit


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_density_matrix(d: int, rank: int | None = None, seed=None) -> np.ndarray:
    """Ginibre-distributed density matrix of the given rank (full rank by default)."""
    rng = _rng(seed)
    r = d if rank is None else rank
    g = rng.normal(size=(d, r)) + 1j * rng.normal(size=(d, r))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_pure_state(d: int, seed=None) -> np.ndarray:
    return random_density_matrix(d, 1, seed)


def random_unitary(d: int, seed=None) -> np.ndarray:
    return unitary_group.rvs(d, random_state=_rng(seed)) if d > 1 else np.ones((1, 1), dtype=complex)


def random_channel(din: int, dout: int | None = None, rank: int = 2, seed=None) -> QuantumChannel:
    """Kraus operators cut from a Haar-random isometry ``C^din -> C^dout (x) C^rank``."""
    rng = _rng(seed)
    dout = din if dout is None else dout
    if rank * dout < din:
        raise ValidationError(f"an isometry needs rank * dout >= din, got {rank} * {dout} < {din}")
    u = random_unitary(dout * rank, rng)
    v = u[:, :din]  # isometry, rows indexed by (kraus, out)
    return QuantumChannel(v.reshape(rank, dout, din), name=f"random({din}->{dout}, r={rank})")


def random_clifford_circuit(n: int, depth: int, seed=None) -> list[tuple]:
    rng = _rng(seed)
    circ = []
    for _ in range(depth):
        if n > 1 and rng.random() < 0.4:
            a, b = rng.choice(n, size=2, replace=False)
            circ.append((str(rng.choice(["CNOT", "CZ"])), int(a), int(b)))
        else:
            circ.append((str(rng.choice(["H", "S", "SDG", "X", "Y", "Z"])), int(rng.integers(n))))
    return circ


def random_tableau(n: int, depth: int | None = None, seed=None) -> Tableau:
    """Stabilizer state reached from ``|0..0>`` by a random Clifford circuit."""
    rng = _rng(seed)
    depth = 6 * n * max(1, int(np.ceil(np.log2(n + 1)))) if depth is None else depth
    return apply_circuit(Tableau.zero_state(n), random_clifford_circuit(n, depth, rng))
