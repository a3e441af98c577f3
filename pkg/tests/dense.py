"""Dense-matrix gate oracles (qubit 0 is the most significant tensor factor)."""

import numpy as np

GATES_1Q = {
    "I": np.eye(2),
    "H": np.array([[1, 1], [1, -1]]) / np.sqrt(2),
    "S": np.diag([1, 1j]),
    "SDG": np.diag([1, -1j]),
    "X": np.array([[0, 1], [1, 0]]),
    "Y": np.array([[0, -1j], [1j, 0]]),
    "Z": np.diag([1, -1]),
    "T": np.diag([1, np.exp(1j * np.pi / 4)]),
}


def one_qubit(u, q, n):
    out = np.ones((1, 1))
    for i in range(n):
        out = np.kron(out, u if i == q else np.eye(2))
    return out.astype(complex)


def gate_matrix(gate, qubits, n):
    if gate in GATES_1Q:
        return one_qubit(GATES_1Q[gate], qubits[0], n)
    a, b = qubits
    dim = 2**n
    u = np.zeros((dim, dim), dtype=complex)
    for j in range(dim):
        bits = [(j >> (n - 1 - i)) & 1 for i in range(n)]
        if gate == "CNOT":
            bits[b] ^= bits[a]
            amp = 1
        elif gate == "CZ":
            amp = -1 if bits[a] and bits[b] else 1
        elif gate == "SWAP":
            bits[a], bits[b] = bits[b], bits[a]
            amp = 1
        else:
            raise ValueError(gate)
        k = int("".join(map(str, bits)), 2)
        u[k, j] = amp
    return u


def circuit_matrix(circuit, n):
    u = np.eye(2**n, dtype=complex)
    for gate, *qs in circuit:
        u = gate_matrix(gate, qs, n) @ u
    return u


def apply_op(op, psi):
    """Apply a Pauli to a statevector one tensor factor at a time."""
    n = op.n
    out = psi.reshape([2] * n).astype(complex)
    for q in range(n):
        letter = "I" if not (op.x[q] or op.z[q]) else ("Y" if op.x[q] and op.z[q] else ("X" if op.x[q] else "Z"))
        if letter != "I":
            out = np.moveaxis(np.tensordot(GATES_1Q[letter], out, axes=([1], [q])), 0, q)
    # i^k X^x Z^z differs from the product of letters by i^(k - #Y)
    ny = int(np.sum(op.x & op.z))
    return (1j ** ((op.k - ny) % 4)) * out.reshape(-1)


def stabilizes(ops, psi, atol=1e-10):
    return all(np.allclose(apply_op(op, psi), psi, atol=atol) for op in ops)
