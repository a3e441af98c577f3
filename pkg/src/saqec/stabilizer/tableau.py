"""Stabilizer-state tableaux with exact sign tracking.

A :class:`Tableau` holds ``n`` independent commuting Hermitian Pauli
generators on ``n`` qubits.  All operations return new tableaux.  Row data is
kept as a symplectic bit matrix ``(x | z)`` plus a ``Z_4`` phase column in the
``i**k X^x Z^z`` convention of :mod:`.pauli`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .. import gf2
from ..errors import DimensionError, ValidationError
from .pauli import PauliOperator, apply_pauli, commutation_matrix

SINGLE_QUBIT_GATES = ("H", "S", "SDG", "X", "Y", "Z", "I")
TWO_QUBIT_GATES = ("CNOT", "CZ", "SWAP")
GATE_INVERSES = {"H": "H", "S": "SDG", "SDG": "S", "X": "X", "Y": "Y", "Z": "Z", "I": "I",
                 "CNOT": "CNOT", "CZ": "CZ", "SWAP": "SWAP"}


# ---------------------------------------------------------------------------
# row-level helpers shared by tableaux, codes and decoders


def rows_of(ops: Sequence[PauliOperator]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    ops = list(ops)
    if not ops:
        raise ValidationError("need at least one Pauli operator")
    n = ops[0].n
    if any(p.n != n for p in ops):
        raise DimensionError("Pauli operators act on different numbers of qubits")
    xs = np.array([p.x for p in ops], dtype=np.uint8)
    zs = np.array([p.z for p in ops], dtype=np.uint8)
    ks = np.array([p.k for p in ops], dtype=np.int64)
    return xs, zs, ks


def ops_of(xs, zs, ks) -> list[PauliOperator]:
    return [PauliOperator(x, z, k) for x, z, k in zip(xs, zs, ks)]


def _rowmul(xs, zs, ks, i, j):
    """row_i <- row_i * row_j (in place)."""
    ks[i] = (ks[i] + ks[j] + 2 * int(np.dot(zs[i].astype(np.int64), xs[j]))) % 4
    xs[i] ^= xs[j]
    zs[i] ^= zs[j]


def canonical_rows(ops: Sequence[PauliOperator]) -> list[PauliOperator]:
    """Row-reduced generating set of the group generated by commuting ``ops``.

    The reduced form (bits and phases) depends only on the group, so two
    commuting generating sets describe the same group iff their canonical rows
    agree.  Dependent generators are dropped.
    """
    xs, zs, ks = rows_of(ops)
    xs, zs, ks = xs.copy(), zs.copy(), ks.copy()
    m, n = xs.shape
    r = 0
    for c in range(2 * n):
        col = xs[:, c] if c < n else zs[:, c - n]
        nz = [i for i in range(r, m) if col[i]]
        if not nz:
            continue
        p = nz[0]
        if p != r:
            xs[[r, p]] = xs[[p, r]]
            zs[[r, p]] = zs[[p, r]]
            ks[[r, p]] = ks[[p, r]]
        col = xs[:, c] if c < n else zs[:, c - n]
        for i in range(m):
            if i != r and col[i]:
                _rowmul(xs, zs, ks, i, r)
        r += 1
        if r == m:
            break
    return ops_of(xs[:r], zs[:r], ks[:r])


def same_group(a: Sequence[PauliOperator], b: Sequence[PauliOperator]) -> bool:
    ca, cb = canonical_rows(a), canonical_rows(b)
    return len(ca) == len(cb) and all(p == q for p, q in zip(ca, cb))


def group_product(ops: Sequence[PauliOperator], coeffs) -> PauliOperator:
    out = PauliOperator.identity(ops[0].n)
    for p, c in zip(ops, coeffs):
        if c:
            out = out * p
    return out


def membership(ops: Sequence[PauliOperator], p: PauliOperator) -> int:
    """Return +1 if ``p`` is in the group, -1 if ``-p`` is, 0 if neither (mod phase check first).

    A return of 2 means ``p`` is in the group only up to a factor of +-i,
    which cannot happen for Hermitian ``p``.
    """
    mat = np.array([q.vector for q in ops], dtype=np.uint8)
    c = gf2.solve(mat.T, p.vector)
    if c is None:
        return 0
    q = group_product(ops, c)
    diff = (p.k - q.k) % 4
    return {0: 1, 2: -1}.get(diff, 2)


# ---------------------------------------------------------------------------
# tableau


@dataclass(frozen=True, eq=False)
class Tableau:
    """Stabilizer state on ``n`` qubits described by ``n`` generators."""

    xs: np.ndarray
    zs: np.ndarray
    ks: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=np.uint8) & 1
        zs = np.asarray(self.zs, dtype=np.uint8) & 1
        ks = np.asarray(self.ks, dtype=np.int64) % 4
        if xs.ndim != 2 or xs.shape != zs.shape or xs.shape[0] != xs.shape[1] or ks.shape != (xs.shape[0],):
            raise ValidationError(f"tableau needs n x n bit blocks and n phases, got {xs.shape}, {zs.shape}, {ks.shape}")
        for a in (xs, zs, ks):
            a.setflags(write=False)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "zs", zs)
        object.__setattr__(self, "ks", ks)

    @classmethod
    def from_generators(cls, ops: Sequence[PauliOperator], validate: bool = True) -> "Tableau":
        t = cls(*rows_of(ops))
        if validate:
            t.validate()
        return t

    @classmethod
    def from_strings(cls, texts: Iterable[str]) -> "Tableau":
        return cls.from_generators([PauliOperator.from_str(s) for s in texts])

    @classmethod
    def zero_state(cls, n: int) -> "Tableau":
        return cls(np.zeros((n, n), np.uint8), np.eye(n, dtype=np.uint8), np.zeros(n, np.int64))

    @property
    def n(self) -> int:
        return self.xs.shape[1]

    @property
    def generators(self) -> list[PauliOperator]:
        return ops_of(self.xs, self.zs, self.ks)

    @property
    def matrix(self) -> np.ndarray:
        return np.concatenate([self.xs, self.zs], axis=1)

    def validate(self) -> "Tableau":
        n = self.n
        hermitian = (self.ks - np.sum(self.xs & self.zs, axis=1)) % 2 == 0
        if not np.all(hermitian):
            raise ValidationError("tableau generators must be Hermitian (sign +1 or -1)")
        if gf2.rank(self.matrix) != n:
            raise ValidationError("tableau generators are not independent")
        if np.any(commutation_matrix(self.matrix, self.matrix)):
            raise ValidationError("tableau generators do not commute")
        return self

    def copy_rows(self):
        return self.xs.copy(), self.zs.copy(), self.ks.copy()

    def canonical(self) -> list[PauliOperator]:
        return canonical_rows(self.generators)

    def same_state(self, other: "Tableau") -> bool:
        return self.n == other.n and same_group(self.generators, other.generators)

    def __str__(self) -> str:
        return "\n".join(str(g) for g in self.generators)

    def __repr__(self) -> str:
        return f"Tableau(n={self.n}, generators={[str(g) for g in self.generators]})"

    def to_statevector(self) -> np.ndarray:
        return stabilizer_state_vector(self.generators)


def stabilizer_state_vector(ops: Sequence[PauliOperator]) -> np.ndarray:
    """Statevector stabilized by a maximal commuting set, with deterministic phase.

    Projects computational basis states in lexicographic order and keeps the
    first one with nonzero projection; the first nonzero amplitude is made real
    positive.
    """
    n = ops[0].n
    for idx in range(2**n):
        v = np.zeros(2**n, dtype=complex)
        v[idx] = 1
        for g in ops:
            v = (v + apply_pauli(g, v)) / 2
        nrm = np.linalg.norm(v)
        if nrm > 1e-8:
            v /= nrm
            lead = v[np.flatnonzero(np.abs(v) > 1e-12)[0]]
            return v * (abs(lead) / lead)
    raise ValidationError("generators stabilize no state (contradictory signs)")


# ---------------------------------------------------------------------------
# gates


def _conjugate_rows(xs, zs, ks, gate: str, qubits: Sequence[int]):
    n = xs.shape[1]
    if any(q < 0 or q >= n for q in qubits):
        raise DimensionError(f"qubit index out of range in {gate}{tuple(qubits)} for n={n}")
    g = gate.upper()
    if g in SINGLE_QUBIT_GATES:
        if len(qubits) != 1:
            raise ValidationError(f"{g} acts on one qubit")
        (q,) = qubits
        x = xs[:, q].astype(np.int64)
        z = zs[:, q].astype(np.int64)
        if g == "H":
            ks += 2 * (x & z)
            xs[:, q], zs[:, q] = zs[:, q].copy(), xs[:, q].copy()
        elif g == "S":
            ks += x
            zs[:, q] ^= xs[:, q]
        elif g == "SDG":
            ks += 3 * x
            zs[:, q] ^= xs[:, q]
        elif g == "X":
            ks += 2 * z
        elif g == "Z":
            ks += 2 * x
        elif g == "Y":
            ks += 2 * (x + z)
    elif g in TWO_QUBIT_GATES:
        if len(qubits) != 2 or qubits[0] == qubits[1]:
            raise ValidationError(f"{g} acts on two distinct qubits")
        a, b = qubits
        if g == "CNOT":
            xs[:, b] ^= xs[:, a]
            zs[:, a] ^= zs[:, b]
        elif g == "CZ":
            for step, qs in (("H", (b,)), ("CNOT", (a, b)), ("H", (b,))):
                _conjugate_rows(xs, zs, ks, step, qs)
        elif g == "SWAP":
            xs[:, [a, b]] = xs[:, [b, a]]
            zs[:, [a, b]] = zs[:, [b, a]]
    else:
        raise ValidationError(f"unsupported gate {gate!r}; Clifford gates only: {SINGLE_QUBIT_GATES + TWO_QUBIT_GATES}")
    ks %= 4


def conjugate_paulis(ops: Sequence[PauliOperator], circuit: Sequence[tuple]) -> list[PauliOperator]:
    """Conjugate each Pauli by the Clifford circuit ``U`` (``P -> U P U^dagger``)."""
    xs, zs, ks = rows_of(ops)
    xs, zs, ks = xs.copy(), zs.copy(), ks.copy()
    for gate, *qs in circuit:
        _conjugate_rows(xs, zs, ks, gate, qs)
    return ops_of(xs, zs, ks)


def tableau_apply(t: Tableau, gate: str, *qubits: int) -> Tableau:
    xs, zs, ks = t.copy_rows()
    _conjugate_rows(xs, zs, ks, gate, qubits)
    return Tableau(xs, zs, ks)


def apply_circuit(t: Tableau, circuit: Sequence[tuple]) -> Tableau:
    xs, zs, ks = t.copy_rows()
    for gate, *qs in circuit:
        _conjugate_rows(xs, zs, ks, gate, qs)
    return Tableau(xs, zs, ks)


def inverse_circuit(circuit: Sequence[tuple]) -> list[tuple]:
    return [(GATE_INVERSES[g.upper()], *qs) for g, *qs in reversed(list(circuit))]


# ---------------------------------------------------------------------------
# measurement


def expectation(t: Tableau, p: PauliOperator) -> int:
    """+1/-1 if measuring ``p`` is deterministic with that outcome, 0 if random."""
    if p.n != t.n:
        raise DimensionError(f"Pauli on {p.n} qubits measured on {t.n}-qubit tableau")
    anti = commutation_matrix(t.matrix, p.vector[None, :])[:, 0]
    if np.any(anti):
        return 0
    m = membership(t.generators, p)
    if m not in (1, -1):
        raise ValidationError(f"{p} is not Hermitian")
    return m


def tableau_measure(
    t: Tableau,
    p: PauliOperator,
    forced_outcome: int | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[int, Tableau]:
    """Projectively measure the Hermitian Pauli ``p``.

    Deterministic outcomes leave the tableau unchanged.  Random outcomes are
    taken from ``forced_outcome`` when given, else drawn from ``rng``.
    """
    if not p.is_hermitian:
        raise ValidationError(f"cannot measure non-Hermitian {p}")
    det = expectation(t, p)
    if det != 0:
        return det, t
    if forced_outcome is not None:
        if forced_outcome not in (1, -1):
            raise ValidationError("forced_outcome must be +1 or -1")
        outcome = int(forced_outcome)
    else:
        rng = rng if rng is not None else np.random.default_rng()
        outcome = 1 if rng.random() < 0.5 else -1
    xs, zs, ks = t.copy_rows()
    anti = np.flatnonzero(commutation_matrix(np.concatenate([xs, zs], axis=1), p.vector[None, :])[:, 0])
    a = anti[0]
    for i in anti[1:]:
        _rowmul(xs, zs, ks, i, a)
    xs[a], zs[a] = p.x, p.z
    ks[a] = (p.k + (0 if outcome == 1 else 2)) % 4
    return outcome, Tableau(xs, zs, ks)
