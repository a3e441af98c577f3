"""Stabilizer codes and the correlator groups of their logical basis states.

Generator tables (qubit 0 leftmost)
-----------------------------------
``five_qubit``  [[5,1,3]]: cyclic shifts of ``XZZXI``; ``X_L = XXXXX``, ``Z_L = ZZZZZ``.
                The cyclic ``ZXXZI`` family is its image under transversal H,
                so the two conventions are locally Clifford-equivalent.
``steane``      [[7,1,3]]: X- and Z-type rows of the Hamming check matrix
                ``0001111, 0110011, 1010101``; ``X_L = X^7``, ``Z_L = Z^7``.
``shor``        [[9,1,3]]: ``Z0Z1, Z1Z2, Z3Z4, Z4Z5, Z6Z7, Z7Z8, X0..X5, X3..X8``;
                ``X_L = Z^9``, ``Z_L = X^9``.
``reed_muller_15`` [[15,1,3]]: qubit ``q`` carries the 4-bit label ``q + 1``;
                with ``g_j`` the set of labels whose bit ``j`` is set, the
                generators are ``X(g_j)``, ``Z(g_j)`` (j = 0..3) and
                ``Z(g_j & g_k)`` (j < k); ``X_L = X^15``, ``Z_L = Z^15``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .. import gf2
from ..errors import ValidationError
from .pauli import PauliOperator, commutation_matrix, symplectic_matrix
from .tableau import Tableau

CODE_NAMES = ("five_qubit", "steane", "shor", "reed_muller_15")


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    n: int
    k: int
    stabilizers: tuple[PauliOperator, ...]
    logical_x: tuple[PauliOperator, ...]
    logical_z: tuple[PauliOperator, ...]
    name: str = "code"

    def __post_init__(self):
        object.__setattr__(self, "stabilizers", tuple(self.stabilizers))
        object.__setattr__(self, "logical_x", tuple(self.logical_x))
        object.__setattr__(self, "logical_z", tuple(self.logical_z))
        self.validate()

    def validate(self) -> None:
        n, k = self.n, self.k
        ops = self.stabilizers + self.logical_x + self.logical_z
        if any(p.n != n for p in ops):
            raise ValidationError(f"{self.name}: operators must act on {n} qubits")
        if len(self.stabilizers) != n - k or len(self.logical_x) != k or len(self.logical_z) != k:
            raise ValidationError(
                f"{self.name}: need {n - k} stabilizers and {k} logical X/Z, got "
                f"{len(self.stabilizers)}, {len(self.logical_x)}, {len(self.logical_z)}"
            )
        if any(not p.is_hermitian for p in ops):
            raise ValidationError(f"{self.name}: generators must be Hermitian")
        s = symplectic_matrix(self.stabilizers) if self.stabilizers else np.zeros((0, 2 * n), np.uint8)
        if s.shape[0] and gf2.rank(s) != s.shape[0]:
            raise ValidationError(f"{self.name}: stabilizers are not independent")
        if s.shape[0] and np.any(commutation_matrix(s, s)):
            raise ValidationError(f"{self.name}: stabilizers do not commute")
        if k:
            lx = symplectic_matrix(self.logical_x)
            lz = symplectic_matrix(self.logical_z)
            if s.shape[0] and (np.any(commutation_matrix(s, lx)) or np.any(commutation_matrix(s, lz))):
                raise ValidationError(f"{self.name}: logical operators must commute with stabilizers")
            if not np.array_equal(commutation_matrix(lx, lz), np.eye(k, dtype=np.uint8)):
                raise ValidationError(f"{self.name}: logical X_i must anticommute exactly with Z_i")
            if np.any(commutation_matrix(lx, lx)) or np.any(commutation_matrix(lz, lz)):
                raise ValidationError(f"{self.name}: logical operators of the same type must commute")
            full = np.concatenate([s, lx, lz]) if s.shape[0] else np.concatenate([lx, lz])
            if gf2.rank(full) != n - k + 2 * k:
                raise ValidationError(f"{self.name}: logical operators depend on stabilizers")

    def stabilizer_matrix(self) -> np.ndarray:
        if not self.stabilizers:
            return np.zeros((0, 2 * self.n), np.uint8)
        return symplectic_matrix(self.stabilizers)

    def logical_matrix(self) -> np.ndarray:
        return symplectic_matrix(self.logical_x + self.logical_z)

    def tensor(self, other: "StabilizerCode") -> "StabilizerCode":
        def pad(p: PauliOperator, left: bool) -> PauliOperator:
            return p.tensor(PauliOperator.identity(other.n)) if left else PauliOperator.identity(self.n).tensor(p)

        return StabilizerCode(
            n=self.n + other.n,
            k=self.k + other.k,
            stabilizers=[pad(p, True) for p in self.stabilizers] + [pad(p, False) for p in other.stabilizers],
            logical_x=[pad(p, True) for p in self.logical_x] + [pad(p, False) for p in other.logical_x],
            logical_z=[pad(p, True) for p in self.logical_z] + [pad(p, False) for p in other.logical_z],
            name=f"{self.name}+{other.name}",
        )

    def __repr__(self) -> str:
        return f"StabilizerCode(name={self.name!r}, n={self.n}, k={self.k})"


def _p(text: str) -> PauliOperator:
    return PauliOperator.from_str(text)


def _support_op(n: int, letter: str, support) -> PauliOperator:
    return _p("".join(letter if q in support else "I" for q in range(n)))


def trivial_code(n: int) -> StabilizerCode:
    """No encoding: ``k = n`` and the logical operators are the bare X_q, Z_q."""
    return StabilizerCode(
        n=n,
        k=n,
        stabilizers=(),
        logical_x=[PauliOperator.single(n, q, "X") for q in range(n)],
        logical_z=[PauliOperator.single(n, q, "Z") for q in range(n)],
        name=f"trivial({n})",
    )


def rm15_label_sets() -> dict[tuple[int, ...], set[int]]:
    """Qubit sets ``g_S`` (labels with all bits in ``S`` set) for |S| <= 2, keyed by S."""
    out = {}
    for r in (1, 2):
        for s in itertools.combinations(range(4), r):
            out[s] = {q for q in range(15) if all(((q + 1) >> j) & 1 for j in s)}
    return out


def build_code(name: str) -> StabilizerCode:
    if name == "five_qubit":
        base = "XZZXI"
        stabs = [_p(base[-i:] + base[:-i]) for i in range(4)]
        return StabilizerCode(5, 1, stabs, [_p("XXXXX")], [_p("ZZZZZ")], name)
    if name == "steane":
        rows = ["0001111", "0110011", "1010101"]
        sup = [{i for i, c in enumerate(r) if c == "1"} for r in rows]
        stabs = [_support_op(7, "X", s) for s in sup] + [_support_op(7, "Z", s) for s in sup]
        return StabilizerCode(7, 1, stabs, [_p("X" * 7)], [_p("Z" * 7)], name)
    if name == "shor":
        z_pairs = [(0, 1), (1, 2), (3, 4), (4, 5), (6, 7), (7, 8)]
        stabs = [_support_op(9, "Z", set(p)) for p in z_pairs]
        stabs += [_support_op(9, "X", set(range(0, 6))), _support_op(9, "X", set(range(3, 9)))]
        return StabilizerCode(9, 1, stabs, [_p("Z" * 9)], [_p("X" * 9)], name)
    if name == "reed_muller_15":
        g = rm15_label_sets()
        singles = [g[(j,)] for j in range(4)]
        pairs = [g[s] for s in itertools.combinations(range(4), 2)]
        stabs = [_support_op(15, "X", s) for s in singles]
        stabs += [_support_op(15, "Z", s) for s in singles]
        stabs += [_support_op(15, "Z", s) for s in pairs]
        return StabilizerCode(15, 1, stabs, [_p("X" * 15)], [_p("Z" * 15)], name)
    raise ValidationError(f"unknown code {name!r}; expected one of {CODE_NAMES}")


def code_from_strings(stabilizers: Sequence[str], logical_x: Sequence[str], logical_z: Sequence[str],
                      name: str = "custom") -> StabilizerCode:
    stabs = [_p(s) for s in stabilizers]
    lx = [_p(s) for s in logical_x]
    lz = [_p(s) for s in logical_z]
    n = (stabs + lx + lz)[0].n
    return StabilizerCode(n, len(lx), stabs, lx, lz, name)


def correlator_group(code: StabilizerCode, frame: Sequence[int] | None = None, basis: str = "Z") -> Tableau:
    """Full stabilizer group (the "correlators") of a logical Pauli-basis state.

    ``frame[i] = +1`` selects the +1 eigenstate of logical ``Z_i`` (or ``X_i``
    with ``basis="X"``), ``-1`` the other one.
    """
    frame = [1] * code.k if frame is None else [int(f) for f in frame]
    if len(frame) != code.k or any(f not in (1, -1) for f in frame):
        raise ValidationError(f"frame must list +1/-1 for each of the {code.k} logical qubits, got {frame}")
    if basis not in ("Z", "X"):
        raise ValidationError(f"basis must be 'Z' or 'X', got {basis!r}")
    logicals = code.logical_z if basis == "Z" else code.logical_x
    signed = [p if f == 1 else -p for p, f in zip(logicals, frame)]
    return Tableau.from_generators(list(code.stabilizers) + signed)
