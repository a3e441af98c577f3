"""Binary symplectic Pauli operators with exact phase tracking.

A Pauli operator on ``n`` qubits is stored as ``i**k * X^x Z^z`` with bit
vectors ``x, z`` and ``k`` in ``Z_4``.  In this form ``Y = i X Z`` and the
product rule is ``(X^a Z^b)(X^c Z^d) = (-1)^(b.c) X^(a+c) Z^(b+d)``.

Text form is a sign followed by one letter per qubit, e.g. ``"+XZZXI"`` or
``"-iYZ"``; the sign multiplies the tensor product of the usual Pauli matrices.
Qubit 0 is the leftmost letter and the most significant tensor factor.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ..errors import DimensionError, ValidationError

_SIGNS = {"+": 0, "": 0, "+i": 1, "i": 1, "-": 2, "-i": 3}
_SIGN_TEXT = {0: "+", 1: "+i", 2: "-", 3: "-i"}
_MATS = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True, eq=False)
class PauliOperator:
    x: np.ndarray
    z: np.ndarray
    k: int = 0

    def __post_init__(self):
        x = np.asarray(self.x, dtype=np.uint8) & 1
        z = np.asarray(self.z, dtype=np.uint8) & 1
        if x.shape != z.shape or x.ndim != 1:
            raise ValidationError(f"x and z must be equal-length bit vectors, got {x.shape} and {z.shape}")
        x.setflags(write=False)
        z.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "k", int(self.k) % 4)

    # construction -----------------------------------------------------
    @classmethod
    def from_str(cls, text: str) -> "PauliOperator":
        s = text.strip()
        body = s.lstrip("+-i")
        prefix = s[: len(s) - len(body)]
        if prefix not in _SIGNS or not body or any(c not in "IXYZ" for c in body):
            raise ValidationError(f"cannot parse Pauli string {text!r}")
        x = np.array([c in "XY" for c in body], dtype=np.uint8)
        z = np.array([c in "ZY" for c in body], dtype=np.uint8)
        ny = sum(c == "Y" for c in body)
        return cls(x, z, _SIGNS[prefix] + ny)

    @classmethod
    def identity(cls, n: int) -> "PauliOperator":
        return cls(np.zeros(n, np.uint8), np.zeros(n, np.uint8), 0)

    @classmethod
    def single(cls, n: int, qubit: int, letter: str) -> "PauliOperator":
        s = ["I"] * n
        s[qubit] = letter
        return cls.from_str("".join(s))

    @classmethod
    def from_vector(cls, v, sign: int = 0) -> "PauliOperator":
        """Hermitian Pauli with symplectic vector ``v = (x | z)`` and sign ``(-1)**sign``."""
        v = np.asarray(v, dtype=np.uint8)
        n = v.size // 2
        x, z = v[:n], v[n:]
        return cls(x, z, int(np.sum(x & z)) + 2 * sign)

    # properties --------------------------------------------------------
    @property
    def n(self) -> int:
        return self.x.size

    @property
    def weight(self) -> int:
        return int(np.count_nonzero(self.x | self.z))

    @property
    def vector(self) -> np.ndarray:
        return np.concatenate([self.x, self.z])

    @property
    def n_y(self) -> int:
        return int(np.count_nonzero(self.x & self.z))

    @property
    def sign_power(self) -> int:
        """``s`` such that the operator is ``i**s`` times the Pauli-matrix tensor product."""
        return (self.k - self.n_y) % 4

    @property
    def is_hermitian(self) -> bool:
        return self.sign_power % 2 == 0

    def letters(self) -> str:
        return "".join("IXZY"[int(a) + 2 * int(b)] for a, b in zip(self.x, self.z))

    def __str__(self) -> str:
        return _SIGN_TEXT[self.sign_power] + self.letters()

    def __repr__(self) -> str:
        return f"PauliOperator({str(self)!r})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliOperator):
            return NotImplemented
        return self.k == other.k and np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def __hash__(self) -> int:
        return hash((self.k, self.x.tobytes(), self.z.tobytes()))

    # algebra -----------------------------------------------------------
    def __mul__(self, other: "PauliOperator") -> "PauliOperator":
        if self.n != other.n:
            raise DimensionError(f"cannot multiply Paulis on {self.n} and {other.n} qubits")
        k = self.k + other.k + 2 * int(np.sum(self.z & other.x))
        return PauliOperator(self.x ^ other.x, self.z ^ other.z, k)

    def __neg__(self) -> "PauliOperator":
        return PauliOperator(self.x, self.z, self.k + 2)

    def inverse(self) -> "PauliOperator":
        # (i^k X^x Z^z)^-1 = i^-k Z^z X^x = i^-k (-1)^(x.z) X^x Z^z
        return PauliOperator(self.x, self.z, -self.k + 2 * int(np.sum(self.x & self.z)))

    def equal_up_to_phase(self, other: "PauliOperator") -> bool:
        return np.array_equal(self.x, other.x) and np.array_equal(self.z, other.z)

    def commutes(self, other: "PauliOperator") -> bool:
        return symplectic_commute(self, other)

    def tensor(self, other: "PauliOperator") -> "PauliOperator":
        return PauliOperator(np.concatenate([self.x, other.x]), np.concatenate([self.z, other.z]), self.k + other.k)

    def to_matrix(self) -> np.ndarray:
        out = np.ones((1, 1), dtype=complex)
        for c in self.letters():
            out = np.kron(out, _MATS[c])
        return (1j ** self.sign_power) * out

    def apply_to_state(self, psi: np.ndarray) -> np.ndarray:
        return apply_pauli(self, psi)


def symplectic_commute(a: PauliOperator, b: PauliOperator) -> bool:
    if a.n != b.n:
        raise DimensionError(f"Paulis act on {a.n} and {b.n} qubits")
    return (int(np.sum(a.x & b.z)) + int(np.sum(a.z & b.x))) % 2 == 0


def pauli(text: str) -> PauliOperator:
    return PauliOperator.from_str(text)


def paulis(texts: Iterable[str]) -> list[PauliOperator]:
    return [PauliOperator.from_str(t) for t in texts]


def symplectic_matrix(ops: Iterable[PauliOperator]) -> np.ndarray:
    ops = list(ops)
    if not ops:
        return np.zeros((0, 0), dtype=np.uint8)
    return np.array([p.vector for p in ops], dtype=np.uint8)


def commutation_matrix(a, b) -> np.ndarray:
    """``M[i, j] = 1`` iff row ``i`` of ``a`` anticommutes with row ``j`` of ``b``.

    Both arguments are symplectic bit matrices of shape ``(m, 2n)``.
    """
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    n = a.shape[1] // 2
    return ((a[:, :n] @ b[:, n:].T + a[:, n:] @ b[:, :n].T) & 1).astype(np.uint8)


def _basis_bits(n: int) -> np.ndarray:
    idx = np.arange(2**n)
    return ((idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1).astype(np.int64)


def apply_pauli(p: PauliOperator, psi: np.ndarray) -> np.ndarray:
    """Apply ``p`` to a statevector of length ``2**n`` (qubit 0 most significant)."""
    n = p.n
    psi = np.asarray(psi, dtype=complex)
    if psi.shape[0] != 2**n:
        raise DimensionError(f"statevector length {psi.shape[0]} does not match {n} qubits")
    weights = 1 << (n - 1 - np.arange(n))
    xmask = int(np.dot(p.x.astype(np.int64), weights))
    zmask = int(np.dot(p.z.astype(np.int64), weights))
    idx = np.arange(2**n)
    # (Z^z psi)[j] = (-1)^{popcount(j & zmask)} psi[j];  (X^x phi)[j] = phi[j ^ xmask]
    par = _popcount(idx & zmask) & 1
    phi = psi * np.where(par, -1.0, 1.0).reshape((-1,) + (1,) * (psi.ndim - 1))
    out = phi[idx ^ xmask]
    return (1j**p.k) * out


def _popcount(a: np.ndarray) -> np.ndarray:
    a = a.astype(np.int64)
    c = np.zeros_like(a)
    while np.any(a):
        c += a & 1
        a = a >> 1
    return c
