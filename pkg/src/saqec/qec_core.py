"""Dense-space error-correction analysis.

Encoders, Knill-Laflamme checks, Petz recovery and the state-adaptive
protection cycle ``F(D Phi V(rho), rho)`` in which the decoder ``D`` is the
Petz map of the *encoded known state*.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .channels import QuantumChannel, apply
from .config import DEFAULT, Tolerances
from .errors import DimensionError, ResourceError, ValidationError
from .numerics import as_matrix, density_matrix, fidelity, psd_power, support_projector
from .stabilizer.codes import StabilizerCode
from .stabilizer.pauli import PauliOperator, apply_pauli
from .stabilizer.tableau import stabilizer_state_vector

__all__ = [
    "DenseCode",
    "KLReport",
    "ProtectionResult",
    "dense_code_from_stabilizer",
    "kl_check",
    "petz_map",
    "transpose_channel",
    "sa_protect_cycle",
    "pauli_errors",
]


@dataclass(frozen=True, eq=False)
class DenseCode:
    n: int
    k: int
    encoder: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = as_matrix(self.encoder)
        if v.shape != (2**self.n, 2**self.k):
            raise DimensionError(f"encoder shape {v.shape} does not match n={self.n}, k={self.k}")
        dev = float(np.max(np.abs(v.conj().T @ v - np.eye(2**self.k))))
        if dev > 1e-9:
            raise ValidationError(f"encoder is not an isometry: max |V^dag V - I| = {dev:.3e}")
        object.__setattr__(self, "encoder", v)

    @property
    def projector(self) -> np.ndarray:
        return self.encoder @ self.encoder.conj().T

    def encode(self, rho) -> np.ndarray:
        v = self.encoder
        return v @ as_matrix(rho) @ v.conj().T

    def decode(self, state) -> tuple[np.ndarray, float]:
        """Logical state (renormalized) and the weight found outside the code space."""
        v = self.encoder
        out = v.conj().T @ as_matrix(state) @ v
        inside = float(np.trace(out).real)
        leak = max(0.0, 1.0 - inside)
        if inside > 0:
            out = out / inside
        return (out + out.conj().T) / 2, leak


def dense_code_from_stabilizer(code: StabilizerCode, tol: Tolerances = DEFAULT) -> DenseCode:
    """Dense encoder whose column ``b`` is the logical basis state ``|b_L>``.

    ``|0..0_L>`` is the normalized projection of the first computational basis
    state (lexicographic order) with nonzero overlap onto the joint +1
    eigenspace of the stabilizers and logical Z operators, with its first
    nonzero amplitude real positive; ``|b_L> = X_L^b |0_L>``.
    """
    if code.n > tol.max_statevector_qubits:
        raise ResourceError(f"dense encoder for n={code.n} exceeds {tol.max_statevector_qubits} qubits")
    zero = stabilizer_state_vector(list(code.stabilizers) + list(code.logical_z))
    cols = []
    for bits in itertools.product((0, 1), repeat=code.k):
        v = zero
        for i, b in enumerate(bits):
            if b:
                v = apply_pauli(code.logical_x[i], v)
        cols.append(v)
    return DenseCode(code.n, code.k, np.array(cols).T)


def pauli_errors(n: int, max_weight: int) -> list[PauliOperator]:
    """All Pauli operators of weight <= max_weight, identity first, by weight then position."""
    out = [PauliOperator.identity(n)]
    for w in range(1, max_weight + 1):
        for qs in itertools.combinations(range(n), w):
            for letters in itertools.product("XYZ", repeat=w):
                s = ["I"] * n
                for q, c in zip(qs, letters):
                    s[q] = c
                out.append(PauliOperator.from_str("".join(s)))
    return out


# ---------------------------------------------------------------------------
# Knill-Laflamme


@dataclass
class KLReport:
    c: np.ndarray
    residual: float
    rho_E: np.ndarray
    mixing: np.ndarray = field(repr=False)  # column i: coefficients of F_i in the input errors
    probabilities: np.ndarray = field(default=None)
    degeneracy_rank: int = 0
    exact: bool = False
    normalized: bool = True
    errors: list = field(default_factory=list, repr=False)

    @property
    def effective_errors(self) -> list[np.ndarray]:
        """Dense ``F_i = sum_j mixing[j, i] K_j``, built on demand."""
        mats = np.array([e.to_matrix() if isinstance(e, PauliOperator) else as_matrix(e) for e in self.errors])
        return [np.tensordot(self.mixing[:, i], mats, axes=1) for i in range(self.mixing.shape[1])]

    def as_dict(self) -> dict:
        return {
            "c": self.c,
            "residual": self.residual,
            "rho_E": self.rho_E,
            "probabilities": list(map(float, self.probabilities)),
            "trace_rho_E": float(np.trace(self.rho_E).real),
            "degeneracy_rank": self.degeneracy_rank,
            "exact": self.exact,
            "normalized": self.normalized,
        }


def _error_times(e, v: np.ndarray) -> np.ndarray:
    """``K V`` for a Pauli (applied column by column) or a dense error matrix."""
    if isinstance(e, PauliOperator):
        if 2**e.n != v.shape[0]:
            raise DimensionError(f"{e.n}-qubit Pauli error on a {v.shape[0]}-dimensional space")
        return np.stack([apply_pauli(e, col) for col in v.T], axis=1)
    m = as_matrix(e)
    if m.shape != (v.shape[0], v.shape[0]):
        raise DimensionError(f"error operator of shape {m.shape} on a {v.shape[0]}-dimensional space")
    return m @ v


def kl_check(code: DenseCode, errors: Sequence, divide_by_trace: bool = True, tol: Tolerances = DEFAULT) -> KLReport:
    """Knill-Laflamme analysis of ``errors`` on ``code``.

    ``c_ij = tr(P K_i^dag K_j P) / tr P``; the residual is the largest
    Frobenius norm of ``P K_i^dag K_j P - c_ij P``.  ``rho_E`` is
    ``sum_ij tr(P K_i^dag K_j) |j><i| / tr P`` (the transpose of ``c``).  With
    ``divide_by_trace=False`` both skip the ``1/tr P`` factor.  The
    eigenvectors of ``c`` (columns of ``mixing``) combine the errors into
    effective errors ``F_i = sum_j mixing[j, i] K_j`` with orthogonal actions.
    """
    if not errors:
        raise ValidationError("need at least one error operator")
    if 2**code.n > tol.max_dense_dim:
        raise ResourceError(f"Knill-Laflamme check on {code.n} qubits exceeds the dense limit {tol.max_dense_dim}")
    v = code.encoder
    kv = np.array([_error_times(e, v) for e in errors])  # K_i V
    # M_ij = V^dag K_i^dag K_j V
    m = np.einsum("iab,jac->ijbc", kv.conj(), kv)
    d = 2**code.k
    c = np.einsum("ijbb->ij", m) / d
    resid = m - c[:, :, None, None] * np.eye(d)
    residual = float(np.max(np.sqrt(np.sum(np.abs(resid) ** 2, axis=(2, 3)))))
    if not divide_by_trace:
        c = c * d
    c = (c + c.conj().T) / 2
    rho_e = c.T.copy()
    w, u = np.linalg.eigh(c)
    order = np.argsort(w)[::-1]
    w, u = w[order], u[:, order]
    thr = tol.spectral_cutoff * max(float(w[0]), 0.0)
    rank = int(np.sum(w > thr))
    return KLReport(
        c=c,
        residual=residual,
        rho_E=rho_e,
        mixing=u,
        probabilities=np.clip(w, 0.0, None),
        degeneracy_rank=rank,
        exact=residual < tol.kl_exact,
        normalized=divide_by_trace,
        errors=list(errors),
    )


# ---------------------------------------------------------------------------
# Petz recovery


def petz_map(rho, channel: QuantumChannel, tol: Tolerances = DEFAULT) -> QuantumChannel:
    """Petz recovery channel of ``channel`` with reference state ``rho``.

    Kraus operators ``rho^{1/2} K_i^dag Phi(rho)^{-1/2}`` with the inverse
    square root taken on the support of ``Phi(rho)``; inputs supported on the
    kernel of ``Phi(rho)`` are sent to ``rho`` itself so the map is trace
    preserving on the whole output space.
    """
    r = density_matrix(rho, tol)
    if r.shape != (channel.din, channel.din):
        raise DimensionError(f"reference state of shape {r.shape} does not match channel input {channel.din}")
    out = apply(channel, r)
    inv_sqrt = psd_power(out, -0.5, tol=tol)
    sqrt_rho = psd_power(r, 0.5, tol=tol)
    ops = np.einsum("ab,kcb,cd->kad", sqrt_rho, channel.kraus.conj(), inv_sqrt, optimize=True)
    kernel = np.eye(channel.dout) - support_projector(out, tol=tol)
    w, vk = np.linalg.eigh((kernel + kernel.conj().T) / 2)
    kvecs = vk[:, w > 0.5]
    if kvecs.shape[1]:
        mu, e = np.linalg.eigh(r)
        extra = [
            np.sqrt(m) * np.outer(e[:, a], kvecs[:, b].conj())
            for a, m in enumerate(mu)
            if m > tol.spectral_cutoff
            for b in range(kvecs.shape[1])
        ]
        ops = np.concatenate([ops, np.array(extra)])
    return QuantumChannel(_polish_tp(ops), name=f"petz[{channel.name}]")


def _polish_tp(ops: np.ndarray) -> np.ndarray:
    """Remove rounding-level deviations from trace preservation (ops -> ops S^{-1/2})."""
    s = np.einsum("kai,kaj->ij", ops.conj(), ops)
    dev = float(np.max(np.abs(s - np.eye(s.shape[0]))))
    if dev > 1e-6:
        raise ArithmeticError(f"Petz map not trace preserving (deviation {dev:.3e}); reference state too ill-conditioned")
    w, v = np.linalg.eigh((s + s.conj().T) / 2)
    return ops @ ((v / np.sqrt(w)) @ v.conj().T)


def transpose_channel(code: DenseCode, channel: QuantumChannel, tol: Tolerances = DEFAULT) -> QuantumChannel:
    """Code-blind recovery: the Petz map built from ``P / tr P`` instead of a known state."""
    return petz_map(code.projector / 2**code.k, channel, tol)


@dataclass(frozen=True)
class ProtectionResult:
    fidelity: float
    leakage: float
    decoder: str


def sa_protect_cycle(source, code: DenseCode, channel: QuantumChannel, decoder: str = "state",
                     tol: Tolerances = DEFAULT) -> ProtectionResult:
    """Encode ``source``, apply ``channel``, recover, decode and compare to ``source``.

    ``decoder="state"`` uses the Petz map of the encoded known state
    ``V rho V^dag``; ``decoder="transpose"`` uses the code-projector transpose
    channel.  Weight left outside the code space after recovery is reported as
    ``leakage`` and the logical state is renormalized before the fidelity.
    """
    rho = density_matrix(source, tol)
    if rho.shape != (2**code.k, 2**code.k):
        raise DimensionError(f"source of shape {rho.shape} does not match k={code.k}")
    if channel.din != 2**code.n or channel.dout != 2**code.n:
        raise DimensionError(f"physical channel {channel.din}->{channel.dout} does not act on n={code.n} qubits")
    encoded = code.encode(rho)
    noisy = apply(channel, encoded)
    if decoder == "state":
        rec = petz_map(encoded, channel, tol)
    elif decoder == "transpose":
        rec = transpose_channel(code, channel, tol)
    else:
        raise ValidationError(f"decoder must be 'state' or 'transpose', got {decoder!r}")
    logical, leak = code.decode(apply(rec, noisy))
    return ProtectionResult(fidelity(logical, rho), leak, decoder)
