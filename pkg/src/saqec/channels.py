"""Quantum channels in Kraus form, their Choi states and complementary channels.

Conventions
-----------
* Kraus operators have shape ``(dout, din)``; ``apply`` computes
  ``sum_i K_i rho K_i^dagger``.
* The Choi state is ``(Phi x 1)(omega)`` with the channel acting on the *first*
  tensor factor and ``omega = |w><w|``, ``|w> = sum_i |ii> / sqrt(din)``.  It
  is a ``(dout*din) x (dout*din)`` density matrix.
* The complementary channel built from Kraus operators ``K_1..K_r`` has output
  dimension ``r`` and acts as ``Phi^c(rho)[i, j] = tr(K_i rho K_j^dagger)``.

Noise families (bit-exact Kraus conventions)
--------------------------------------------
``depolarizing(p)``      ``sqrt(1-p) I, sqrt(p/3) X, sqrt(p/3) Y, sqrt(p/3) Z``; p in [0, 1].
                         ``p = 3/4`` is the completely depolarizing channel.
``dephasing(p)``         ``sqrt(1-p) I, sqrt(p) Z``; p in [0, 1].
``amplitude_damping(g)`` ``[[1, 0], [0, sqrt(1-g)]]`` and ``[[0, sqrt(g)], [0, 0]]``; g in [0, 1].
``erasure(p)``           output dimension 3 (basis ``|0>, |1>, |e>``); Kraus
                         ``sqrt(1-p) [[1,0],[0,1],[0,0]]`` and ``sqrt(p) |e><i|`` for i = 0, 1.

Kraus operators with zero weight are dropped, so e.g. ``depolarizing(0)`` has a
single Kraus operator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DimensionError, ResourceError, ValidationError
from .numerics import as_matrix, bell_state, density_matrix, partial_trace

FAMILIES = ("depolarizing", "dephasing", "amplitude_damping", "erasure")
FAMILY_DOMAINS = {kind: (0.0, 1.0) for kind in FAMILIES}

_I = np.eye(2, dtype=complex)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def cptp_deviation(kraus: np.ndarray) -> float:
    din = kraus.shape[2]
    s = np.einsum("kai,kaj->ij", kraus.conj(), kraus)
    return float(np.max(np.abs(s - np.eye(din))))


@dataclass(frozen=True, eq=False)
class QuantumChannel:
    """A trace-preserving channel given by Kraus operators of shape ``(dout, din)``."""

    kraus: np.ndarray = field(repr=False)
    name: str = "channel"

    def __post_init__(self):
        k = np.asarray(self.kraus, dtype=complex)
        if k.ndim == 2:
            k = k[None]
        if k.ndim != 3 or k.shape[0] == 0:
            raise ValidationError(f"Kraus operators must form a nonempty (r, dout, din) stack, got {k.shape}")
        if not np.all(np.isfinite(k)):
            raise ValidationError("Kraus operators have non-finite entries")
        dev = cptp_deviation(k)
        if dev > DEFAULT.cptp:
            raise ValidationError(f"Kraus operators are not trace preserving: max |sum K^dag K - I| = {dev:.3e}")
        k.setflags(write=False)
        object.__setattr__(self, "kraus", k)

    @property
    def din(self) -> int:
        return self.kraus.shape[2]

    @property
    def dout(self) -> int:
        return self.kraus.shape[1]

    @property
    def rank(self) -> int:
        return self.kraus.shape[0]

    def __call__(self, rho) -> np.ndarray:
        return apply(self, rho)

    def __repr__(self) -> str:
        return f"QuantumChannel(name={self.name!r}, din={self.din}, dout={self.dout}, kraus={self.rank})"


@dataclass(frozen=True, eq=False)
class ChoiState:
    din: int
    dout: int
    matrix: np.ndarray = field(repr=False)


def identity_channel(d: int = 2) -> QuantumChannel:
    return QuantumChannel(np.eye(d, dtype=complex)[None], name=f"identity({d})")


def _drop_zero(ops, weights, name):
    kept = [np.sqrt(w) * op for w, op in zip(weights, ops) if w > 0]
    return QuantumChannel(np.array(kept), name=name)


def build_family(kind: str, lam: float) -> QuantumChannel:
    """Evaluate a standard qubit noise family at parameter ``lam``."""
    if kind not in FAMILIES:
        raise ValidationError(f"unknown channel family {kind!r}; expected one of {FAMILIES}")
    lo, hi = FAMILY_DOMAINS[kind]
    lam = float(lam)
    if not (lo <= lam <= hi):
        raise ValidationError(f"{kind} parameter {lam} outside [{lo}, {hi}]")
    name = f"{kind}({lam:g})"
    if kind == "depolarizing":
        return _drop_zero([_I, _X, _Y, _Z], [1 - lam, lam / 3, lam / 3, lam / 3], name)
    if kind == "dephasing":
        return _drop_zero([_I, _Z], [1 - lam, lam], name)
    if kind == "amplitude_damping":
        k0 = np.array([[1, 0], [0, np.sqrt(1 - lam)]], dtype=complex)
        k1 = np.array([[0, np.sqrt(lam)], [0, 0]], dtype=complex)
        ops = [k0] if lam == 0 else [k0, k1]
        return QuantumChannel(np.array(ops), name=name)
    # erasure
    keep = np.zeros((3, 2), dtype=complex)
    keep[0, 0] = keep[1, 1] = 1
    e0 = np.zeros((3, 2), dtype=complex)
    e0[2, 0] = 1
    e1 = np.zeros((3, 2), dtype=complex)
    e1[2, 1] = 1
    return _drop_zero([keep, e0, e1], [1 - lam, lam, lam], name)


def apply(channel: QuantumChannel, rho) -> np.ndarray:
    r = as_matrix(rho)
    if r.shape != (channel.din, channel.din):
        raise DimensionError(f"state of shape {r.shape} does not match channel input dimension {channel.din}")
    k = channel.kraus
    out = np.einsum("kai,ij,kbj->ab", k, r, k.conj(), optimize=True)
    return (out + out.conj().T) / 2


def to_choi(channel: QuantumChannel) -> ChoiState:
    # vec of K/sqrt(din) in (out, in) order is (K x 1)|w>
    vecs = channel.kraus.reshape(channel.rank, -1) / np.sqrt(channel.din)
    m = vecs.T @ vecs.conj()
    return ChoiState(channel.din, channel.dout, (m + m.conj().T) / 2)


def from_choi(choi: ChoiState, tol: Tolerances = DEFAULT) -> QuantumChannel:
    din, dout = choi.din, choi.dout
    m = density_matrix(choi.matrix, tol.with_(trace=max(tol.trace, 1e-9)))
    if m.shape != (din * dout, din * dout):
        raise DimensionError(f"Choi matrix shape {m.shape} inconsistent with din={din}, dout={dout}")
    reduced = partial_trace(m, [dout, din], [1])
    dev = float(np.max(np.abs(reduced - np.eye(din) / din)))
    if dev > tol.cptp:
        raise ValidationError(f"Choi state input marginal deviates from I/din by {dev:.3e}")
    w, v = np.linalg.eigh(m)
    keep = w > tol.choi_discard
    ops = [np.sqrt(lam * din) * v[:, i].reshape(dout, din) for i, lam in zip(np.flatnonzero(keep), w[keep])]
    return QuantumChannel(np.array(ops[::-1]), name="from_choi")


def choi_convert(x):
    """Kraus -> Choi or Choi -> Kraus, depending on the argument type."""
    if isinstance(x, QuantumChannel):
        return to_choi(x)
    if isinstance(x, ChoiState):
        return from_choi(x)
    raise TypeError(f"expected QuantumChannel or ChoiState, got {type(x).__name__}")


def canonicalize(channel: QuantumChannel, tol: Tolerances = DEFAULT) -> QuantumChannel:
    """Minimal Kraus set (orthogonal Kraus operators) via the Choi eigendecomposition."""
    out = from_choi(to_choi(channel), tol)
    return QuantumChannel(out.kraus, name=channel.name)


def complementary(channel: QuantumChannel) -> QuantumChannel:
    k = channel.kraus
    # C_b[i, :] = <b| K_i
    c = np.transpose(k, (1, 0, 2))
    return QuantumChannel(c, name=f"complementary({channel.name})")


def complementary_output(channel: QuantumChannel, rho) -> np.ndarray:
    """``Phi^c(rho)`` evaluated directly as the Gram matrix tr(K_i rho K_j^dagger)."""
    k = channel.kraus
    kr = np.einsum("kai,ij->kaj", k, as_matrix(rho))
    g = np.einsum("kaj,laj->kl", kr, k.conj())
    return (g + g.conj().T) / 2


def _check_size(rank: int, dout: int, din: int, tol: Tolerances):
    if dout > tol.max_dense_dim or din > tol.max_dense_dim or rank * dout * din > tol.max_kraus_entries:
        raise ResourceError(
            f"channel with {rank} Kraus operators of shape ({dout}, {din}) exceeds the dense limits"
        )


def tensor(*channels: QuantumChannel, canonical: bool | None = None, tol: Tolerances = DEFAULT) -> QuantumChannel:
    """Parallel composition; Kraus operators are all pairwise tensor products.

    With ``canonical=None`` the result is canonicalized only when the Kraus
    count exceeds ``din * dout``, i.e. when the set is certainly redundant.
    """
    if not channels:
        raise ValidationError("tensor() needs at least one channel")
    rank = int(np.prod([c.rank for c in channels]))
    din = int(np.prod([c.din for c in channels]))
    dout = int(np.prod([c.dout for c in channels]))
    _check_size(rank, dout, din, tol)
    ops = channels[0].kraus
    for c in channels[1:]:
        ops = np.einsum("kab,lcd->klacbd", ops, c.kraus).reshape(
            ops.shape[0] * c.rank, ops.shape[1] * c.dout, ops.shape[2] * c.din
        )
    out = QuantumChannel(ops, name=" x ".join(c.name for c in channels))
    if canonical is None:
        canonical = rank > din * dout
    return canonicalize(out, tol) if canonical else out


def iid(channel: QuantumChannel, n: int, **kwargs) -> QuantumChannel:
    return tensor(*([channel] * n), **kwargs)


def compose(second: QuantumChannel, first: QuantumChannel) -> QuantumChannel:
    """``second o first``."""
    if second.din != first.dout:
        raise DimensionError(f"cannot compose: {first.dout} -> {second.din}")
    ops = np.einsum("kab,lbc->klac", second.kraus, first.kraus).reshape(-1, second.dout, first.din)
    return QuantumChannel(ops, name=f"{second.name} o {first.name}")


def unitary_channel(u) -> QuantumChannel:
    u = as_matrix(u)
    return QuantumChannel(u[None], name="unitary")


def channel_action_deviation(a: QuantumChannel, b: QuantumChannel) -> float:
    """Max entry deviation of the two channels on the matrix-unit basis |i><j|."""
    if (a.din, a.dout) != (b.din, b.dout):
        return np.inf
    worst = 0.0
    for i, j in itertools.product(range(a.din), repeat=2):
        e = np.zeros((a.din, a.din), dtype=complex)
        e[i, j] = 1
        ea = np.einsum("kai,ij,kbj->ab", a.kraus, e, a.kraus.conj())
        eb = np.einsum("kai,ij,kbj->ab", b.kraus, e, b.kraus.conj())
        worst = max(worst, float(np.max(np.abs(ea - eb))))
    return worst


def choi_of_identity(d: int) -> np.ndarray:
    return bell_state(d)


def pauli_channel(probs: Sequence[float], name: str = "pauli") -> QuantumChannel:
    """Single-qubit Pauli channel with probabilities for I, X, Y, Z."""
    probs = [float(p) for p in probs]
    if len(probs) != 4 or min(probs) < 0 or abs(sum(probs) - 1) > 1e-12:
        raise ValidationError(f"Pauli probabilities must be 4 nonnegative numbers summing to 1, got {probs}")
    return _drop_zero([_I, _X, _Y, _Z], probs, name)
