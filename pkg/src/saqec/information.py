"""Entropies, coherent and mutual information, and capacity maximization.

All entropies are in bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .channels import QuantumChannel, apply, complementary_output, tensor, to_choi
from .errors import DimensionError, ValidationError
from .numerics import as_matrix, bell_state, density_matrix, fidelity, maximally_mixed

__all__ = [
    "InfoReport",
    "CapacityEstimate",
    "entropy",
    "binary_entropy",
    "info_report",
    "coherent_information",
    "mutual_information",
    "entanglement_fidelity",
    "maximize_capacity",
]


def binary_entropy(p: float) -> float:
    if p <= 0 or p >= 1:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def _entropy_from_eigs(w: np.ndarray) -> float:
    w = w[w > 1e-15]
    return float(-np.sum(w * np.log2(w)))


def entropy(rho) -> float:
    """Von Neumann entropy in bits; tiny negative eigenvalues are clamped to 0."""
    r = as_matrix(rho)
    w = np.linalg.eigvalsh((r + r.conj().T) / 2)
    return _entropy_from_eigs(np.clip(w, 0.0, None))


@dataclass(frozen=True)
class InfoReport:
    S_A: float
    S_B: float
    S_E: float

    @property
    def S_B_given_A(self) -> float:
        return self.S_E - self.S_A

    @property
    def I_c(self) -> float:
        return self.S_B - self.S_E

    @property
    def I(self) -> float:
        return self.S_A + self.I_c

    def as_dict(self) -> dict:
        return {
            "S_A": self.S_A,
            "S_B": self.S_B,
            "S_E": self.S_E,
            "S_B_given_A": self.S_B_given_A,
            "I_c": self.I_c,
            "I": self.I,
        }


def _check_dims(rho: np.ndarray, channel: QuantumChannel):
    if rho.shape != (channel.din, channel.din):
        raise DimensionError(f"state of shape {rho.shape} does not match channel input dimension {channel.din}")


def info_report(rho, channel: QuantumChannel, validate: bool = True) -> InfoReport:
    r = density_matrix(rho) if validate else as_matrix(rho)
    _check_dims(r, channel)
    return InfoReport(
        S_A=entropy(r),
        S_B=entropy(apply(channel, r)),
        S_E=entropy(complementary_output(channel, r)),
    )


def coherent_information(rho, channel: QuantumChannel) -> InfoReport:
    """Entropic report whose ``I_c`` field is ``S(Phi(rho)) - S(Phi^c(rho))``."""
    return info_report(rho, channel)


def mutual_information(rho, channel: QuantumChannel) -> InfoReport:
    """Entropic report whose ``I`` field is ``S(rho) + I_c(rho, Phi)``.

    Both decompositions ``S_A + I_c`` and ``S_B - S_{B|A}`` are checked to agree.
    """
    rep = info_report(rho, channel)
    alt = rep.S_B - rep.S_B_given_A
    if abs(alt - rep.I) > 1e-9:
        raise ArithmeticError(f"mutual information decompositions disagree: {rep.I} vs {alt}")
    return rep


def entanglement_fidelity(channel: QuantumChannel) -> float:
    if channel.din != channel.dout:
        raise ValidationError(f"entanglement fidelity needs a square channel, got {channel.din} -> {channel.dout}")
    return fidelity(bell_state(channel.din), to_choi(channel).matrix)


# ---------------------------------------------------------------------------
# capacity maximization


@dataclass
class CapacityEstimate:
    value: float
    maximizer: np.ndarray = field(repr=False)
    iterations: int
    converged: bool
    restarts_used: int
    functional: str
    letters: int
    restarts_agree: bool = True
    restart_values: list[float] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "functional": self.functional,
            "letters": self.letters,
            "value": self.value,
            "iterations": self.iterations,
            "converged": self.converged,
            "restarts_used": self.restarts_used,
            "restarts_agree": self.restarts_agree,
            "restart_values": list(self.restart_values),
            "maximizer": self.maximizer,
        }


class _Functional:
    """Fast evaluation of I_c or I at a density matrix for a fixed channel."""

    def __init__(self, channel: QuantumChannel, kind: str):
        self.k = channel.kraus
        self.kc = channel.kraus.conj()
        self.kind = kind

    def __call__(self, rho: np.ndarray) -> float:
        k = self.k
        kr = np.einsum("kai,ij->kaj", k, rho)
        out = np.einsum("kaj,kbj->ab", kr, self.kc)
        env = np.einsum("kaj,laj->kl", kr, self.kc)
        sb = _entropy_from_eigs(np.linalg.eigvalsh(out))
        se = _entropy_from_eigs(np.linalg.eigvalsh(env))
        val = sb - se
        if self.kind == "mutual":
            val += _entropy_from_eigs(np.linalg.eigvalsh(rho))
        return val


def _hermitian_basis(d: int) -> np.ndarray:
    """Orthonormal (Frobenius) basis of d x d Hermitian matrices, shape (d*d, d, d)."""
    out = []
    for i in range(d):
        e = np.zeros((d, d), dtype=complex)
        e[i, i] = 1
        out.append(e)
    s = 1 / np.sqrt(2)
    for i in range(d):
        for j in range(i + 1, d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = e[j, i] = s
            out.append(e)
            f = np.zeros((d, d), dtype=complex)
            f[i, j] = -1j * s
            f[j, i] = 1j * s
            out.append(f)
    return np.array(out)


def _softmax_state(h: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(h)
    e = np.exp(w - w[-1])
    e /= e.sum()
    return (v * e) @ v.conj().T


def _log_state(rho: np.ndarray, floor: float = 1e-12) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    return (v * np.log(np.clip(w, floor, None))) @ v.conj().T


def _ascend(f, h0, directions, *, fd_step, rtol, max_iter):
    """Gradient ascent in the logit matrix with Armijo backtracking; returns (h, value, iterations, converged)."""
    h = h0
    val = f(_softmax_state(h))
    t = 1.0
    for it in range(1, max_iter + 1):
        g = np.zeros(len(directions))
        for i, b in enumerate(directions):
            g[i] = (f(_softmax_state(h + fd_step * b)) - f(_softmax_state(h - fd_step * b))) / (2 * fd_step)
        gnorm = np.linalg.norm(g)
        if gnorm < 1e-12:
            return h, val, it, True
        step = np.tensordot(g, directions, axes=1)
        while True:
            cand = h + t * step
            cval = f(_softmax_state(cand))
            # Armijo sufficient increase; accepting any increase lets the iterate zig-zag across ridges
            if cval >= val + 1e-4 * t * gnorm**2:
                break
            t *= 0.5
            if t * gnorm < 1e-14:
                return h, val, it, True
        gain = cval - val
        h, val = cand, cval
        t = min(t * 2.0, 1e6)
        if gain < rtol:
            return h, val, it, True
    return h, val, max_iter, False


def maximize_capacity(
    channel: QuantumChannel,
    functional: str = "mutual",
    letters: int = 1,
    *,
    restarts: int = 5,
    seed: int = 0,
    warm_start=None,
    max_iter: int = 10000,
    rtol: float = 1e-7,
    fd_step: float = 1e-5,
    agree_tol: float = 1e-5,
) -> CapacityEstimate:
    """Maximize coherent or mutual information over input states.

    The state is parameterized as ``rho = exp(H) / tr exp(H)`` and ``H`` is
    moved along a central finite-difference gradient taken in a randomly
    rotated orthonormal Hermitian basis, with backtracking step control.  The
    first start is the maximally mixed state (or ``warm_start``), the remaining
    ``restarts - 1`` starts are random.

    Returns ``max I / 2`` for ``functional="mutual"`` and ``max I_c / letters``
    for ``functional="coherent"``.  For the coherent functional the pure input
    ``|0><0|`` (which always gives ``I_c = 0``) is included as a candidate.
    """
    if functional not in ("coherent", "mutual"):
        raise ValidationError(f"functional must be 'coherent' or 'mutual', got {functional!r}")
    if letters not in (1, 2):
        raise ValidationError(f"letters must be 1 or 2, got {letters}")
    if restarts < 1:
        raise ValidationError("restarts must be at least 1")
    ch = channel if letters == 1 else tensor(channel, channel)
    d = ch.din
    f = _Functional(ch, functional)
    rng = np.random.default_rng(seed)
    basis = _hermitian_basis(d)

    starts = [maximally_mixed(d) if warm_start is None else density_matrix(warm_start)]
    if warm_start is not None and restarts > 1:
        starts.append(maximally_mixed(d))
    while len(starts) < restarts:
        g = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        starts.append(_softmax_state((g + g.conj().T) / 2))

    results = []
    for rho0 in starts:
        q, _ = np.linalg.qr(rng.normal(size=(d * d, d * d)))
        directions = np.tensordot(q.T, basis, axes=1)
        h, val, its, conv = _ascend(f, _log_state(rho0), directions, fd_step=fd_step, rtol=rtol, max_iter=max_iter)
        rho = _softmax_state(h)
        results.append((f(rho), its, conv, rho))

    values = [r[0] for r in results]
    agree = True
    if functional == "mutual":
        agree = (max(values) - min(values)) <= agree_tol
    best = max(results, key=lambda r: (r[0], -r[1]))
    val, its, conv, rho = best
    if functional == "coherent":
        p0 = np.zeros((d, d), dtype=complex)
        p0[0, 0] = 1
        v0 = f(p0)
        if v0 > val:
            val, rho, conv = v0, p0, True
    scale = 2.0 if functional == "mutual" else float(letters)
    return CapacityEstimate(
        value=val / scale,
        maximizer=rho,
        iterations=its,
        converged=all(r[2] for r in results),
        restarts_used=len(results),
        functional=functional,
        letters=letters,
        restarts_agree=agree,
        restart_values=[v / scale for v in values],
    )


def capacity_value(rho, channel: QuantumChannel, functional: str, letters: int = 1) -> float:
    """The objective of :func:`maximize_capacity` evaluated at ``rho``."""
    ch = channel if letters == 1 else tensor(channel, channel)
    rep = info_report(rho, ch)
    return rep.I / 2 if functional == "mutual" else rep.I_c / letters
