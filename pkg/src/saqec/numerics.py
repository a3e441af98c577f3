"""Dense complex-matrix kernel.

Matrices are plain ``numpy.ndarray`` objects of dtype ``complex128``.  The
helpers here validate, decompose and combine them; none of them mutate their
inputs.
"""

from __future__ import annotations

from functools import reduce
from typing import Sequence

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import DimensionError, ValidationError

__all__ = [
    "as_matrix",
    "hermitian_deviation",
    "check_hermitian",
    "density_matrix",
    "is_density_matrix",
    "hermitian_eig",
    "psd_power",
    "support_projector",
    "fidelity",
    "partial_trace",
    "kron",
    "ket",
    "pure",
    "maximally_mixed",
    "bell_state",
]


def as_matrix(m) -> np.ndarray:
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValidationError(f"expected a 2-d matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValidationError("matrix has non-finite entries")
    return a


def hermitian_deviation(m: np.ndarray) -> float:
    if m.shape[0] != m.shape[1]:
        return np.inf
    return float(np.max(np.abs(m - m.conj().T), initial=0.0))


def check_hermitian(m, tol: float | None = None) -> np.ndarray:
    a = as_matrix(m)
    tol = DEFAULT.herm if tol is None else tol
    if a.shape[0] != a.shape[1]:
        raise ValidationError(f"matrix is not square: shape {a.shape}")
    dev = hermitian_deviation(a)
    if dev > tol:
        raise ValidationError(f"matrix is not Hermitian: max deviation {dev:.3e} > {tol:.1e}")
    return a


def density_matrix(m, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Validate ``m`` as a density matrix and return it as a complex array.

    The returned array is exactly Hermitian (symmetrized); trace and positivity
    are only checked, never renormalized.
    """
    a = check_hermitian(m, tol.herm)
    a = (a + a.conj().T) / 2
    tr = np.trace(a).real
    if abs(tr - 1) > tol.trace:
        raise ValidationError(f"trace is {tr!r}, expected 1 within {tol.trace:.1e}")
    lo = np.linalg.eigvalsh(a)[0]
    if lo < -tol.psd:
        raise ValidationError(f"matrix is not PSD: smallest eigenvalue {lo:.3e}")
    return a


def is_density_matrix(m, tol: Tolerances = DEFAULT) -> bool:
    try:
        density_matrix(m, tol)
    except ValidationError:
        return False
    return True


def hermitian_eig(m, tol: float | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (ascending) and unitary eigenvector matrix of a Hermitian ``m``."""
    a = check_hermitian(m, tol)
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    return w, v


def _spectrum(m, tol: Tolerances):
    w, v = hermitian_eig(m, tol.herm)
    scale = max(float(np.max(np.abs(w), initial=0.0)), 1.0) if w.size else 1.0
    if w.size and w[0] < -tol.psd * scale:
        raise ValidationError(f"matrix is not PSD: smallest eigenvalue {w[0]:.3e}")
    return w, v


def psd_power(m, exponent: float, cutoff: float | None = None, tol: Tolerances = DEFAULT) -> np.ndarray:
    """Matrix power of a PSD matrix computed on its support.

    Eigenvalues below ``cutoff`` (default: ``tol.spectral_cutoff`` times the
    largest eigenvalue) are treated as exactly zero, so negative exponents give
    the Moore-Penrose style pseudo-power.
    """
    w, v = _spectrum(m, tol)
    lmax = float(w[-1]) if w.size else 0.0
    thr = tol.spectral_cutoff * lmax if cutoff is None else cutoff
    keep = w > thr
    f = np.zeros_like(w)
    f[keep] = w[keep] ** exponent
    out = (v * f) @ v.conj().T
    return (out + out.conj().T) / 2


def support_projector(m, cutoff: float | None = None, tol: Tolerances = DEFAULT) -> np.ndarray:
    w, v = _spectrum(m, tol)
    lmax = float(w[-1]) if w.size else 0.0
    thr = tol.spectral_cutoff * lmax if cutoff is None else cutoff
    vs = v[:, w > thr]
    return vs @ vs.conj().T


def _sqrt_psd(a: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh((a + a.conj().T) / 2)
    w = np.sqrt(np.clip(w, 0.0, None))
    return (v * w) @ v.conj().T


def fidelity(a, b) -> float:
    """Squared-root fidelity ``||sqrt(a) sqrt(b)||_1 ** 2``, clipped to [0, 1]."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"fidelity of states with shapes {a.shape} and {b.shape}")
    s = np.linalg.svd(_sqrt_psd(a) @ _sqrt_psd(b), compute_uv=False)
    return float(min(max(np.sum(s) ** 2, 0.0), 1.0))


def partial_trace(state, dims: Sequence[int], keep: Sequence[int]) -> np.ndarray:
    """Reduce ``state`` on subsystems ``dims`` to the subsystems listed in ``keep``.

    Kept subsystems stay in their original order.
    """
    a = as_matrix(state)
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims) or int(np.prod(dims)) != a.shape[0] or a.shape[0] != a.shape[1]:
        raise DimensionError(f"subsystem dims {dims} inconsistent with state shape {a.shape}")
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionError(f"keep indices {keep} out of range for {len(dims)} subsystems")
    n = len(dims)
    t = a.reshape(dims + dims)
    traced = [i for i in range(n) if i not in keep]
    # einsum subscripts: row labels 0..n-1, column labels n..2n-1, traced ones share labels
    rows = list(range(n))
    cols = [i if i in traced else n + i for i in range(n)]
    out_labels = [i for i in keep] + [n + i for i in keep]
    r = np.einsum(t, rows + cols, out_labels)
    d = int(np.prod([dims[k] for k in keep])) if keep else 1
    return r.reshape(d, d)


def kron(*ms) -> np.ndarray:
    if not ms:
        return np.ones((1, 1), dtype=complex)
    return reduce(np.kron, [np.asarray(m, dtype=complex) for m in ms])


def ket(index: int, dim: int) -> np.ndarray:
    v = np.zeros(dim, dtype=complex)
    v[index] = 1.0
    return v


def pure(vec) -> np.ndarray:
    v = np.asarray(vec, dtype=complex).ravel()
    v = v / np.linalg.norm(v)
    return np.outer(v, v.conj())


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def bell_state(dim: int = 2) -> np.ndarray:
    """The normalized maximally entangled state sum_i |ii> / sqrt(dim) as a density matrix."""
    v = np.eye(dim, dtype=complex).reshape(-1) / np.sqrt(dim)
    return np.outer(v, v.conj())
