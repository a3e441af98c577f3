"""Central numerical tolerances and resource limits.

Every module reads its defaults from :data:`DEFAULT`, so tests, the CLI and
library calls agree on what "Hermitian", "PSD" or "converged" means.
"""

from __future__ import annotations

from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Tolerances:
    herm: float = 1e-10
    psd: float = 1e-10
    trace: float = 1e-10
    cptp: float = 1e-9
    # eigenvalues below spectral_cutoff * max eigenvalue count as zero
    spectral_cutoff: float = 1e-10
    kl_exact: float = 1e-8
    choi_discard: float = 1e-10
    # dense limits
    max_dense_dim: int = 4096
    max_kraus_entries: int = 2**26
    max_statevector_qubits: int = 15
    max_projector_qubits: int = 7
    max_enumeration_qubits: int = 8

    def with_(self, **changes) -> "Tolerances":
        return replace(self, **changes)


DEFAULT = Tolerances()
