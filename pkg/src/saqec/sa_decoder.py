"""Lookup-table syndrome decoding: code stabilizers vs. state correlators.

``standard`` mode measures the ``n - k`` stabilizers of a code; success means
the residual ``R E`` lies in the stabilizer group.  ``state_adaptive`` mode
measures the full ``n``-generator correlator group of a known logical
stabilizer state; success means ``R E`` lies in that group (mod phase), i.e.
the state is restored.

Paulis are handled as symplectic bit rows ``(x | z)``; a syndrome bit is 1
when the error anticommutes with the corresponding generator, and syndromes
are indexed as integers with generator 0 as the most significant bit.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .config import DEFAULT, Tolerances
from .errors import DimensionError, ResourceError, ValidationError
from .stabilizer.codes import StabilizerCode, correlator_group
from .stabilizer.pauli import PauliOperator, commutation_matrix, symplectic_matrix

MODES = ("standard", "state_adaptive")


@dataclass(frozen=True, eq=False)
class DecoderTable:
    generators: tuple[PauliOperator, ...]
    recoveries: np.ndarray = field(repr=False)  # (2**m, 2n) bit rows indexed by syndrome integer
    mode: str
    max_weight: int = 0

    @property
    def n(self) -> int:
        return self.generators[0].n

    @property
    def m(self) -> int:
        return len(self.generators)

    @property
    def syndrome_map(self) -> dict[tuple[int, ...], PauliOperator]:
        out = {}
        for s in range(2**self.m):
            bits = tuple((s >> (self.m - 1 - i)) & 1 for i in range(self.m))
            out[bits] = PauliOperator.from_vector(self.recoveries[s])
        return out

    def generator_matrix(self) -> np.ndarray:
        return symplectic_matrix(self.generators)


def syndromes(gen_matrix: np.ndarray, errors: np.ndarray) -> np.ndarray:
    """Integer syndromes of error rows against generator rows."""
    bits = commutation_matrix(errors, gen_matrix).astype(np.int64)
    m = gen_matrix.shape[0]
    weights = 1 << np.arange(m - 1, -1, -1, dtype=np.int64)
    return bits @ weights


def _check_generators(gens: Sequence[PauliOperator]):
    mat = symplectic_matrix(gens)
    if gf2.rank(mat) != len(gens):
        raise ValidationError("decoder generators are not independent")
    if np.any(commutation_matrix(mat, mat)):
        raise ValidationError("decoder generators do not commute")
    return mat


def _paulis_of_weight(n: int, w: int) -> np.ndarray:
    """All weight-``w`` Pauli rows, ordered lexicographically by their (x, z) bit vector."""
    rows = []
    for qs in itertools.combinations(range(n), w):
        for letters in itertools.product((1, 2, 3), repeat=w):  # X=(1,0), Z=(0,1), Y=(1,1)
            r = np.zeros(2 * n, dtype=np.uint8)
            for q, l in zip(qs, letters):
                if l in (1, 3):
                    r[q] = 1
                if l in (2, 3):
                    r[n + q] = 1
            rows.append(r)
    if not rows:
        return np.zeros((0, 2 * n), dtype=np.uint8)
    rows = np.array(rows)
    order = np.lexsort(rows.T[::-1])
    return rows[order]


def build_decoder(generators: Sequence[PauliOperator], mode: str = "standard", *,
                  max_enumeration: int = 5_000_000) -> DecoderTable:
    """Minimum-weight lookup table over all ``2**m`` syndromes.

    Paulis are enumerated by increasing weight (lexicographic (x, z) order
    within a weight) and the first one hitting each syndrome is kept.
    """
    if mode not in MODES:
        raise ValidationError(f"mode must be one of {MODES}, got {mode!r}")
    gens = tuple(generators)
    if not gens:
        raise ValidationError("need at least one generator")
    mat = _check_generators(gens)
    n, m = gens[0].n, len(gens)
    if m > 20:
        raise ResourceError(f"lookup table with 2**{m} syndromes is too large")
    table = np.zeros((2**m, 2 * n), dtype=np.uint8)
    found = np.zeros(2**m, dtype=bool)
    found[0] = True
    seen = 1
    w = 0
    while not found.all():
        w += 1
        if w > n:
            raise ArithmeticError("some syndromes are unreachable")
        seen += math.comb(n, w) * 3**w
        if seen > max_enumeration:
            raise ResourceError(f"minimum-weight search exceeded {max_enumeration} Paulis")
        cands = _paulis_of_weight(n, w)
        syn = syndromes(mat, cands)
        new = ~found[syn]
        if not new.any():
            continue
        idx = np.flatnonzero(new)
        s_new, first = np.unique(syn[idx], return_index=True)
        table[s_new] = cands[idx[first]]
        found[s_new] = True
    return DecoderTable(gens, table, mode, w)


def standard_table(code: StabilizerCode) -> DecoderTable:
    return build_decoder(code.stabilizers, "standard")


def state_adaptive_table(code: StabilizerCode, frame=None, basis: str = "Z") -> DecoderTable:
    return build_decoder(correlator_group(code, frame, basis).generators, "state_adaptive")


def decode(table: DecoderTable, syndrome) -> PauliOperator:
    if isinstance(syndrome, (int, np.integer)):
        s = int(syndrome)
        if not 0 <= s < 2**table.m:
            raise DimensionError(f"syndrome {s} out of range for {table.m} generators")
    else:
        bits = [int(b) for b in syndrome]
        if len(bits) != table.m:
            raise DimensionError(f"syndrome has {len(bits)} bits, table expects {table.m}")
        s = int("".join(map(str, bits)), 2) if bits else 0
    return PauliOperator.from_vector(table.recoveries[s])


def syndrome_of(table: DecoderTable, error: PauliOperator) -> tuple[int, ...]:
    s = int(syndromes(table.generator_matrix(), error.vector[None, :])[0])
    return tuple((s >> (table.m - 1 - i)) & 1 for i in range(table.m))


# ---------------------------------------------------------------------------
# success criterion and exhaustive evaluation


def _success_checker(protected: Sequence[PauliOperator], n: int):
    """Rows whose commutation with the residual must all vanish for success.

    The residual must lie in the group generated by ``protected``: it has to
    commute with the group and with a complementary set of logical operators.
    """
    mat = symplectic_matrix(protected)
    # normalizer N of the group; residual r in group <=> r commutes with every element of N
    # N = {v : commutation(v, mat) = 0} = nullspace of the symplectic-form-adjusted matrix
    swapped = np.concatenate([mat[:, n:], mat[:, :n]], axis=1)
    normalizer = gf2.nullspace(swapped)
    return normalizer


def residual_ok(checker: np.ndarray, residual: np.ndarray) -> np.ndarray:
    return ~np.any(commutation_matrix(residual, checker), axis=1)


@dataclass
class ExhaustiveResult:
    correctable_count: int
    total: int
    failing_cosets: list = field(repr=False)
    failing_errors: list = field(repr=False, default_factory=list)

    @property
    def fraction(self) -> float:
        return self.correctable_count / self.total


def _all_paulis(n: int) -> np.ndarray:
    codes = np.arange(4**n)
    digits = (codes[:, None] // (4 ** np.arange(n - 1, -1, -1))[None, :]) % 4  # 0=I,1=X,2=Y,3=Z
    x = ((digits == 1) | (digits == 2)).astype(np.uint8)
    z = ((digits == 3) | (digits == 2)).astype(np.uint8)
    return np.concatenate([x, z], axis=1)


def _success_group(table: DecoderTable, protected: Sequence[PauliOperator] | None):
    return table.generators if protected is None else tuple(protected)


def exhaustive_eval(table: DecoderTable, protected: Sequence[PauliOperator] | None = None,
                    tol: Tolerances = DEFAULT) -> ExhaustiveResult:
    """Decode every one of the ``4**n`` Paulis (mod phase) and count successes.

    Success means ``R E`` lies in the group of ``protected`` (default: the
    table's own generators, i.e. stabilizer group in standard mode and the
    correlator group in state-adaptive mode).
    """
    n = table.n
    if n > tol.max_enumeration_qubits:
        raise ResourceError(f"exhaustive enumeration limited to {tol.max_enumeration_qubits} qubits, got {n}")
    errs = _all_paulis(n)
    ok = _evaluate(table, _success_group(table, protected), errs)
    syn = syndromes(table.generator_matrix(), errs)
    residual = errs ^ table.recoveries[syn]
    cosets = set()
    for r, s in zip(residual[~ok], syn[~ok]):
        cosets.add((int(s), str(PauliOperator.from_vector(r))[1:]))
    failing = [str(PauliOperator.from_vector(e))[1:] for e in errs[~ok]]
    return ExhaustiveResult(int(ok.sum()), len(errs), sorted(cosets), failing)


def _evaluate(table: DecoderTable, protected, errs: np.ndarray, flips: np.ndarray | None = None) -> np.ndarray:
    syn = syndromes(table.generator_matrix(), errs)
    if flips is not None:
        syn = syn ^ flips
    residual = errs ^ table.recoveries[syn]
    return residual_ok(_success_checker(protected, table.n), residual)


def pauli_probabilities(errs: np.ndarray, p: float) -> np.ndarray:
    n = errs.shape[1] // 2
    wt = np.sum(errs[:, :n] | errs[:, n:], axis=1)
    return (p / 3) ** wt * (1 - p) ** (n - wt)


def exact_failure_probability(table: DecoderTable, p: float, protected=None) -> float:
    """Sum of iid depolarizing probabilities of all errors the table fails on (no syndrome noise)."""
    errs = _all_paulis(table.n)
    ok = _evaluate(table, _success_group(table, protected), errs)
    return float(np.sum(pauli_probabilities(errs[~ok], p)))


# ---------------------------------------------------------------------------
# Monte Carlo


@dataclass(frozen=True)
class MonteCarloResult:
    mode: str
    trials: int
    failures: int
    physical_p: float
    syndrome_flip_q: float
    seed: int

    @property
    def logical_error_rate(self) -> float:
        return self.failures / self.trials

    @property
    def std_error(self) -> float:
        r = self.logical_error_rate
        return math.sqrt(r * (1 - r) / self.trials)

    def as_row(self) -> dict:
        return {
            "mode": self.mode,
            "p": self.physical_p,
            "q": self.syndrome_flip_q,
            "trials": self.trials,
            "failures": self.failures,
            "rate": self.logical_error_rate,
            "std_error": self.std_error,
            "seed": self.seed,
        }


CHUNK = 10_000


def _sample_errors(rng: np.random.Generator, size: int, n: int, p: float) -> np.ndarray:
    u = rng.random((size, n))
    kind = np.zeros((size, n), dtype=np.int8)  # 0=I, 1=X, 2=Y, 3=Z
    hit = u < p
    kind[hit] = 1 + np.minimum((u[hit] / p * 3).astype(np.int8), 2)
    x = ((kind == 1) | (kind == 2)).astype(np.uint8)
    z = ((kind == 3) | (kind == 2)).astype(np.uint8)
    return np.concatenate([x, z], axis=1)


def _sample_flips(rng: np.random.Generator, size: int, m: int, q: float) -> np.ndarray:
    bits = (rng.random((size, m)) < q).astype(np.int64)
    return bits @ (1 << np.arange(m - 1, -1, -1, dtype=np.int64))


def monte_carlo(tables: Sequence[DecoderTable], p: float, q: float, trials: int, seed: int,
                protected: Sequence | None = None) -> list[MonteCarloResult]:
    """Paired Monte Carlo over iid depolarizing noise with noisy syndrome bits.

    Every table sees the same error samples; syndrome flips are drawn per
    table.  Trials are processed in fixed chunks, chunk ``c`` using the
    generator seeded by ``(seed, c)``, so results depend only on ``seed``.
    """
    if not (0 <= p < 1) or not (0 <= q < 1):
        raise ValidationError(f"need 0 <= p < 1 and 0 <= q < 1, got p={p}, q={q}")
    if trials < 1:
        raise ValidationError("trials must be at least 1")
    tables = list(tables)
    n = tables[0].n
    if any(t.n != n for t in tables):
        raise DimensionError("all tables must act on the same qubits")
    prot = [None] * len(tables) if protected is None else list(protected)
    checkers = [_success_checker(_success_group(t, pr), n) for t, pr in zip(tables, prot)]
    gmats = [t.generator_matrix() for t in tables]
    failures = [0] * len(tables)
    for c, start in enumerate(range(0, trials, CHUNK)):
        size = min(CHUNK, trials - start)
        rng = np.random.default_rng([seed, c])
        errs = _sample_errors(rng, size, n, p)
        for i, t in enumerate(tables):
            syn = syndromes(gmats[i], errs)
            if q > 0:
                syn = syn ^ _sample_flips(rng, size, t.m, q)
            residual = errs ^ t.recoveries[syn]
            failures[i] += int(np.sum(~residual_ok(checkers[i], residual)))
    return [MonteCarloResult(t.mode, trials, f, p, q, seed) for t, f in zip(tables, failures)]


def paired_monte_carlo(code: StabilizerCode, p: float, q: float, trials: int, seed: int,
                       frame=None, basis: str = "Z") -> list[MonteCarloResult]:
    """Standard vs. state-adaptive decoding of a logical basis state of ``code``."""
    return monte_carlo([standard_table(code), state_adaptive_table(code, frame, basis)], p, q, trials, seed)
