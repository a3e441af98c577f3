"""Gauge-fixing switches between Reed-Muller [[15,1,3]] and a padded Steane code.

Frame: qubit ``q`` carries the 4-bit label ``q + 1`` and ``g_S`` is the set of
qubits whose label has every bit in ``S`` set.

* shared stabilizers: ``X(g_j)``, ``Z(g_j)`` for ``j = 0..3``
* gauge ``a`` (Reed-Muller side): ``Z(g_j & g_k)`` for the six pairs ``j < k``
* gauge ``b`` (Steane side): ``X(g_j & g_3)``, ``Z(g_j & g_3)`` for ``j = 0..2``
* logicals: ``X^15`` and ``Z^15``

Shared plus gauge ``b`` is the Steane code on qubits 0..6 (labels 1..7, whose
Hamming rows are ``g_0, g_1, g_2``) times the [[8,0]] first-order Reed-Muller
state on qubits 7..14.  Both sides are stabilizer codes with the same
logical operators, so switching is measurement of the other gauge plus Pauli
fixes.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import gf2
from .config import DEFAULT, Tolerances
from .errors import ResourceError, ValidationError
from .qec_core import dense_code_from_stabilizer
from .stabilizer.codes import StabilizerCode, build_code, rm15_label_sets
from .stabilizer.pauli import PauliOperator, apply_pauli, symplectic_matrix
from .stabilizer.tableau import (
    SINGLE_QUBIT_GATES,
    TWO_QUBIT_GATES,
    Tableau,
    conjugate_paulis,
    expectation,
    membership,
    same_group,
    tableau_measure,
)

DIRECTIONS = ("a_to_b", "b_to_a")


def _support_op(letter: str, support, n: int = 15) -> PauliOperator:
    return PauliOperator.from_str("".join(letter if q in support else "I" for q in range(n)))


@dataclass(frozen=True, eq=False)
class SubsystemSwitchSpec:
    n: int
    shared_stabilizers: tuple[PauliOperator, ...]
    gauge_a: tuple[PauliOperator, ...]
    gauge_b: tuple[PauliOperator, ...]
    logical_x: tuple[PauliOperator, ...]
    logical_z: tuple[PauliOperator, ...]
    corrections_a: np.ndarray = field(init=False, repr=False)
    corrections_b: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        for name in ("shared_stabilizers", "gauge_a", "gauge_b", "logical_x", "logical_z"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        self.code("a")
        self.code("b")
        object.__setattr__(self, "corrections_a", self._solve_corrections(self.gauge_a))
        object.__setattr__(self, "corrections_b", self._solve_corrections(self.gauge_b))

    def code(self, side: str) -> StabilizerCode:
        """The stabilizer code of one gauge fixing (validated on construction)."""
        gauge = {"a": self.gauge_a, "b": self.gauge_b}[side]
        return StabilizerCode(
            self.n, len(self.logical_x), self.shared_stabilizers + gauge, self.logical_x, self.logical_z,
            name=f"switch_{side}",
        )

    def _solve_corrections(self, target: Sequence[PauliOperator]) -> np.ndarray:
        """Row ``i``: a Pauli anticommuting with ``target[i]`` only, among targets, shared stabilizers and logicals."""
        n = self.n
        rows = symplectic_matrix(list(target) + list(self.shared_stabilizers) + list(self.logical_x)
                                 + list(self.logical_z))
        # anticommutation with c = (cx | cz) is row_z . cx + row_x . cz
        a = np.concatenate([rows[:, n:], rows[:, :n]], axis=1)
        out = np.zeros((len(target), 2 * n), dtype=np.uint8)
        for i in range(len(target)):
            b = np.zeros(rows.shape[0], dtype=np.uint8)
            b[i] = 1
            sol = gf2.solve(a, b)
            if sol is None:
                raise ValidationError("gauge generators are not independent of stabilizers and logicals")
            out[i] = sol
        return out

    def to_dict(self) -> dict:
        s = lambda ops: [str(p) for p in ops]
        return {
            "n": self.n,
            "shared_stabilizers": s(self.shared_stabilizers),
            "gauge_a": s(self.gauge_a),
            "gauge_b": s(self.gauge_b),
            "logical_x": s(self.logical_x),
            "logical_z": s(self.logical_z),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SubsystemSwitchSpec":
        p = lambda texts: [PauliOperator.from_str(t) for t in texts]
        return cls(int(d["n"]), p(d["shared_stabilizers"]), p(d["gauge_a"]), p(d["gauge_b"]),
                   p(d["logical_x"]), p(d["logical_z"]))


def rm15_steane_spec() -> SubsystemSwitchSpec:
    g = rm15_label_sets()
    shared = [_support_op("X", g[(j,)]) for j in range(4)] + [_support_op("Z", g[(j,)]) for j in range(4)]
    gauge_a = [_support_op("Z", g[s]) for s in itertools.combinations(range(4), 2)]
    gauge_b = [_support_op("X", g[(j, 3)]) for j in range(3)] + [_support_op("Z", g[(j, 3)]) for j in range(3)]
    return SubsystemSwitchSpec(15, shared, gauge_a, gauge_b, [_support_op("X", range(15))],
                               [_support_op("Z", range(15))])


@dataclass
class SwitchRecord:
    direction: str
    outcomes: list[int]
    corrections: list[str]
    applied: str

    def as_dict(self) -> dict:
        return {"direction": self.direction, "outcomes": self.outcomes, "corrections": self.corrections,
                "applied": self.applied}


def _apply_pauli_to_tableau(t: Tableau, p: PauliOperator) -> Tableau:
    """Conjugate the state by a Pauli: generators anticommuting with it flip sign."""
    xs, zs, ks = t.copy_rows()
    flip = (xs.astype(np.int64) @ p.z + zs.astype(np.int64) @ p.x) & 1
    return Tableau(xs, zs, (ks + 2 * flip) % 4)


def switch(state: Tableau, spec: SubsystemSwitchSpec, direction: str, *,
           outcomes: Sequence[int] | None = None, rng: np.random.Generator | None = None
           ) -> tuple[Tableau, SwitchRecord]:
    """Move ``state`` from one gauge fixing to the other.

    Every target gauge generator is measured in order; random outcomes come
    from ``outcomes`` (one entry per target generator, ignored where the
    outcome is deterministic) or ``rng``.  The correction for the ``-1``
    outcomes is the product of the precomputed per-generator fixes.
    """
    if direction not in DIRECTIONS:
        raise ValidationError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    source, target, fixes = (
        (spec.gauge_a, spec.gauge_b, spec.corrections_b) if direction == "a_to_b"
        else (spec.gauge_b, spec.gauge_a, spec.corrections_a)
    )
    if state.n != spec.n:
        raise ValidationError(f"state has {state.n} qubits, switch frame has {spec.n}")
    for g in spec.shared_stabilizers + source:
        if expectation(state, g) != 1:
            raise ValidationError(f"input state is not in the source code: {g} is not a +1 stabilizer")
    if outcomes is not None and len(outcomes) != len(target):
        raise ValidationError(f"need {len(target)} forced outcomes, got {len(outcomes)}")
    results = []
    for i, g in enumerate(target):
        forced = None if outcomes is None else outcomes[i]
        m, state = tableau_measure(state, g, forced_outcome=forced, rng=rng)
        results.append(m)
    total = np.zeros(2 * spec.n, dtype=np.uint8)
    used = []
    for m, fix in zip(results, fixes):
        if m == -1:
            total ^= fix
            used.append(str(PauliOperator.from_vector(fix)))
    corr = PauliOperator.from_vector(total)
    # corrections must not touch the logical information
    if not all(corr.commutes(l) for l in spec.logical_x + spec.logical_z):
        raise ArithmeticError("switch correction does not commute with the logical operators")
    state = _apply_pauli_to_tableau(state, corr)
    for g in target:
        if expectation(state, g) != 1:
            raise ArithmeticError(f"gauge generator {g} not fixed to +1 after correction")
    return state, SwitchRecord(direction, results, used, str(corr))


def logical_y(x: PauliOperator, z: PauliOperator) -> PauliOperator:
    """``i X_L Z_L``."""
    p = x * z
    return PauliOperator(p.x, p.z, p.k + 1)


def encoded_state(code: StabilizerCode, basis: str = "Z", sign=1) -> Tableau:
    """Logical Pauli eigenstate; ``sign`` is +1/-1 or one entry per logical qubit."""
    if basis == "Z":
        logicals = code.logical_z
    elif basis == "X":
        logicals = code.logical_x
    elif basis == "Y":
        logicals = [logical_y(x, z) for x, z in zip(code.logical_x, code.logical_z)]
    else:
        raise ValidationError(f"basis must be X, Y or Z, got {basis!r}")
    signs = [sign] * code.k if isinstance(sign, int) else list(sign)
    ops = list(code.stabilizers) + [l if s == 1 else -l for l, s in zip(logicals, signs)]
    return Tableau.from_generators(ops)


# ---------------------------------------------------------------------------
# program states


CLIFFORD_GATES = SINGLE_QUBIT_GATES + TWO_QUBIT_GATES


def _logical_to_physical(p: PauliOperator, lx: Sequence[PauliOperator], lz: Sequence[PauliOperator]) -> PauliOperator:
    """Map ``i**k X^x Z^z`` on logical qubits to ``i**k prod X_L^x prod Z_L^z``."""
    out = PauliOperator.identity(lx[0].n)
    for i in range(p.n):
        if p.x[i]:
            out = out * lx[i]
    for i in range(p.n):
        if p.z[i]:
            out = out * lz[i]
    return PauliOperator(out.x, out.z, out.k + p.k)


def build_program_state(logical_clifford: Sequence[tuple], code: StabilizerCode, k: int | None = None,
                        tol: Tolerances = DEFAULT) -> Tableau:
    """Encoded Choi state ``(1 (x) G) |Phi>`` over ``2k`` blocks of ``code``.

    Block ``b`` occupies qubits ``b*n .. (b+1)*n - 1``.  Blocks ``0..k-1`` hold
    the reference half and blocks ``k..2k-1`` the half on which ``G`` acts;
    logical qubit ``i`` of ``G`` lives in block ``k + i``.  The generators are
    every block's stabilizers followed by the ``2k`` logical correlators
    ``G (X_i X_{k+i}) G^dag`` and ``G (Z_i Z_{k+i}) G^dag`` in that order.
    """
    if code.k != 1:
        raise ValidationError("program states use one logical qubit per block")
    circuit = [tuple(g) for g in logical_clifford]
    for gate, *qs in circuit:
        if str(gate).upper() not in CLIFFORD_GATES:
            raise ValidationError(f"non-Clifford gate {gate!r} in program circuit")
    used = max((q for _, *qs in circuit for q in qs), default=-1) + 1
    k = max(used, 1) if k is None else k
    if k < 1 or used > k:
        raise ValidationError(f"circuit acts on {used} logical qubits but k={k}")
    blocks = 2 * k
    n = code.n
    total = blocks * n
    if total > 4096:
        raise ResourceError(f"program state on {total} qubits is too large")

    def embed(p: PauliOperator, b: int) -> PauliOperator:
        x = np.zeros(total, np.uint8)
        z = np.zeros(total, np.uint8)
        x[b * n:(b + 1) * n] = p.x
        z[b * n:(b + 1) * n] = p.z
        return PauliOperator(x, z, p.k)

    stabs = [embed(s, b) for b in range(blocks) for s in code.stabilizers]
    lx = [embed(code.logical_x[0], b) for b in range(blocks)]
    lz = [embed(code.logical_z[0], b) for b in range(blocks)]
    # logical Bell pairs (i, k + i), then G on the second half
    bell = []
    for i in range(k):
        for letter in ("X", "Z"):
            bits = ["I"] * (2 * k)
            bits[i] = bits[k + i] = letter
            bell.append(PauliOperator.from_str("".join(bits)))
    shifted = [(g, *[k + q for q in qs]) for g, *qs in circuit]
    bell = conjugate_paulis(bell, shifted)
    gens = stabs + [_logical_to_physical(p, lx, lz) for p in bell]
    return Tableau.from_generators(gens)


# ---------------------------------------------------------------------------
# transversal gates


@dataclass
class TransversalVerdict:
    code: str
    gate: str
    preserved: bool
    verdict: str
    power: int | None
    logical_map: dict
    overlaps: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "code": self.code,
            "gate": self.gate,
            "preserved": self.preserved,
            "verdict": self.verdict,
            "power": self.power,
            "logical_map": self.logical_map,
            "overlaps": self.overlaps,
        }


# images of X_L and Z_L for U and U^-1 (one logical qubit), signed logical Pauli labels
_EXPECTED = {
    "H": ({"X": "+Z", "Z": "+X"}, {"X": "+Z", "Z": "+X"}),
    "S": ({"X": "+Y", "Z": "+Z"}, {"X": "-Y", "Z": "+Z"}),
}
_EXPECTED_CNOT = {"X0": "+XX", "X1": "+IX", "Z0": "+ZI", "Z1": "+ZZ"}


def _logical_label(image: PauliOperator, stabs: Sequence[PauliOperator], lx, lz) -> str | None:
    """Signed logical Pauli ``L`` with ``image = s L`` for some stabilizer ``s``."""
    k = len(lx)
    for letters in itertools.product("IXYZ", repeat=k):
        phys = _logical_to_physical(PauliOperator.from_str("".join(letters)), lx, lz)
        for label, cand in (("+", phys), ("-", -phys)):
            rest = image * cand
            if (membership(stabs, rest) == 1) if stabs else rest == PauliOperator.identity(image.n):
                return label + "".join(letters)
    return None


def transversal_gate_check(code: StabilizerCode | str, gate: str, tol: Tolerances = DEFAULT) -> TransversalVerdict:
    """Check whether the bitwise application of ``gate`` implements a logical gate.

    Clifford gates are checked by conjugating the stabilizer group and
    logical operators; ``CNOT`` acts between two copies of the code.  ``T``
    (phase ``pi/4``) is checked on statevectors: the encoded ``|+_L>`` must
    stay in the code space and is compared with the encoded ``T|+>`` and
    ``T^-1|+>``.
    """
    code = build_code(code) if isinstance(code, str) else code
    g = gate.upper()
    if g in ("H", "S"):
        circ = [(g, q) for q in range(code.n)]
        stabs = list(code.stabilizers)
        img = conjugate_paulis(stabs, circ)
        preserved = same_group(img, stabs)
        lmap = {}
        if preserved:
            ix, iz = conjugate_paulis([code.logical_x[0], code.logical_z[0]], circ)
            lmap = {"X": _logical_label(ix, stabs, code.logical_x, code.logical_z),
                    "Z": _logical_label(iz, stabs, code.logical_x, code.logical_z)}
        return _clifford_verdict(code.name, g, preserved, lmap, _EXPECTED[g])
    if g == "CNOT":
        two = code.tensor(code)
        n = code.n
        circ = [("CNOT", q, n + q) for q in range(n)]
        stabs = list(two.stabilizers)
        preserved = same_group(conjugate_paulis(stabs, circ), stabs)
        lmap = {}
        if preserved:
            imgs = conjugate_paulis(list(two.logical_x) + list(two.logical_z), circ)
            keys = ["X0", "X1", "Z0", "Z1"]
            lmap = {key: _logical_label(p, stabs, two.logical_x, two.logical_z) for key, p in zip(keys, imgs)}
        ok = preserved and lmap == _EXPECTED_CNOT
        verdict = "logical CNOT" if ok else ("logical other" if preserved else "not transversal")
        return TransversalVerdict(code.name, g, preserved, verdict, 1 if ok else None, lmap)
    if g == "T":
        return _t_check(code, tol)
    raise ValidationError(f"gate must be one of H, S, CNOT, T, got {gate!r}")


def _clifford_verdict(name, gate, preserved, lmap, expected) -> TransversalVerdict:
    if not preserved:
        return TransversalVerdict(name, gate, False, "not transversal", None, lmap)
    if lmap == expected[0]:
        return TransversalVerdict(name, gate, True, f"logical {gate}", 1, lmap)
    if lmap == expected[1]:
        return TransversalVerdict(name, gate, True, f"logical {gate}^-1", -1, lmap)
    return TransversalVerdict(name, gate, True, "logical other", None, lmap)


def _t_check(code: StabilizerCode, tol: Tolerances) -> TransversalVerdict:
    if code.n > tol.max_statevector_qubits:
        raise ResourceError(f"T check needs a {code.n}-qubit statevector; limit is {tol.max_statevector_qubits}")
    if code.k != 1:
        raise ValidationError("T check supports one logical qubit")
    dense = dense_code_from_stabilizer(code, tol)
    v = dense.encoder
    plus = (v[:, 0] + v[:, 1]) / np.sqrt(2)
    idx = np.arange(2**code.n)
    pop = np.zeros(idx.size, dtype=np.int64)
    for q in range(code.n):
        pop += (idx >> q) & 1
    phase = np.exp(1j * np.pi / 4 * pop)
    out = phase * plus
    # stays in the code space iff every stabilizer has expectation +1
    stab_exp = min(float(np.real(np.vdot(out, apply_pauli(s, out)))) for s in code.stabilizers)
    preserved = stab_exp > 1 - 1e-9
    overlaps = {}
    for s, label in ((1, "T"), (-1, "T^-1")):
        target = (v[:, 0] + np.exp(1j * s * np.pi / 4) * v[:, 1]) / np.sqrt(2)
        overlaps[label] = float(abs(np.vdot(target, out)))
    lmap = {"min_stabilizer_expectation": stab_exp}
    if not preserved:
        return TransversalVerdict(code.name, "T", False, "not transversal", None, lmap, overlaps)
    if overlaps["T"] >= 1 - 1e-9:
        return TransversalVerdict(code.name, "T", True, "logical T", 1, lmap, overlaps)
    if overlaps["T^-1"] >= 1 - 1e-9:
        return TransversalVerdict(code.name, "T", True, "logical T^-1", -1, lmap, overlaps)
    return TransversalVerdict(code.name, "T", True, "logical other", None, lmap, overlaps)
