"""Conversion of stabilizer states to graph states up to local Cliffords."""

from __future__ import annotations

from collections import deque
from functools import lru_cache
from dataclasses import dataclass

import numpy as np

from .. import gf2
from ..errors import ValidationError
from .pauli import PauliOperator
from .tableau import Tableau, _rowmul, apply_circuit, conjugate_paulis, inverse_circuit, membership, same_group


@dataclass(frozen=True, eq=False)
class GraphState:
    """Graph state ``|G>`` plus per-qubit Clifford words.

    Applying ``local_cliffords[q]`` (gates in list order) to qubit ``q`` of
    ``|G>`` gives the source stabilizer state.
    """

    adjacency: np.ndarray
    local_cliffords: tuple[tuple[str, ...], ...]

    @property
    def n(self) -> int:
        return self.adjacency.shape[0]

    def edges(self) -> list[tuple[int, int]]:
        a = self.adjacency
        return [(i, j) for i in range(self.n) for j in range(i + 1, self.n) if a[i, j]]

    def circuit(self) -> list[tuple]:
        return [(g, q) for q, word in enumerate(self.local_cliffords) for g in word]

    def tableau(self) -> Tableau:
        return graph_tableau(self.adjacency)

    def source_tableau(self) -> Tableau:
        return apply_circuit(self.tableau(), self.circuit())


def graph_tableau(adjacency) -> Tableau:
    a = np.asarray(adjacency, dtype=np.uint8)
    n = a.shape[0]
    if a.shape != (n, n) or np.any(a != a.T) or np.any(np.diag(a)):
        raise ValidationError("adjacency must be symmetric with zero diagonal")
    return Tableau(np.eye(n, dtype=np.uint8), a.copy(), np.zeros(n, np.int64))


def to_graph_state(t: Tableau) -> GraphState:
    """Graph state locally Clifford-equivalent to ``t``.

    Hadamards go on the lowest-index pivot qubits that make the X block
    invertible, then S removes Y's from the diagonal and Z fixes signs.  The
    result is checked by rebuilding the source group.
    """
    n = t.n
    xs, zs, ks = t.copy_rows()
    circuit: list[tuple] = []

    _, xpiv = gf2.rref(xs)
    if len(xpiv) < n:
        # rows of the group with vanishing X part: null space of the X block's row space
        null = gf2.nullspace(xs.T)
        zsub = (null.astype(np.int64) @ zs.astype(np.int64)) & 1
        _, zpiv = gf2.rref(zsub)
        for q in zpiv:
            circuit.append(("H", q))
    work = apply_circuit(Tableau(xs, zs, ks), circuit)
    xs, zs, ks = work.copy_rows()

    # row reduce so the X block becomes the identity
    for c in range(n):
        piv = next((i for i in range(c, n) if xs[i, c]), None)
        if piv is None:
            raise ArithmeticError("X block still singular after Hadamard regularization")
        if piv != c:
            for arr in (xs, zs, ks):
                arr[[c, piv]] = arr[[piv, c]]
        for i in range(n):
            if i != c and xs[i, c]:
                _rowmul(xs, zs, ks, i, c)
    fix = []
    for q in range(n):
        if zs[q, q]:
            fix.append(("S", q))
    reduced = apply_circuit(Tableau(xs, zs, ks), fix)
    signs = [("Z", q) for q in range(n) if reduced.ks[q] % 4 == 2]
    graph = apply_circuit(reduced, signs)
    circuit += fix + signs

    adjacency = graph.zs.copy()
    if np.any(graph.ks) or not np.array_equal(graph.xs, np.eye(n, dtype=np.uint8)):
        raise ArithmeticError("graph normal form not reached")
    out = GraphState(adjacency, _words(inverse_circuit(circuit), n))
    if not same_group(out.source_tableau().generators, t.generators):
        raise ArithmeticError("graph-state round trip failed")
    return out


def _action(word) -> tuple:
    """Signed images of X and Z under conjugation by a single-qubit gate word."""
    imgs = conjugate_paulis([PauliOperator.from_str("X"), PauliOperator.from_str("Z")], [(g, 0) for g in word])
    return tuple(str(p) for p in imgs)


@lru_cache(maxsize=1)
def _shortest_words() -> dict:
    table = {_action(()): ()}
    frontier = [()]
    while frontier:
        nxt = []
        for w in frontier:
            for g in ("H", "S", "SDG", "X", "Y", "Z"):
                cand = w + (g,)
                a = _action(cand)
                if a not in table:
                    table[a] = cand
                    nxt.append(cand)
        frontier = nxt
    return table


def simplify_word(word) -> tuple[str, ...]:
    """Shortest gate word with the same conjugation action (global phase ignored)."""
    return _shortest_words()[_action(tuple(word))]


def _words(circuit, n: int) -> tuple[tuple[str, ...], ...]:
    words = [[] for _ in range(n)]
    for g, q in circuit:
        words[q].append(g)
    return tuple(simplify_word(w) for w in words)


# ---------------------------------------------------------------------------
# local complementation


def local_complement(adjacency, v: int) -> np.ndarray:
    a = np.asarray(adjacency, dtype=np.uint8).copy()
    nb = np.flatnonzero(a[v])
    for i in nb:
        for j in nb:
            if i != j:
                a[i, j] ^= 1
    return a


def _lc_circuit(adjacency, v: int) -> list[tuple]:
    """Clifford circuit mapping ``|G>`` to ``|tau_v(G)>`` up to Pauli signs."""
    # exp(-i pi/4 X_v) prod_{u in N(v)} exp(i pi/4 Z_u); exp(-i pi/4 X) ~ H S H, exp(i pi/4 Z) ~ SDG
    circ = [("H", v), ("S", v), ("H", v)]
    circ += [("SDG", int(u)) for u in np.flatnonzero(np.asarray(adjacency)[v])]
    return circ


def graph_state_in_orbit(t: Tableau, target_adjacency, max_graphs: int = 1 << 16) -> GraphState | None:
    """Express ``t`` as local Cliffords on the graph state with ``target_adjacency``.

    Breadth-first search over local complementations starting from the graph
    found by :func:`to_graph_state`; returns None if the target is not in the
    reachable orbit.
    """
    target = np.asarray(target_adjacency, dtype=np.uint8)
    start = to_graph_state(t)
    key = lambda a: a.tobytes()
    seen = {key(start.adjacency)}
    queue = deque([(start.adjacency, [])])
    while queue:
        a, path = queue.popleft()
        if np.array_equal(a, target):
            return _rebase(t, a, path)
        for v in range(a.shape[0]):
            b = local_complement(a, v)
            if key(b) not in seen:
                if len(seen) >= max_graphs:
                    return None
                seen.add(key(b))
                queue.append((b, path + [(a, v)]))
    return None


def _rebase(t: Tableau, final_adjacency, path) -> GraphState:
    """Local Clifford words from ``|final>`` to ``t`` given the complementation path."""
    # forward: circuit C_path maps |G_start> to |G_final> up to Pauli signs
    forward = []
    for a, v in path:
        forward += _lc_circuit(a, v)
    start = to_graph_state(t)
    # state = C_start_words |G_start>; so t = W |G_start>, |G_start> = C_path^dagger |G_final'>
    reached = apply_circuit(graph_tableau(path[0][0] if path else final_adjacency), forward)
    # Pauli corrections so that the reached state equals the final graph state exactly
    fixes = _sign_fix(reached, graph_tableau(final_adjacency))
    to_final = forward + fixes  # maps |G_start> -> |G_final>
    # |t> = W |G_start> = W to_final^dagger |G_final>
    circuit = inverse_circuit(to_final) + start.circuit()
    out = GraphState(np.asarray(final_adjacency, dtype=np.uint8), _words(circuit, t.n))
    if not same_group(out.source_tableau().generators, t.generators):
        raise ArithmeticError("local-complementation rebasing failed")
    return out


def _sign_fix(state: Tableau, target: Tableau) -> list[tuple]:
    """Single-qubit Paulis mapping ``state`` onto ``target`` (same group up to signs)."""
    n = state.n
    tgt = target.generators
    bad = np.array([membership(state.generators, g) == -1 for g in tgt], dtype=np.uint8)
    if not bad.any():
        return []
    # a Pauli P flips generator g iff they anticommute: solve commutation(P, g_i) = bad_i
    mat = np.concatenate([target.zs, target.xs], axis=1)  # row i . (px|pz) gives anticommutation
    sol = gf2.solve(mat, bad)
    if sol is None:
        raise ArithmeticError("no Pauli sign correction exists")
    px, pz = sol[:n], sol[n:]
    fixes = []
    for q in range(n):
        if px[q] and pz[q]:
            fixes.append(("Y", q))
        elif px[q]:
            fixes.append(("X", q))
        elif pz[q]:
            fixes.append(("Z", q))
    return fixes


def ring_adjacency(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        a[i, (i + 1) % n] = a[(i + 1) % n, i] = 1
    return a


def star_adjacency(n: int, center: int = 0) -> np.ndarray:
    a = np.zeros((n, n), dtype=np.uint8)
    for i in range(n):
        if i != center:
            a[i, center] = a[center, i] = 1
    return a


def complete_adjacency(n: int) -> np.ndarray:
    return (np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8))
