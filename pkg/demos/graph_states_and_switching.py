# %% [markdown]
# # Graph states, program states and code switching
#
# Every stabilizer state is a graph state up to local Cliffords.  The
# encoded `|0_L>` of the five-qubit code turns out to be a ring.

# %%
from saqec import build_code
from saqec.code_switch import build_program_state, encoded_state, rm15_steane_spec, switch, transversal_gate_check
from saqec.stabilizer import correlator_group, graph_state_in_orbit, ring_adjacency, to_graph_state
from saqec.stabilizer.tableau import expectation

zero = correlator_group(build_code("five_qubit"))
g = to_graph_state(zero)
print("first graph found:", g.edges())
ring = graph_state_in_orbit(zero, ring_adjacency(5))
print("ring edges:", ring.edges())
print("local Clifford words:", ring.local_cliffords)

# %% [markdown]
# A logical Clifford can be stored as an encoded Choi ("program") state.

# %%
prog = build_program_state([("H", 0), ("CNOT", 0, 1)], build_code("five_qubit"))
print(prog.n, "qubits,", len(prog.generators), "generators")

# %% [markdown]
# Switching between the 15-qubit Reed-Muller code (transversal T) and the
# Steane code (transversal H) by measuring the other gauge.

# %%
spec = rm15_steane_spec()
lx, lz = spec.logical_x[0], spec.logical_z[0]
state = encoded_state(spec.code("a"), "X", -1)
for direction in ("a_to_b", "b_to_a"):
    state, rec = switch(state, spec, direction, outcomes=[-1] * 6 if direction == "a_to_b" else None)
    print(direction, "outcomes", rec.outcomes, " <X_L> =", expectation(state, lx), " <Z_L> =", expectation(state, lz))

# %%
for code, gate in [("steane", "H"), ("steane", "S"), ("steane", "T"), ("reed_muller_15", "T")]:
    v = transversal_gate_check(code, gate)
    print(f"{code:15s} {gate}: {v.verdict}")
