# %% [markdown]
# # Decoding when the encoded state is known
#
# The five-qubit code corrects any single-qubit error on an unknown logical
# state.  If the logical state is a known basis state, its full stabilizer
# group (code stabilizers plus the signed logical operator) can be measured
# instead, and many more errors become harmless.

# %%
import numpy as np

from saqec import build_code, dense_code_from_stabilizer, kl_check
from saqec.qec_core import pauli_errors, sa_protect_cycle
from saqec.channels import build_family, iid
from saqec.sa_decoder import exact_failure_probability, exhaustive_eval, paired_monte_carlo, standard_table, state_adaptive_table

code = build_code("five_qubit")

# %% [markdown]
# Knill-Laflamme: single-qubit errors satisfy the condition with `c = I`,
# two-qubit errors do not.

# %%
dense = dense_code_from_stabilizer(code)
print("weight <= 1 exact:", kl_check(dense, pauli_errors(5, 1)).exact)
print("weight <= 2 exact:", kl_check(dense, pauli_errors(5, 2)).exact)

# %% [markdown]
# Exhaustive lookup-table decoding of all 4^5 Paulis acting on `|0_L>`.

# %%
std, sa = standard_table(code), state_adaptive_table(code)
print("standard:", exhaustive_eval(std).correctable_count, "/ 1024")
print("state-adaptive:", exhaustive_eval(sa).correctable_count, "/ 1024")

# %% [markdown]
# Monte Carlo with iid depolarizing noise, compared with the exact failure
# probability of the standard decoder.  Both decoders see the same errors.

# %%
for p in (0.02, 0.05, 0.1, 0.2):
    r_std, r_sa = paired_monte_carlo(code, p, 0.0, 50_000, seed=1)
    exact = exact_failure_probability(std, p)
    print(f"p={p:.2f}  standard {r_std.logical_error_rate:.4f} +- {r_std.std_error:.4f} "
          f"(exact {exact:.4f})   state-adaptive {r_sa.logical_error_rate:.4f}")

# %% [markdown]
# Noisy syndrome bits hurt both decoders.

# %%
for q in (0.01, 0.05):
    r_std, r_sa = paired_monte_carlo(code, 0.05, q, 50_000, seed=2)
    print(f"q={q:.2f}  standard {r_std.logical_error_rate:.4f}   state-adaptive {r_sa.logical_error_rate:.4f}")

# %% [markdown]
# The same comparison with continuous recovery maps: the Petz map of the
# encoded known state against the code-projector transpose channel.

# %%
for p in (0.05, 0.2):
    ch = iid(build_family("depolarizing", p), 5)
    src = np.diag([1.0, 0.0])
    a = sa_protect_cycle(src, dense, ch, "state")
    b = sa_protect_cycle(src, dense, ch, "transpose")
    print(f"p={p}: known-state Petz {a.fidelity:.6f}, transpose channel {b.fidelity:.6f}")
