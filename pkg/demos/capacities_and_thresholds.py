# %% [markdown]
# # Capacities of a known state versus an unknown one
#
# Protecting an arbitrary state is limited by the coherent information
# `I_c = S(B) - S(E)`.  When the sender knows the state, the relevant
# quantity becomes half the mutual information `I / 2`.  This notebook
# compares the two for the standard qubit noise families.

# %%
import numpy as np

from saqec import build_family, info_report, maximize_capacity
from saqec.threshold import find_threshold

# %% [markdown]
# Dephasing first, where both optimizers should land on closed forms
# `1 - h(p)` and `1 - h(p)/2`.

# %%
def h2(p):
    return 0.0 if p in (0, 1) else -p * np.log2(p) - (1 - p) * np.log2(1 - p)


for p in np.linspace(0, 0.5, 6):
    ch = build_family("dephasing", p)
    q = maximize_capacity(ch, "coherent", seed=0).value
    qsa = maximize_capacity(ch, "mutual", seed=0).value
    print(f"p={p:.1f}  I_c={q:.5f} (closed {1 - h2(p):.5f})   I/2={qsa:.5f} (closed {1 - h2(p) / 2:.5f})")

# %% [markdown]
# The entropic bookkeeping behind a single evaluation.  `I = S_A + I_c`
# holds by construction, `S_B - S_{B|A}` is the other route.

# %%
rep = info_report(np.eye(2) / 2, build_family("depolarizing", 0.2))
print({k: round(v, 6) for k, v in rep.as_dict().items()})

# %% [markdown]
# Thresholds: the smallest noise level where each functional hits zero.
# Depolarizing noise loses coherent information at the hashing point, while
# the known-state functional survives up to complete depolarization.

# %%
for family in ("depolarizing", "amplitude_damping", "erasure", "dephasing"):
    c = find_threshold(family, "coherent_1letter")
    m = find_threshold(family, "mutual_half", allow_boundary=True)
    edge = " (never vanishes inside the domain)" if m.boundary else ""
    print(f"{family:18s} coherent {c.lambda_star:.5f}   mutual/2 {m.lambda_star:.5f}{edge}")
