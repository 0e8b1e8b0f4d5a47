"""
Does a shared Bell pair help on the six-state ensemble?
=======================================================

Without entanglement the best simultaneous guess probability is
(3 + 2 sqrt 2)/12 ~ 0.4857, and a positive-partial-transpose relaxation
shows no separable measurement does better. With a Bell pair and 4x4
POVMs per party, the search below finds strategies that clearly exceed
that value. The result is cross-checked with a plain 16-dimensional
Born-rule computation.
"""

# %%
from functools import reduce

import numpy as np

from simulmeas import OptimizerConfig, probe_entangled_bound, six_state_scenario

six = six_state_scenario()
cfg = OptimizerConfig(restarts=10, seed=7, alice_outcomes=4, bob_outcomes=4, tolerance=1e-7, max_iterations=300)
res = probe_entangled_bound(six, cfg)
print(f"best entangled guess over {cfg.restarts} restarts: {res.objective_value:.6f}")
print("per restart:", np.round(res.restart_trace, 4))
print(f"unentangled optimum: {(3 + 2 * np.sqrt(2)) / 12:.6f}")

# %%
# Independent check: build each 16-dim state |a> (x) |Phi+> (x) |b> and take
# Tr[(E (x) F) rho] directly.
bell = np.array([1, 0, 0, 1]) / np.sqrt(2)
strat = res.best_strategy
table = np.array(
    [
        [[it.prior * np.real(np.vdot(psi, np.kron(e, f) @ psi)) for f in strat.bob.elements] for e in strat.alice.elements]
        for it in six.items
        for psi in [reduce(np.kron, [it.alice, bell, it.bob])]
    ]
)
print(f"explicit Born rule guess: {table.max(axis=0).sum():.6f}")

# %%
# How entangled are the winning POVM elements across (ensemble qubit, pair qubit)?
for name, p in (("alice", strat.alice), ("bob", strat.bob)):
    for e in p.elements:
        w, v = np.linalg.eigh(e)
        top = v[:, -1].reshape(2, 2)
        print(name, "weight", round(w[-1], 4), "Schmidt", np.round(np.linalg.svd(top, compute_uv=False), 4))
