"""
Ensembles, strategies and the protocol registry
===============================================

Alice and Bob each hold one qubit of a product state drawn from a known
ensemble. This script builds the three fixed ensembles, evaluates a few
strategies by hand, then walks the registry of named protocols.
"""

# %%
# The four-state ensemble: Alice's qubit says which basis Bob's is in.
import numpy as np

from simulmeas import (
    EntangledSimultaneous,
    Simultaneous,
    adaptive_product_povm,
    bell_basis,
    build_named_protocol,
    evaluate,
    four_state_scenario,
    joint_distribution,
)
from simulmeas.measurements import X_BASIS, Z_BASIS
from simulmeas.protocols import PROTOCOL_IDS

four = four_state_scenario()
for it in four.items:
    print(it.label, np.round(it.alice, 3), np.round(it.bob, 3))

# %%
# Both parties measuring Z, with no communication. Alice learns the basis,
# Bob's Z outcome is only right half the time in the X branch.
m = evaluate(four, Simultaneous(Z_BASIS, Z_BASIS))
print("both Z:", m)

# %%
# With a shared Bell pair, Alice measures her ensemble qubit in Z and her
# half of the pair in Z or X depending on the result. Bob does a Bell
# measurement. Every joint outcome now points at exactly one state.
strat = EntangledSimultaneous(adaptive_product_povm(Z_BASIS, [Z_BASIS, X_BASIS]), bell_basis())
d = joint_distribution(four, strat)
print("entangled:", evaluate(four, strat))
print("states consistent with each (a, b):")
print((d.p > 1e-12).sum(axis=0))

# %%
# The registry holds every named protocol with its expected metrics.
print(f"{'id':18s} {'class':13s} {'guess':>9s} {'info':>9s}")
for pid in PROTOCOL_IDS:
    proto = build_named_protocol(pid)
    got = proto.evaluate()
    print(f"{pid:18s} {proto.resource:13s} {got.guess_probability:9.6f} {got.mutual_information_bits:9.6f}")
