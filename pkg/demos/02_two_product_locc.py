"""
Two product states: one-way LOCC reaches the Helstrom bound
===========================================================

For two equiprobable product states |0>|0> and |theta1>|theta2>, Alice
measures in her local Helstrom basis and tells Bob the result; Bob then
picks one of two bases. The success probability equals the global
Helstrom value (1 + sqrt(1 - c^2)) / 2 with c = cos(theta1) cos(theta2).
"""

# %%
import numpy as np

from simulmeas.protocols import bob_angle_eta, helstrom_probability, two_product_locc

grid = np.linspace(0.05, np.pi / 2, 21)[1:]
worst = 0.0
for t1 in grid:
    for t2 in grid:
        got = two_product_locc(t1, t2).evaluate().guess_probability
        worst = max(worst, abs(got - helstrom_probability(np.cos(t1) * np.cos(t2))))
print(f"largest gap to Helstrom over a 20x20 grid: {worst:.2e}")

# %%
# Bob's basis angle eta (a Bloch-sphere angle). After Alice's "+" outcome
# he measures at eta/2 in Hilbert space, after "-" at theta2 - eta/2.
for t1, t2 in [(np.pi / 4, np.pi / 4), (np.pi / 3, np.pi / 6), (0.3, 1.2)]:
    eta = bob_angle_eta(t1, t2)
    print(f"theta1={t1:.4f} theta2={t2:.4f}  eta={eta:+.6f}")

# %%
# The strategy itself, for one point.
proto = two_product_locc(np.pi / 4, np.pi / 4)
print("Alice:", [np.round(e, 4) for e in proto.strategy.alice.elements])
for k, bob in enumerate(proto.strategy.bob_given):
    print(f"Bob after outcome {k}:", [np.round(e, 4) for e in bob.elements])
print(proto.evaluate())
