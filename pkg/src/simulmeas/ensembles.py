"""Prior-weighted ensembles of two-qubit product states."""

import json
from dataclasses import dataclass, field

import numpy as np

from .qcore import (
    KET0,
    KET1,
    KET_MINUS,
    KET_MINUS_I,
    KET_PLUS,
    KET_PLUS_I,
    pure_state,
    state_xz,
)


@dataclass(frozen=True)
class EnsembleItem:
    prior: float
    alice: np.ndarray
    bob: np.ndarray
    label: str
    class_id: int | None = None


@dataclass(frozen=True)
class ProductEnsemble:
    """Alice holds ``alice``, Bob holds ``bob``; item ``s`` occurs with ``prior``.

    ``class_id`` is the optional grouping used for the basis-guess metric.
    Either every item has a class or none does.
    """

    items: tuple
    name: str = "custom"
    class_names: dict = field(default_factory=dict)

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValueError("ensemble needs at least one item")
        fixed = []
        for it in items:
            if not it.prior > 0:
                raise ValueError(f"prior of {it.label!r} must be positive")
            alice = pure_state(it.alice)
            bob = pure_state(it.bob)
            if alice.size != 2 or bob.size != 2:
                raise ValueError("ensemble states must be single qubits")
            fixed.append(EnsembleItem(float(it.prior), alice, bob, str(it.label), it.class_id))
        total = sum(it.prior for it in fixed)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"priors sum to {total!r}, not 1")
        has_class = [it.class_id is not None for it in fixed]
        if any(has_class) and not all(has_class):
            raise ValueError("either every item has a class or none does")
        object.__setattr__(self, "items", tuple(fixed))

    def __len__(self):
        return len(self.items)

    @property
    def priors(self):
        return np.array([it.prior for it in self.items])

    @property
    def labels(self):
        return [it.label for it in self.items]

    @property
    def classes(self):
        """Class id per item, or None when the ensemble is unclassed."""
        if self.items[0].class_id is None:
            return None
        return [it.class_id for it in self.items]

    def to_dict(self):
        def amps(v):
            return [[float(z.real), float(z.imag)] for z in v]

        return {
            "name": self.name,
            "items": [
                {
                    "prior": it.prior,
                    "alice": amps(it.alice),
                    "bob": amps(it.bob),
                    "label": it.label,
                    "class": it.class_id,
                }
                for it in self.items
            ],
        }

    @classmethod
    def from_dict(cls, doc):
        def amps(pairs):
            return np.array([complex(re, im) for re, im in pairs])

        items = [
            EnsembleItem(rec["prior"], amps(rec["alice"]), amps(rec["bob"]), rec.get("label", str(i)), rec.get("class"))
            for i, rec in enumerate(doc["items"])
        ]
        return cls(tuple(items), name=doc.get("name", "custom"))


def save_ensemble(ensemble, path):
    with open(path, "w") as fh:
        json.dump(ensemble.to_dict(), fh, indent=2)


def load_ensemble(path):
    with open(path) as fh:
        return ProductEnsemble.from_dict(json.load(fh))


def _uniform(pairs, name, classes=None, class_names=None):
    p = 1.0 / len(pairs)
    classes = classes or [None] * len(pairs)
    items = tuple(EnsembleItem(p, a, b, lab, c) for (lab, a, b), c in zip(pairs, classes))
    return ProductEnsemble(items, name=name, class_names=class_names or {})


def four_state_scenario():
    """|0>|0>, |0>|1>, |1>|+>, |1>|->, uniformly."""
    return _uniform(
        [
            ("0,0", KET0, KET0),
            ("0,1", KET0, KET1),
            ("1,+", KET1, KET_PLUS),
            ("1,-", KET1, KET_MINUS),
        ],
        "four",
    )


def six_state_scenario():
    """Anti-correlated Pauli eigenstate pairs, classed by basis (Z=0, X=1, Y=2)."""
    return _uniform(
        [
            ("0,1", KET0, KET1),
            ("1,0", KET1, KET0),
            ("+,-", KET_PLUS, KET_MINUS),
            ("-,+", KET_MINUS, KET_PLUS),
            ("+i,-i", KET_PLUS_I, KET_MINUS_I),
            ("-i,+i", KET_MINUS_I, KET_PLUS_I),
        ],
        "six",
        classes=[0, 0, 1, 1, 2, 2],
        class_names={0: "Z", 1: "X", 2: "Y"},
    )


TRINE_ANGLES = (0.0, np.pi / 3, -np.pi / 3)


def peres_wootters_scenario():
    """Both qubits in the same trine state v(a), a in {0, pi/3, -pi/3}."""
    labels = ("v0", "v+", "v-")
    return _uniform([(lab, state_xz(a), state_xz(a)) for lab, a in zip(labels, TRINE_ANGLES)], "pw")


def two_product_scenario(theta1, theta2):
    """|0>|0> versus v(theta1)v(theta2), equiprobable.

    This is the canonical form of any pair of two-qubit product states: local
    unitaries bring both first states to |0> and the second ones into the real
    X-Z plane at their overlap angles.
    """
    for t in (theta1, theta2):
        if not (0.0 <= t <= np.pi / 2):
            raise ValueError(f"angle {t!r} outside [0, pi/2]")
    return _uniform(
        [("psi", KET0, KET0), ("phi", state_xz(theta1), state_xz(theta2))],
        "two_product",
    )


SCENARIOS = {
    "four": four_state_scenario,
    "six": six_state_scenario,
    "pw": peres_wootters_scenario,
    "two_product": two_product_scenario,
}
