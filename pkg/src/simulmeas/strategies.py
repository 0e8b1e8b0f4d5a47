"""Measurement strategies for the three resource classes and their statistics.

Qubit layout for the entangled class: q0 is Alice's ensemble qubit, (q1, q2)
is the shared Bell pair (|00> + |11>)/sqrt(2), q3 is Bob's ensemble qubit.
Alice's dim-4 POVM acts on (q0, q1) and Bob's on (q2, q3), both big-endian.
"""

import csv
from dataclasses import dataclass

import numpy as np

from .measurements import Povm, validate_povm

NEG_CLAMP = 1e-12
BELL_PAIR = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)

SIMULTANEOUS = "simultaneous"
ONE_WAY_LOCC = "oneway"
ENTANGLED = "entangled"
RESOURCE_CLASSES = (SIMULTANEOUS, ONE_WAY_LOCC, ENTANGLED)


class StrategyError(ValueError):
    pass


def _check(p, dim, who):
    if not isinstance(p, Povm):
        raise StrategyError(f"{who} must be a Povm")
    if p.dim != dim:
        raise StrategyError(f"{who} must act on dimension {dim}, got {p.dim}")
    problems = validate_povm(p)
    if problems:
        raise StrategyError(f"{who}: " + "; ".join(problems))


@dataclass(frozen=True)
class Simultaneous:
    alice: Povm
    bob: Povm
    resource = SIMULTANEOUS

    def __post_init__(self):
        _check(self.alice, 2, "alice")
        _check(self.bob, 2, "bob")

    def povms(self):
        return [self.alice, self.bob]


@dataclass(frozen=True)
class OneWayLocc:
    """Alice measures, announces her outcome a, Bob measures ``bob_given[a]``."""

    alice: Povm
    bob_given: tuple
    resource = ONE_WAY_LOCC

    def __post_init__(self):
        object.__setattr__(self, "bob_given", tuple(self.bob_given))
        _check(self.alice, 2, "alice")
        if len(self.bob_given) != len(self.alice):
            raise StrategyError("need one Bob POVM per Alice outcome")
        for i, p in enumerate(self.bob_given):
            _check(p, 2, f"bob_given[{i}]")

    def povms(self):
        return [self.alice, *self.bob_given]


@dataclass(frozen=True)
class EntangledSimultaneous:
    alice: Povm
    bob: Povm
    resource = ENTANGLED

    def __post_init__(self):
        _check(self.alice, 4, "alice")
        _check(self.bob, 4, "bob")

    def povms(self):
        return [self.alice, self.bob]


@dataclass(frozen=True)
class JointDistribution:
    """p[s, a, b] with state labels and outcome labels.

    ``bob_labels[a]`` are Bob's outcome labels in Alice's branch ``a``; for
    one-way strategies with unequal branch sizes the table is zero-padded.
    """

    p: np.ndarray
    priors: np.ndarray
    state_labels: tuple
    alice_labels: tuple
    bob_labels: tuple
    classes: tuple | None = None

    @property
    def total(self):
        return float(self.p.sum())


@dataclass(frozen=True)
class Metrics:
    guess_probability: float
    class_guess_probability: float | None
    mutual_information_bits: float

    def as_dict(self):
        return {
            "guess": self.guess_probability,
            "class": self.class_guess_probability,
            "info": self.mutual_information_bits,
        }


def _clamp(p):
    lo = p.min()
    if lo < -NEG_CLAMP:
        raise StrategyError(f"negative probability {lo:.3g}")
    return np.where(p < 0, 0.0, p)


def _probs(stack, kets):
    """<v|E_k|v> for every ket v (rows) and element k: shape (n_kets, n_elements)."""
    return np.real(np.einsum("si,kij,sj->sk", kets.conj(), stack, kets))


def entangled_state_matrix(alice_ket, bob_ket):
    """Amplitudes of q0 (x) Bell(q1,q2) (x) q3 reshaped to (q0q1) x (q2q3)."""
    psi = np.kron(np.kron(alice_ket, BELL_PAIR), bob_ket)
    return psi.reshape(4, 4)


def joint_distribution(ensemble, strategy):
    priors = ensemble.priors
    alice_kets = np.array([it.alice for it in ensemble.items])
    bob_kets = np.array([it.bob for it in ensemble.items])
    a_labels = strategy.alice.labels
    if isinstance(strategy, Simultaneous):
        pa = _probs(strategy.alice.stack(), alice_kets)
        pb = _probs(strategy.bob.stack(), bob_kets)
        p = priors[:, None, None] * pa[:, :, None] * pb[:, None, :]
        b_labels = tuple(strategy.bob.labels for _ in a_labels)
    elif isinstance(strategy, OneWayLocc):
        pa = _probs(strategy.alice.stack(), alice_kets)
        nb = max(len(q) for q in strategy.bob_given)
        p = np.zeros((len(priors), len(a_labels), nb))
        for a, q in enumerate(strategy.bob_given):
            p[:, a, : len(q)] = priors[:, None] * pa[:, a, None] * _probs(q.stack(), bob_kets)
        b_labels = tuple(q.labels for q in strategy.bob_given)
    elif isinstance(strategy, EntangledSimultaneous):
        ea, fb = strategy.alice.stack(), strategy.bob.stack()
        p = np.empty((len(priors), len(ea), len(fb)))
        for s, (x, y) in enumerate(zip(alice_kets, bob_kets)):
            m = entangled_state_matrix(x, y)
            p[s] = priors[s] * np.real(np.einsum("ik,aij,bkl,jl->ab", m.conj(), ea, fb, m))
        b_labels = tuple(strategy.bob.labels for _ in a_labels)
    else:
        raise StrategyError(f"unknown strategy type {type(strategy).__name__}")
    classes = ensemble.classes
    return JointDistribution(
        _clamp(p),
        priors,
        tuple(ensemble.labels),
        tuple(a_labels),
        b_labels,
        tuple(classes) if classes is not None else None,
    )


def guess_probability(d):
    """MAP success probability: sum over joint outcomes of max_s p(s, a, b)."""
    p = d.p if isinstance(d, JointDistribution) else d
    return float(p.max(axis=0).sum())


def class_guess_probability(d, classes=None):
    """Probability of guessing the class of the state by MAP over classes."""
    p = d.p if isinstance(d, JointDistribution) else d
    if classes is None:
        classes = getattr(d, "classes", None)
    if classes is None:
        raise ValueError("ensemble has no classes")
    classes = np.asarray(classes)
    per_class = np.array([p[classes == c].sum(axis=0) for c in np.unique(classes)])
    return float(per_class.max(axis=0).sum())


def mutual_information_bits(d):
    """I(S; A, B) in bits."""
    p = d.p if isinstance(d, JointDistribution) else d
    ps = p.sum(axis=(1, 2))
    pab = p.sum(axis=0)
    denom = ps[:, None, None] * pab[None, :, :]
    mask = p > 0
    return max(float(np.sum(p[mask] * np.log2(p[mask] / denom[mask]))), 0.0)


def metrics_from_distribution(d):
    return Metrics(
        guess_probability(d),
        class_guess_probability(d) if d.classes is not None else None,
        mutual_information_bits(d),
    )


def evaluate(ensemble, strategy):
    return metrics_from_distribution(joint_distribution(ensemble, strategy))


def write_distribution_csv(d, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["state_label", "alice_outcome", "bob_outcome", "probability"])
        for s, slab in enumerate(d.state_labels):
            for a, alab in enumerate(d.alice_labels):
                for b, blab in enumerate(d.bob_labels[a]):
                    w.writerow([slab, alab, blab, repr(float(d.p[s, a, b]))])


# -- JSON-style documents -------------------------------------------------


def _matrix_to_doc(m):
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]


def _matrix_from_doc(rows):
    return np.array([[complex(re, im) for re, im in row] for row in rows])


def povm_to_doc(p):
    return {"elements": [_matrix_to_doc(e) for e in p.elements], "labels": list(p.labels)}


def povm_from_doc(doc):
    if isinstance(doc, list):
        return Povm(tuple(_matrix_from_doc(m) for m in doc), ())
    return Povm(tuple(_matrix_from_doc(m) for m in doc["elements"]), tuple(doc.get("labels", ())))


def strategy_to_doc(s):
    doc = {"class": s.resource, "alice_povm": povm_to_doc(s.alice)}
    if isinstance(s, OneWayLocc):
        doc["bob_given"] = [povm_to_doc(q) for q in s.bob_given]
    else:
        doc["bob_povm"] = povm_to_doc(s.bob)
    return doc


def strategy_from_doc(doc):
    cls = doc["class"]
    alice = povm_from_doc(doc["alice_povm"])
    if cls == SIMULTANEOUS:
        return Simultaneous(alice, povm_from_doc(doc["bob_povm"]))
    if cls == ONE_WAY_LOCC:
        return OneWayLocc(alice, tuple(povm_from_doc(q) for q in doc["bob_given"]))
    if cls == ENTANGLED:
        return EntangledSimultaneous(alice, povm_from_doc(doc["bob_povm"]))
    raise StrategyError(f"unknown strategy class {cls!r}")
