"""Closed-form protocols for the named scenarios, with their expected metrics."""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.optimize import minimize_scalar

from .ensembles import (
    four_state_scenario,
    peres_wootters_scenario,
    six_state_scenario,
    two_product_scenario,
)
from .measurements import (
    X_BASIS,
    Z_BASIS,
    adaptive_product_povm,
    anti_trine_povm,
    basis_povm,
    bell_basis,
    projective_xz,
)
from .qcore import projector
from .strategies import EntangledSimultaneous, Metrics, OneWayLocc, Simultaneous, evaluate

CLOSED_FORM_TOL = 1e-9
APPROX_TOL = 5e-3

LOG2_3 = np.log2(3)
SQRT2 = np.sqrt(2)
SQRT3 = np.sqrt(3)
CBRT4 = 4 ** (1 / 3)

# Printed rotation for the simultaneous Peres-Wootters POVM.
PRINTED_PW_ROTATION = 0.5 * np.arctan((CBRT4 - 1) / SQRT3)


@dataclass(frozen=True)
class NamedProtocol:
    id: str
    scenario: object
    strategy: object
    expected: Metrics
    source: str
    tolerances: dict = field(default_factory=dict)
    approximate: tuple = ()

    @property
    def resource(self):
        return self.strategy.resource

    def tolerance(self, metric):
        return self.tolerances.get(metric, CLOSED_FORM_TOL)

    def evaluate(self):
        return evaluate(self.scenario, self.strategy)


def helstrom_probability(overlap):
    """Best success probability for two equiprobable pure states with |<a|b>| = overlap."""
    if not (0.0 <= overlap <= 1.0):
        raise ValueError(f"overlap {overlap!r} outside [0, 1]")
    return 0.5 * (1.0 + np.sqrt(1.0 - overlap**2))


def helstrom_from_states(rho0, rho1, p0=0.5):
    """Helstrom success probability from the trace norm of p0*rho0 - p1*rho1."""
    gamma = p0 * np.asarray(rho0) - (1 - p0) * np.asarray(rho1)
    return 0.5 * (1.0 + np.abs(np.linalg.eigvalsh(gamma)).sum())


def bob_angle_eta(theta1, theta2):
    """Bloch-sphere rotation of Bob's basis after Alice's "+" outcome.

    Bob uses the Z basis rotated about Y by eta (Bloch angle) if Alice's
    outcome favoured |0>|0>, and by 2*theta2 - eta otherwise.
    """
    if not (0.0 <= theta1 <= np.pi / 2):
        raise ValueError("theta1 must lie in [0, pi/2]")
    if not (0.0 < theta2 <= np.pi / 2):
        raise ValueError("theta2 must lie in (0, pi/2]")
    s1 = np.sin(theta1)
    return float(np.arctan((s1 - 1.0) / (s1 / np.tan(theta2) + np.tan(theta2))))


def two_product_locc(theta1, theta2):
    """One-way LOCC reaching the Helstrom bound for |0>|0> vs v(theta1)v(theta2).

    Alice runs her local Helstrom measurement: Bloch rotation theta1 - pi/2,
    i.e. amplitude angle (theta1 - pi/2)/2. Bob's bases are halved likewise.
    """
    eta = bob_angle_eta(theta1, theta2)
    strategy = OneWayLocc(
        projective_xz((theta1 - np.pi / 2) / 2),
        (projective_xz(eta / 2), projective_xz((2 * theta2 - eta) / 2)),
    )
    overlap = abs(np.cos(theta1) * np.cos(theta2))
    return NamedProtocol(
        "two_product",
        two_product_scenario(theta1, theta2),
        strategy,
        Metrics(float(helstrom_probability(overlap)), None, None),
        "two product states: one-way LOCC hits the Helstrom bound",
    )


def conditional_bob_bases(ensemble, alice):
    """Bob's Helstrom basis for the two states left after each Alice outcome."""
    bases = []
    for e in alice.elements:
        w = [it.prior * float(np.real(np.vdot(it.alice, e @ it.alice))) for it in ensemble.items]
        alive = [s for s, x in enumerate(w) if x > 1e-12]
        if len(alive) != 2:
            raise ValueError(f"expected two surviving states, got {len(alive)}")
        s0, s1 = alive
        gamma = w[s0] * projector(ensemble.items[s0].bob) - w[s1] * projector(ensemble.items[s1].bob)
        _, v = np.linalg.eigh(gamma)
        bases.append(basis_povm([v[:, 1], v[:, 0]], ("+", "-")))
    return tuple(bases)


def _pw_sim_guess(delta):
    scen = peres_wootters_scenario()
    p = anti_trine_povm(delta)
    return evaluate(scen, Simultaneous(p, p)).guess_probability


@lru_cache(maxsize=1)
def optimal_trine_rotation():
    """Rotation of the anti-trine (same on both sides) maximizing the
    simultaneous guess probability on the Peres-Wootters ensemble.

    The objective has period pi/3 and is even in delta, so [0, pi/6] covers
    every inequivalent rotation.
    """
    res = minimize_scalar(
        lambda d: -_pw_sim_guess(d),
        bounds=(0.0, np.pi / 6),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return float(res.x)


def _fold(x):
    """Reduce a trine-POVM offset modulo the pi/3 period and reflection."""
    x = np.mod(x, np.pi / 3)
    return float(min(x, np.pi / 3 - x))


def rotation_conventions(delta):
    """The same rotation read in four angle conventions.

    ``delta`` is the Hilbert-space offset from the anti-trine vectors.
    """
    from_trine = _fold(delta + np.pi / 6)
    return {
        "hilbert_from_antitrine": _fold(delta),
        "bloch_from_antitrine": 2 * _fold(delta),
        "hilbert_from_trine": from_trine,
        "bloch_from_trine": 2 * from_trine,
    }


def match_printed_rotation(delta, printed=PRINTED_PW_ROTATION, tol=1e-6):
    """Which convention (and integer factor) reproduces the printed angle."""
    hits = []
    for name, value in rotation_conventions(delta).items():
        for factor in (1, 2, 4):
            if abs(value - factor * printed) < tol:
                hits.append((name, factor))
    return hits


def _m(guess, cls=None, info=None):
    def f(x):
        return None if x is None else float(x)

    return Metrics(f(guess), f(cls), f(info))


def _registry():
    four = four_state_scenario()
    six = six_state_scenario()
    pw = peres_wootters_scenario()
    at0 = anti_trine_povm(0.0)

    a_plus = (3 + 2 * SQRT2) / 12
    info_six_guess = ((3 + 2 * SQRT2) * np.log2(3 + 2 * SQRT2) + (3 - 2 * SQRT2) * np.log2(3 - 2 * SQRT2)) / 12 - 2 / 3
    xz_plus, xz_minus = projective_xz(np.pi / 8), projective_xz(-np.pi / 8)

    delta = optimal_trine_rotation()
    rotated = anti_trine_povm(delta)

    entries = [
        NamedProtocol(
            "four.locc", four, OneWayLocc(Z_BASIS, (Z_BASIS, X_BASIS)), _m(1.0, None, 2.0),
            "four states; Alice Z, Bob Z or X by her result",
        ),
        NamedProtocol(
            "four.sim.guess", four, Simultaneous(Z_BASIS, xz_plus),
            _m((2 + SQRT2) / 4, None, (2 - SQRT2 * np.log2(3 - 2 * SQRT2)) / 4),
            "four states; Alice Z, Bob (X+Z)/sqrt2",
        ),
        NamedProtocol(
            "four.sim.info", four, Simultaneous(Z_BASIS, Z_BASIS), _m(0.75, None, 1.5),
            "four states; both Z",
        ),
        NamedProtocol(
            "four.ent", four,
            EntangledSimultaneous(adaptive_product_povm(Z_BASIS, [Z_BASIS, X_BASIS]), bell_basis()),
            _m(1.0, None, 2.0),
            "four states + Bell pair; Alice Z then Z/X on her half, Bob Bell basis",
        ),
        NamedProtocol(
            "six.oneway.guess", six, OneWayLocc(xz_plus, (xz_minus, xz_minus)),
            _m(a_plus, 0.5, info_six_guess),
            "six states; Alice (X+Z)/sqrt2, Bob (X-Z)/sqrt2",
        ),
        NamedProtocol(
            "six.sim.guess", six, Simultaneous(xz_plus, xz_minus),
            _m(a_plus, 0.5, info_six_guess),
            "six states; same bases without communication",
        ),
        NamedProtocol(
            "six.sim.info", six, Simultaneous(Z_BASIS, X_BASIS), _m(1 / 3, 1 / 3, 2 / 3),
            "six states; Alice Z, Bob X",
        ),
        NamedProtocol(
            "six.ent", six, EntangledSimultaneous(bell_basis(), bell_basis()),
            _m(1 / 3, 2 / 3, LOG2_3 / 2),
            "six states + Bell pair; both Bell basis",
        ),
        NamedProtocol(
            "pw.oneway", pw, OneWayLocc(at0, conditional_bob_bases(pw, at0)),
            _m((2 + SQRT3) / 4, None, LOG2_3 + SQRT3 * np.log2(2 + SQRT3) / 2 - 2),
            "trine pairs; Alice anti-trine, Bob Helstrom on the two survivors",
        ),
        NamedProtocol(
            "pw.ent", pw,
            # outcome 0 rules out v0 = |0>: X separates the other two, else Z
            EntangledSimultaneous(adaptive_product_povm(at0, [X_BASIS, Z_BASIS, Z_BASIS]), bell_basis()),
            _m((9 + SQRT3) / 12, None, LOG2_3 + (2 * SQRT3 * np.log2(2 + SQRT3) - 5 * np.log2(5)) / 12),
            "trine pairs + Bell pair; Alice anti-trine then X/Z, Bob Bell basis",
        ),
        NamedProtocol(
            "pw.sim.guess", pw, Simultaneous(rotated, rotated),
            _m(1 / (6 - 3 * CBRT4), None, 0.867),
            "trine pairs; both rotated anti-trine",
            tolerances={"info": APPROX_TOL},
            approximate=("info",),
        ),
        NamedProtocol(
            "pw.sim.info", pw, Simultaneous(at0, at0), _m(0.75, None, LOG2_3 - 0.5),
            "trine pairs; both anti-trine",
        ),
    ]
    return {p.id: p for p in entries}


@lru_cache(maxsize=1)
def registry():
    """The twelve fixed protocols keyed by id (two_product is built on demand)."""
    return _registry()


PROTOCOL_IDS = (
    "four.locc",
    "four.sim.guess",
    "four.sim.info",
    "four.ent",
    "six.oneway.guess",
    "six.sim.guess",
    "six.sim.info",
    "six.ent",
    "pw.oneway",
    "pw.ent",
    "pw.sim.guess",
    "pw.sim.info",
)
PARAMETRIC_IDS = ("two_product",)


def build_named_protocol(id, theta1=np.pi / 4, theta2=np.pi / 4):
    if id == "two_product":
        return two_product_locc(theta1, theta2)
    try:
        return registry()[id]
    except KeyError:
        raise KeyError(f"unknown protocol {id!r}") from None
