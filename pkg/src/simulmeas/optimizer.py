"""Derivative-free search over measurement strategies.

Every POVM is stored as an isometry W (W^dag W = I) cut into row blocks
W_a; element a is W_a^dag W_a. The search perturbs the real and imaginary
parts of W one coordinate at a time, re-orthonormalizes, and keeps the move
if the objective improves (compass / pattern search with a shrinking step).
Holding all other POVMs fixed, one POVM's contribution to p(s, a, b) is
cheap to recompute, which is what makes the coordinate loop affordable.

Random streams come from numpy's PCG64 seeded with ``(seed, restart)``, so a
restart's result does not depend on which other restarts ran.
"""

import csv
import enum
from dataclasses import dataclass, field

import numpy as np

from .measurements import Povm
from .qcore import psd_sqrt
from .strategies import (
    ENTANGLED,
    ONE_WAY_LOCC,
    RESOURCE_CLASSES,
    SIMULTANEOUS,
    EntangledSimultaneous,
    OneWayLocc,
    Simultaneous,
    entangled_state_matrix,
    evaluate,
)


class Objective(str, enum.Enum):
    GUESS = "guess"
    CLASS = "class"
    INFO = "info"

    def of(self, metrics):
        if self is Objective.GUESS:
            return metrics.guess_probability
        if self is Objective.CLASS:
            return metrics.class_guess_probability
        return metrics.mutual_information_bits


@dataclass(frozen=True)
class OptimizerConfig:
    restarts: int = 50
    max_iterations: int = 2000
    tolerance: float = 1e-10
    seed: int = 0
    alice_outcomes: int | None = None
    bob_outcomes: int | None = None
    objective: Objective = Objective.GUESS
    initial_step: float = 0.3
    min_step: float = 1e-6
    shrink: float = 0.5
    element_rank: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "objective", Objective(self.objective))
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be > 0")
        for n in (self.alice_outcomes, self.bob_outcomes):
            if n is not None and n < 1:
                raise ValueError("outcome counts must be >= 1")
        if not (0 < self.shrink < 1) or not (0 < self.min_step < self.initial_step):
            raise ValueError("need 0 < shrink < 1 and 0 < min_step < initial_step")
        if self.element_rank is not None and self.element_rank < 1:
            raise ValueError("element_rank must be >= 1")


@dataclass
class OptimizationResult:
    best_strategy: object
    best_metrics: object
    objective_value: float
    restart_trace: list
    iterations: list = field(default_factory=list)
    round_trace: list = field(default_factory=list)


# -- isometry parametrization ---------------------------------------------


def default_rank(dim, outcomes):
    """Rows per element: rank one when there are enough outcomes to span."""
    return 1 if outcomes >= dim else dim


def orthonormalize(g):
    """Closest column-orthonormal matrix, G (G^dag G)^(-1/2); None if singular."""
    w, v = np.linalg.eigh(g.conj().T @ g)
    if w[0] < 1e-12 * max(w[-1], 1e-300):
        return None
    return g @ ((v * w**-0.5) @ v.conj().T)


def isometry_to_povm(w, outcomes, labels=None):
    d = w.shape[1]
    blocks = w.reshape(outcomes, -1, d)
    elements = np.matmul(blocks.conj().transpose(0, 2, 1), blocks)
    elements = 0.5 * (elements + elements.conj().transpose(0, 2, 1))
    return Povm(tuple(elements), tuple(labels) if labels else ())


def povm_to_isometry(p):
    """Stack Hermitian square roots of the elements (dim rows each)."""
    return np.concatenate([psd_sqrt(e) for e in p.elements], axis=0)


def random_isometry(rng, dim, outcomes, rank=None):
    rank = default_rank(dim, outcomes) if rank is None else rank
    if outcomes * rank < dim:
        raise ValueError("too few rows for an isometry")
    while True:
        g = rng.standard_normal((outcomes * rank, dim)) + 1j * rng.standard_normal((outcomes * rank, dim))
        w = orthonormalize(g)
        if w is not None:
            return w


def random_povm(rng, dim, outcomes, rank=None):
    """Random POVM from a Gaussian matrix made column-orthonormal.

    ``rng`` is a numpy Generator or an integer seed.
    """
    if outcomes < 1:
        raise ValueError("outcomes must be >= 1")
    if not isinstance(rng, np.random.Generator):
        rng = np.random.default_rng(rng)
    if rank is None:
        rank = dim
    return isometry_to_povm(random_isometry(rng, dim, outcomes, rank), outcomes)


def restart_rng(seed, restart):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([int(seed), int(restart)])))


# -- objective landscape --------------------------------------------------


class _Landscape:
    """p(s, a, b) and the objective as a function of one isometry block.

    Block 0 is Alice's POVM. Block 1 is Bob's (simultaneous / entangled);
    for one-way LOCC, blocks 1..nA are Bob's POVMs given Alice's outcome.
    """

    def __init__(self, ensemble, resource, n_a, n_b, objective):
        if resource not in RESOURCE_CLASSES:
            raise ValueError(f"unknown resource class {resource!r}")
        self.resource = resource
        self.n_a, self.n_b = n_a, n_b
        self.objective = Objective(objective)
        self.priors = ensemble.priors
        self.alice = np.array([it.alice for it in ensemble.items])
        self.bob = np.array([it.bob for it in ensemble.items])
        self.dim = 4 if resource == ENTANGLED else 2
        classes = ensemble.classes
        if self.objective is Objective.CLASS and classes is None:
            raise ValueError("class objective needs an ensemble with classes")
        if classes is not None:
            classes = np.asarray(classes)
            self.class_matrix = np.array([(classes == c).astype(float) for c in np.unique(classes)])
        if resource == ENTANGLED:
            self.m = np.array([entangled_state_matrix(x, y) for x, y in zip(self.alice, self.bob)])
        self.n_blocks = 1 + (n_a if resource == ONE_WAY_LOCC else 1)

    def outcomes(self, k):
        return self.n_a if k == 0 else self.n_b

    # Per-block partial results: for product classes, outcome probabilities
    # of the block's own qubit; for the entangled class, the element stack.
    def partial(self, k, w):
        n = self.outcomes(k)
        if self.resource == ENTANGLED:
            blocks = w.reshape(n, -1, self.dim)
            return np.matmul(blocks.conj().transpose(0, 2, 1), blocks)
        kets = self.alice if k == 0 else self.bob
        y = w @ kets.T
        return (np.abs(y) ** 2).reshape(n, -1, len(kets)).sum(axis=1).T

    def environment(self, k, partials):
        """Everything block ``k`` needs from the others to build p(s, a, b)."""
        if self.resource == ENTANGLED:
            other = partials[1 - k]
            if k == 0:
                env = np.einsum("sik,bkl,sjl->sbij", self.m.conj(), other, self.m)
            else:
                env = np.einsum("sik,aij,sjl->sakl", self.m.conj(), other, self.m)
            s, n = env.shape[:2]
            return env.reshape(s * n, -1).T
        if self.resource == SIMULTANEOUS:
            return partials[1 - k]
        if k == 0:
            return np.stack([partials[j + 1] for j in range(self.n_a)], axis=1)
        return partials[0][:, k - 1]

    def joint(self, k, part, env):
        pr = self.priors
        if self.resource == ENTANGLED:
            n = part.shape[0]
            p = np.real(part.reshape(n, -1) @ env).reshape(n, len(pr), -1)
            p = p.transpose(1, 0, 2) if k == 0 else p.transpose(1, 2, 0)
            return p * pr[:, None, None]
        if self.resource == SIMULTANEOUS:
            pa, pb = (part, env) if k == 0 else (env, part)
            return pr[:, None, None] * pa[:, :, None] * pb[:, None, :]
        if k == 0:
            return pr[:, None, None] * part[:, :, None] * env
        # only Alice's branch k-1 changes; the rest is folded in by the caller
        return pr[:, None] * env[:, None] * part

    def value(self, p):
        obj = self.objective
        if obj is Objective.GUESS:
            return p.max(axis=0).sum()
        if obj is Objective.CLASS:
            return np.tensordot(self.class_matrix, p, axes=1).max(axis=0).sum()
        ps = p.sum(axis=(1, 2))
        pab = p.sum(axis=0)
        denom = ps[:, None, None] * pab[None]
        mask = p > 0
        return float(np.sum(p[mask] * np.log2(p[mask] / denom[mask])))

    def strategy(self, ws):
        if self.resource == SIMULTANEOUS:
            return Simultaneous(isometry_to_povm(ws[0], self.n_a), isometry_to_povm(ws[1], self.n_b))
        if self.resource == ENTANGLED:
            return EntangledSimultaneous(isometry_to_povm(ws[0], self.n_a), isometry_to_povm(ws[1], self.n_b))
        return OneWayLocc(
            isometry_to_povm(ws[0], self.n_a),
            tuple(isometry_to_povm(w, self.n_b) for w in ws[1:]),
        )


_NOISE = 1e-15


class _BlockSearch:
    """Coordinate pattern search with the other blocks frozen."""

    def __init__(self, land, ws):
        self.land = land
        self.ws = [w.copy() for w in ws]
        self.partials = [land.partial(k, w) for k, w in enumerate(self.ws)]
        self.p = None
        self.current = None

    def _joint_full(self, k, part, env):
        land = self.land
        if land.resource != ONE_WAY_LOCC or k == 0:
            return land.joint(k, part, env)
        p = self.p.copy()
        p[:, k - 1, :] = land.joint(k, part, env)
        return p

    def total(self):
        env = self.land.environment(0, self.partials)
        self.p = self.land.joint(0, self.partials[0], env)
        self.current = self.land.value(self.p)
        return self.current

    def sweep_block(self, k, step):
        """One opportunistic pass over block k's coordinates."""
        land = self.land
        env = land.environment(k, self.partials)
        w = self.ws[k]
        x = np.ascontiguousarray(w).view(np.float64).reshape(-1).copy()
        for j in range(x.size):
            for sign in (1.0, -1.0):
                x[j] += sign * step
                cand = orthonormalize(x.view(np.complex128).reshape(w.shape))
                if cand is not None:
                    part = land.partial(k, cand)
                    p = self._joint_full(k, part, env)
                    val = land.value(p)
                    if val > self.current + _NOISE:
                        self.current = val
                        self.p = p
                        self.partials[k] = part
                        w = cand
                        x = np.ascontiguousarray(w).view(np.float64).reshape(-1).copy()
                        break
                x[j] -= sign * step
        self.ws[k] = w

    def run(self, blocks, config):
        """Sweep until the step falls below ``min_step``.

        A sweep gaining less than ``config.tolerance`` shrinks the step.
        Returns the number of sweeps.
        """
        step = config.initial_step
        self.total()
        it = 0
        while step >= config.min_step and it < config.max_iterations:
            it += 1
            before = self.current
            for k in blocks:
                self.sweep_block(k, step)
            if self.current - before < config.tolerance:
                step *= config.shrink
        return it


def _outcome_counts(resource, config):
    d = 4 if resource == ENTANGLED else 2
    default = d * d
    return (config.alice_outcomes or default, config.bob_outcomes or default)


def _run_restart(ensemble, resource, config, restart):
    n_a, n_b = _outcome_counts(resource, config)
    land = _Landscape(ensemble, resource, n_a, n_b, config.objective)
    rng = restart_rng(config.seed, restart)
    ws = [random_isometry(rng, land.dim, land.outcomes(k), config.element_rank) for k in range(land.n_blocks)]
    search = _BlockSearch(land, ws)
    iterations = search.run(range(land.n_blocks), config)
    strategy = land.strategy(search.ws)
    metrics = evaluate(ensemble, strategy)
    return strategy, metrics, float(config.objective.of(metrics)), iterations


def optimize(ensemble, resource, config=None):
    """Best strategy of a resource class found from ``config.restarts`` random starts."""
    config = config or OptimizerConfig()
    if config.objective is Objective.CLASS and ensemble.classes is None:
        raise ValueError("class objective needs an ensemble with classes")
    best = None
    trace, iters = [], []
    for r in range(config.restarts):
        strategy, metrics, value, n_it = _run_restart(ensemble, resource, config, r)
        trace.append(value)
        iters.append(n_it)
        if best is None or value > best[2]:
            best = (strategy, metrics, value)
    return OptimizationResult(best[0], best[1], best[2], trace, iters)


def _strategy_blocks(strategy):
    if isinstance(strategy, OneWayLocc):
        return ONE_WAY_LOCC, [strategy.alice, *strategy.bob_given]
    if isinstance(strategy, EntangledSimultaneous):
        return ENTANGLED, [strategy.alice, strategy.bob]
    if isinstance(strategy, Simultaneous):
        return SIMULTANEOUS, [strategy.alice, strategy.bob]
    raise ValueError(f"unsupported strategy {type(strategy).__name__}")


def alternating_refine(ensemble, start, config=None):
    """Improve Alice with Bob fixed, then Bob with Alice fixed, until a round
    gains less than ``config.tolerance``.

    For one-way LOCC each of Bob's conditional POVMs is refined on its own.
    ``round_trace`` holds the objective after every round (non-decreasing).
    """
    config = config or OptimizerConfig()
    resource, povms = _strategy_blocks(start)
    n_b = {len(p) for p in povms[1:]}
    if len(n_b) != 1:
        raise ValueError("Bob's conditional POVMs must have equal outcome counts")
    land = _Landscape(ensemble, resource, len(povms[0]), n_b.pop(), config.objective)
    search = _BlockSearch(land, [povm_to_isometry(p) for p in povms])
    rounds = [float(search.total())]
    iterations = 0
    while iterations < config.max_iterations:
        iterations += search.run([0], config)
        for k in range(1, land.n_blocks):
            iterations += search.run([k], config)
        rounds.append(float(search.current))
        if rounds[-1] - rounds[-2] < config.tolerance:
            break
    strategy = land.strategy(search.ws)
    metrics = evaluate(ensemble, strategy)
    value = float(config.objective.of(metrics))
    return OptimizationResult(strategy, metrics, value, [value], [iterations], rounds)


# 6 outcomes per party keeps 100 restarts near two minutes; 4 (projective)
# already reaches the same best value on the six-state ensemble.
PROBE_CONFIG = OptimizerConfig(
    restarts=100, seed=7, alice_outcomes=6, bob_outcomes=6, tolerance=1e-7, max_iterations=300
)


def probe_entangled_bound(ensemble, config=None):
    """Search Bell-pair-assisted strategies for the best guess probability.

    The result is only a lower bound on what the class can achieve.
    """
    config = config or PROBE_CONFIG
    return optimize(ensemble, ENTANGLED, config)


def write_trace_csv(result, path):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["restart", "iterations", "objective"])
        iters = result.iterations or [""] * len(result.restart_trace)
        for r, (n, v) in enumerate(zip(iters, result.restart_trace)):
            w.writerow([r, n, repr(float(v))])
