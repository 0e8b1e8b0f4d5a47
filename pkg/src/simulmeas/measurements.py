"""POVM construction and validation."""

from dataclasses import dataclass

import numpy as np

from .ensembles import TRINE_ANGLES
from .qcore import DEFAULT_TOL, is_hermitian, projector, state_xz

POVM_TOL = DEFAULT_TOL


@dataclass(frozen=True)
class Povm:
    elements: tuple
    labels: tuple

    def __post_init__(self):
        elements = tuple(np.asarray(e, dtype=complex) for e in self.elements)
        if not elements:
            raise ValueError("a POVM needs at least one element")
        dim = elements[0].shape[0]
        if dim not in (2, 4) or any(e.shape != (dim, dim) for e in elements):
            raise ValueError("POVM elements must all be 2x2 or all be 4x4")
        labels = tuple(str(x) for x in self.labels) if self.labels else tuple(str(i) for i in range(len(elements)))
        if len(labels) != len(elements):
            raise ValueError("one label per element required")
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "labels", labels)

    @property
    def dim(self):
        return self.elements[0].shape[0]

    def __len__(self):
        return len(self.elements)

    def stack(self):
        return np.stack(self.elements)

    def probabilities(self, rho_or_ket):
        """Outcome probabilities for a ket or density matrix."""
        x = np.asarray(rho_or_ket, dtype=complex)
        if x.ndim == 1:
            p = np.einsum("i,kij,j->k", x.conj(), self.stack(), x)
        else:
            p = np.einsum("kij,ji->k", self.stack(), x)
        return np.real(p)


def povm(elements, labels=None):
    """Build a Povm and raise ValueError if it fails validation."""
    p = Povm(tuple(elements), tuple(labels) if labels is not None else ())
    problems = validate_povm(p)
    if problems:
        raise ValueError("invalid POVM: " + "; ".join(problems))
    return p


def validate_povm(p, tol=POVM_TOL):
    """List the ways ``p`` fails to be a POVM. Empty list means valid."""
    problems = []
    for i, e in enumerate(p.elements):
        if not np.all(np.isfinite(e)):
            problems.append(f"element {i} has non-finite entries")
            continue
        if not is_hermitian(e, tol):
            problems.append(f"element {i} is not Hermitian")
            continue
        lo = np.linalg.eigvalsh(0.5 * (e + e.conj().T)).min()
        if lo < -tol:
            problems.append(f"element {i} is not PSD (min eigenvalue {lo:.3g})")
    resid = np.max(np.abs(sum(p.elements) - np.eye(p.dim)))
    if resid > tol:
        problems.append(f"completeness residual {resid:.6g}")
    return problems


def completeness_residual(p):
    return float(np.max(np.abs(sum(p.elements) - np.eye(p.dim))))


def projective_xz(alpha):
    """Projective measurement onto v(alpha) ("+") and v(alpha + pi/2) ("-")."""
    return Povm(
        (projector(state_xz(alpha)), projector(state_xz(alpha + np.pi / 2))),
        ("+", "-"),
    )


Z_BASIS = projective_xz(0.0)
X_BASIS = projective_xz(np.pi / 4)


def basis_povm(vectors, labels=None):
    """Rank-one projectors onto the given orthonormal vectors."""
    return Povm(tuple(projector(v) for v in vectors), tuple(labels) if labels else ())


def bell_basis():
    s = 1 / np.sqrt(2)
    vecs = [
        s * np.array([1, 0, 0, 1]),
        s * np.array([1, 0, 0, -1]),
        s * np.array([0, 1, 1, 0]),
        s * np.array([0, 1, -1, 0]),
    ]
    return basis_povm(vecs, ("Phi+", "Phi-", "Psi+", "Psi-"))


def anti_trine_povm(delta=0.0):
    """Three-outcome POVM (2/3)|w_i><w_i| with w_i = v(a_i + pi/2 + delta).

    With ``delta = 0``, outcome i never fires on trine state v(a_i) for
    a_i in (0, pi/3, -pi/3). ``delta`` rigidly rotates all three vectors.
    """
    return Povm(
        tuple((2 / 3) * projector(state_xz(a + np.pi / 2 + delta)) for a in TRINE_ANGLES),
        ("not-v0", "not-v+", "not-v-"),
    )


def adaptive_product_povm(first, second_given):
    """Local two-step measurement on two qubits as one dim-4 POVM.

    Outcome i of ``first`` on the first qubit selects ``second_given[i]`` for
    the second qubit. Elements are E_i (x) F_j^(i), labelled "i.j".
    """
    if len(second_given) != len(first):
        raise ValueError("need one conditional POVM per outcome of the first")
    if first.dim != 2 or any(q.dim != 2 for q in second_given):
        raise ValueError("adaptive_product_povm combines single-qubit POVMs")
    elements, labels = [], []
    for i, e in enumerate(first.elements):
        for j, f in enumerate(second_given[i].elements):
            elements.append(np.kron(e, f))
            labels.append(f"{i}.{j}")
    return Povm(tuple(elements), tuple(labels))


def product_povm(a, b):
    """Non-adaptive local measurement a (x) b."""
    return adaptive_product_povm(a, [b] * len(a))


def two_state_basis(a, b):
    """Minimum-error (Helstrom) basis for two equiprobable pure qubit states.

    Outcome "+" favours ``a``.
    """
    w, v = np.linalg.eigh(projector(a) - projector(b))
    return basis_povm([v[:, 1], v[:, 0]], ("+", "-"))
