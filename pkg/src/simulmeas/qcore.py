"""Small dense complex linear algebra for one and two qubits.

Everything here works on plain numpy arrays. Composite spaces are ordered
big-endian: in ``kron(a, b)`` the left factor is the most significant index.
"""

import numpy as np

SUPPORTED_DIMS = (2, 4, 16)
DEFAULT_TOL = 1e-9

I2 = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class NotHermitianError(ValueError):
    """Raised when a matrix expected to be Hermitian is not."""


def pure_state(amplitudes, tol=1e-12):
    """Validate and return a unit complex vector of dimension 2 or 4."""
    v = np.asarray(amplitudes, dtype=complex).reshape(-1)
    if v.size not in (2, 4):
        raise ValueError(f"state dimension must be 2 or 4, got {v.size}")
    if not np.all(np.isfinite(v)):
        raise ValueError("state amplitudes must be finite")
    norm = np.linalg.norm(v)
    if abs(norm - 1.0) > tol:
        raise ValueError(f"state is not normalized (norm = {norm!r})")
    return v


def state_xz(alpha):
    """cos(alpha)|0> + sin(alpha)|1>.

    ``alpha`` is the Hilbert-space angle; the Bloch vector sits at 2*alpha
    from +Z in the X-Z plane.
    """
    if not np.isfinite(alpha):
        raise ValueError("alpha must be finite")
    return np.array([np.cos(alpha), np.sin(alpha)], dtype=complex)


def state_y_eigen(sign):
    """Eigenstate of Pauli Y with eigenvalue ``sign`` (+1 or -1)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    return np.array([1, sign * 1j], dtype=complex) / np.sqrt(2)


KET0 = state_xz(0.0)
KET1 = np.array([0, 1], dtype=complex)
KET_PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)
KET_MINUS = np.array([1, -1], dtype=complex) / np.sqrt(2)
KET_PLUS_I = state_y_eigen(1)
KET_MINUS_I = state_y_eigen(-1)


def projector(v):
    """|v><v| for a (not necessarily normalized) vector."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    return np.outer(v, v.conj())


def kron(a, b):
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    out = np.kron(a, b)
    if out.ndim == 2 and out.shape[0] not in SUPPORTED_DIMS:
        raise ValueError(f"unsupported result dimension {out.shape[0]}")
    return out


def is_hermitian(m, tol=DEFAULT_TOL):
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and np.max(np.abs(m - m.conj().T), initial=0.0) <= tol


def is_psd(m, tol=DEFAULT_TOL):
    """True iff ``m`` has no eigenvalue below ``-tol``.

    Raises NotHermitianError when ``m`` is not Hermitian within ``tol``, so
    that callers can tell the two failure modes apart.
    """
    m = np.asarray(m, dtype=complex)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    if not is_hermitian(m, tol):
        raise NotHermitianError("matrix is not Hermitian")
    return bool(np.linalg.eigvalsh(0.5 * (m + m.conj().T)).min() >= -tol)


def psd_sqrt(m):
    """Principal square root of a PSD matrix (negative round-off clipped)."""
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def expectation(op, v):
    """<v|op|v> as a real number."""
    return float(np.real(np.vdot(v, op @ v)))
