"""Dense matrix helpers used by the whole package.

Everything here works on plain complex numpy arrays. Comparisons default to
max-norm with tolerance 1e-10; state comparisons that must ignore global
phase live in :mod:`qalg.state`.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionError, ValidationError

DEFAULT_TOL = 1e-10


def as_complex(a) -> np.ndarray:
    out = np.asarray(a, dtype=np.complex128)
    if not (np.all(np.isfinite(out.real)) and np.all(np.isfinite(out.imag))):
        raise ValidationError("matrix/vector contains NaN or Inf entries")
    return out


def dagger(u) -> np.ndarray:
    return np.conjugate(np.asarray(u)).T


def is_unitary(u, tol: float = DEFAULT_TOL) -> bool:
    u = np.asarray(u)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    delta = dagger(u) @ u - np.eye(u.shape[0])
    return float(np.max(np.abs(delta))) <= tol


def is_hermitian(m, tol: float = DEFAULT_TOL) -> bool:
    m = np.asarray(m)
    return m.ndim == 2 and m.shape[0] == m.shape[1] and float(np.max(np.abs(m - dagger(m)))) <= tol


def require_unitary(u, tol: float = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    u = as_complex(u)
    if not is_unitary(u, tol):
        raise ValidationError(f"{what} is not unitary within {tol}")
    return u


def require_hermitian(m, tol: float = DEFAULT_TOL, what: str = "matrix") -> np.ndarray:
    m = as_complex(m)
    if not is_hermitian(m, tol):
        raise ValidationError(f"{what} is not hermitian within {tol}")
    return m


def close(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Max-norm equality."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.max(np.abs(a - b))) <= tol


def close_up_to_phase(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Max-norm equality after stripping one global phase from ``a``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    k = int(np.argmax(np.abs(b)))
    if abs(a.flat[k]) < 1e-14 or abs(b.flat[k]) < 1e-14:
        return close(a, b, tol)
    phase = b.flat[k] / a.flat[k]
    phase /= abs(phase)
    return close(a * phase, b, tol)


def kron_all(*operands) -> np.ndarray:
    """Left-to-right Kronecker product of matrices or vectors."""
    if not operands:
        raise DimensionError("kron_all needs at least one operand")
    out = as_complex(operands[0])
    for op in operands[1:]:
        out = np.kron(out, as_complex(op))
    return out


def hermitian_expm(h, t: float = 1.0) -> np.ndarray:
    """exp(-i * h * t) for hermitian h, via eigendecomposition."""
    h = require_hermitian(h)
    vals, vecs = np.linalg.eigh(h)
    return (vecs * np.exp(-1j * vals * t)) @ dagger(vecs)


def involution_exp(u, eta: float) -> np.ndarray:
    """exp(-i * eta * u) = cos(eta) I - i sin(eta) u, for u with u @ u = I.

    Requires u both hermitian and unitary (so u squares to the identity).
    """
    u = require_unitary(u)
    d = u.shape[0]
    if not close(u @ u, np.eye(d)):
        raise ValidationError("operand does not square to the identity")
    return np.cos(eta) * np.eye(d) - 1j * np.sin(eta) * u


def principal_sqrt(u) -> np.ndarray:
    """Principal square root of a unitary: eigenvalue args halved from (-pi, pi]."""
    u = require_unitary(u)
    vals, vecs = np.linalg.eig(u)
    roots = np.exp(0.5j * np.angle(vals)) * np.sqrt(np.abs(vals))
    return vecs @ np.diag(roots) @ np.linalg.inv(vecs)


def random_unitary(dim: int, rng) -> np.ndarray:
    """Haar-like unitary from a QR factorization of a Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_state(dim: int, rng) -> np.ndarray:
    z = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return z / np.linalg.norm(z)
