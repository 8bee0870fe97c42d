"""Dense complex matrix helpers: validation, singular values, Hermitian eigensystems.

Everything operates on complex128 arrays and is written for small dimensions
(up to ~16); no sparse or structured paths.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ConvergenceFailure, DimensionMismatch, NonFinite, PadTooSmall

__all__ = [
    "EigenSystem",
    "as_complex_matrix",
    "as_rng",
    "hermitian_basis",
    "hermitian_eigensystem",
    "hermitize",
    "is_psd",
    "jordan_decomposition",
    "random_hermitian",
    "require_hermitian",
    "singular_values",
    "spectral_norm",
    "trace_norm",
]

HERMITICITY_TOL = 1e-10
PSD_TOL = 1e-9


def as_rng(seed) -> np.random.Generator:
    """Pass through a Generator, otherwise seed a fresh one."""
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def as_complex_matrix(a) -> np.ndarray:
    """Return ``a`` as a finite 2-D complex128 array with positive dimensions."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a 2-D matrix, got ndim={m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise DimensionMismatch(f"matrix dimensions must be positive, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise NonFinite("matrix contains NaN or Inf entries")
    return m


def require_hermitian(a, tol_scale: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate that ``a`` is square and self-adjoint, and return it as complex128.

    The accepted deviation from the adjoint is entrywise
    ``tol_scale * max(1, largest entry magnitude)``.
    """
    m = as_complex_matrix(a)
    if m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"Hermitian operator must be square, got shape {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    dev = float(np.abs(m - m.conj().T).max())
    if dev > tol_scale * scale:
        raise ValueError(f"matrix is not Hermitian: adjoint deviation {dev:.3e} exceeds tolerance")
    return m


def hermitize(a: np.ndarray) -> np.ndarray:
    """Symmetrize round-off: (a + a†) / 2."""
    return (a + a.conj().T) / 2.0


def singular_values(m, padded_dim: int) -> np.ndarray:
    """Singular values of ``m``, descending, zero-padded to length ``padded_dim``.

    Parameters
    ----------
    m : array_like
        Complex matrix, any rectangular shape.
    padded_dim : int
        Length of the returned vector. Must be at least the number of nonzero
        singular values, otherwise PadTooSmall is raised.
    """
    if padded_dim < 1:
        raise ValueError(f"padded_dim must be >= 1, got {padded_dim}")
    mat = as_complex_matrix(m)
    try:
        s = np.linalg.svd(mat, compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"singular value decomposition failed: {exc}") from exc
    # rank detection threshold in the style of numpy's matrix_rank default
    tol = max(mat.shape) * np.finfo(np.float64).eps * float(s[0])
    nonzero = int(np.count_nonzero(s > tol))
    if padded_dim < nonzero:
        raise PadTooSmall(
            f"padded_dim={padded_dim} is less than the {nonzero} nonzero singular values"
        )
    out = np.zeros(padded_dim)
    keep = min(padded_dim, s.size)
    out[:keep] = s[:keep]
    return out


def spectral_norm(m) -> float:
    """Largest singular value."""
    s = np.linalg.svd(as_complex_matrix(m), compute_uv=False)
    return float(s[0])


def trace_norm(m) -> float:
    """Sum of all singular values."""
    s = np.linalg.svd(as_complex_matrix(m), compute_uv=False)
    return float(s.sum())


class EigenSystem(NamedTuple):
    """Eigenvalues in descending order; column i of ``vectors`` pairs with ``values[i]``."""

    values: np.ndarray
    vectors: np.ndarray


def hermitian_eigensystem(x) -> EigenSystem:
    """Full eigensystem of a Hermitian operator, eigenvalues descending.

    Convergence failures from the underlying solver are surfaced as
    ConvergenceFailure, never masked.
    """
    mat = require_hermitian(x)
    try:
        w, v = np.linalg.eigh(mat)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(f"eigensolver did not converge: {exc}") from exc
    return EigenSystem(np.ascontiguousarray(w[::-1]), np.ascontiguousarray(v[:, ::-1]))


def jordan_decomposition(x) -> tuple[np.ndarray, np.ndarray]:
    """Split Hermitian ``x`` into positive and negative parts.

    Returns ``(q, r)`` with both operators positive semidefinite, orthogonal
    supports, ``q - r = x`` and ``q + r = |x|``.
    """
    w, v = hermitian_eigensystem(x)
    q = (v * np.clip(w, 0.0, None)) @ v.conj().T
    r = (v * np.clip(-w, 0.0, None)) @ v.conj().T
    return hermitize(q), hermitize(r)


def is_psd(x, tol_scale: float = PSD_TOL) -> bool:
    """Positive semidefinite up to ``-tol_scale * max(1, largest eigenvalue)``."""
    w = np.linalg.eigvalsh(require_hermitian(x))
    return bool(w[0] >= -tol_scale * max(1.0, float(w[-1])))


def hermitian_basis(dim: int) -> np.ndarray:
    """Orthonormal basis (Frobenius inner product) of dim x dim Hermitian matrices.

    Ordered as the ``dim`` diagonal units followed by the symmetric and
    antisymmetric pair combinations; shape ``(dim*dim, dim, dim)``.
    """
    if dim < 1:
        raise ValueError(f"dim must be >= 1, got {dim}")
    out = np.zeros((dim * dim, dim, dim), dtype=np.complex128)
    n = 0
    for i in range(dim):
        out[n, i, i] = 1.0
        n += 1
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for i in range(dim):
        for j in range(i + 1, dim):
            out[n, i, j] = inv_sqrt2
            out[n, j, i] = inv_sqrt2
            n += 1
            out[n, i, j] = -1j * inv_sqrt2
            out[n, j, i] = 1j * inv_sqrt2
            n += 1
    return out


def random_hermitian(dim: int, seed=0) -> np.ndarray:
    """Hermitian matrix with i.i.d. complex Gaussian entries, symmetrized."""
    rng = as_rng(seed)
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return hermitize(a)
