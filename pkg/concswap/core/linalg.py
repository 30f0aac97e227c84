"""
Dense complex linear algebra over small Hilbert spaces.

Operators are plain ``numpy`` complex arrays in row-major order; the subsystem
structure travels next to them as a :class:`DimSignature`.
"""
import logging
import math

import numpy as np

from concswap.config import Config
from concswap.core import (DimensionError, NotHermitianError, NumericalError,
                           ConvergenceError)

log = logging.getLogger(__name__)


class DimSignature:
    """Ordered subsystem dimensions (each >= 2)."""

    def __init__(self, dims):
        dims = tuple(int(d) for d in dims)
        if not dims:
            raise DimensionError("Signature needs at least one subsystem.")
        if any(d < 2 for d in dims):
            raise DimensionError(f"Subsystem dimensions must be >= 2, got {dims}.")
        self.dims = dims

    def __repr__(self):
        return f"<DimSignature (dims={self.dims})>"

    def __eq__(self, other):
        return isinstance(other, DimSignature) and self.dims == other.dims

    def __hash__(self):
        return hash(self.dims)

    def __len__(self):
        return len(self.dims)

    def __add__(self, other):
        return DimSignature(self.dims + other.dims)

    @property
    def total(self):
        return math.prod(self.dims)

    def indices(self, subsystems):
        """Validate a subsystem index set, keeping the caller's order."""
        subsystems = tuple(int(i) for i in subsystems)
        if not subsystems:
            raise DimensionError("Empty subsystem set.")
        if len(set(subsystems)) != len(subsystems):
            raise DimensionError(f"Repeated subsystem in {subsystems}.")
        if any(i < 0 or i >= len(self.dims) for i in subsystems):
            raise DimensionError(f"Subsystems {subsystems} out of range for {self}.")
        return subsystems

    def complement(self, subsystems):
        subsystems = self.indices(subsystems)
        return tuple(i for i in range(len(self.dims)) if i not in subsystems)

    def select(self, subsystems):
        return DimSignature([self.dims[i] for i in self.indices(subsystems)])


def tensor(a, b):
    """Kronecker product of two vectors or two matrices."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def hermitize(m):
    m = np.asarray(m, dtype=complex)
    return (m + m.conj().T) / 2


def is_hermitian(m, tol=None):
    tol = Config.HERMITIAN_TOL if tol is None else tol
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return float(np.max(np.abs(m - m.conj().T))) <= tol


def conjugate_by(m, u):
    """u m u^dagger"""
    u = np.asarray(u, dtype=complex)
    return u @ np.asarray(m, dtype=complex) @ u.conj().T


def _check_square(m, sig):
    if m.shape != (sig.total, sig.total):
        raise DimensionError(f"Matrix of shape {m.shape} does not match {sig}.")


def permute_subsystems(m, sig, order):
    """
    Reorder subsystems of a vector or square matrix. ``order`` lists the old
    subsystem indices in their new positions, so ``order=(1, 2, 0, 3)`` moves
    subsystems 1 and 2 to the front.
    """
    order = sig.indices(order)
    if len(order) != len(sig):
        raise DimensionError(f"{order} is not a permutation of {len(sig)} subsystems.")
    m = np.asarray(m, dtype=complex)
    n = len(sig)
    if m.ndim == 1:
        if m.size != sig.total:
            raise DimensionError(f"Vector of size {m.size} does not match {sig}.")
        permuted = m.reshape(sig.dims).transpose(order).reshape(-1)
    else:
        _check_square(m, sig)
        axes = list(order) + [n + i for i in order]
        permuted = m.reshape(sig.dims + sig.dims).transpose(axes).reshape(sig.total, sig.total)
    return permuted, sig.select(order)


def partial_trace(m, sig, keep):
    """
    Trace out every subsystem not in ``keep``. Kept subsystems appear in
    ascending index order in the result.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise DimensionError(f"Partial trace needs a matrix, got shape {m.shape}.")
    _check_square(m, sig)
    keep = tuple(sorted(sig.indices(keep)))
    traced = sig.complement(keep)
    if not traced:
        return m.copy()
    permuted, _ = permute_subsystems(m, sig, keep + traced)
    dk = sig.select(keep).total
    dt = sig.select(traced).total
    return np.einsum('iaja->ij', permuted.reshape(dk, dt, dk, dt))


def _off_norm(a):
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi_eigh(m):
    """Cyclic Jacobi for complex Hermitian matrices; eigenvalues unsorted."""
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    limit = Config.JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))

    for sweep in range(Config.JACOBI_MAX_SWEEPS):
        if _off_norm(a) < limit:
            log.debug(f"Jacobi converged after {sweep} sweeps (n={n})")
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                magnitude = abs(apq)
                if magnitude == 0.0:
                    continue
                phase = apq / magnitude
                theta = (a[q, q].real - a[p, p].real) / (2.0 * magnitude)
                t = (1.0 if theta >= 0 else -1.0) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = t * c
                g = np.array([[c, s],
                              [-s * phase.conjugate(), c * phase.conjugate()]])
                pq = [p, q]
                a[:, pq] = a[:, pq] @ g
                a[pq, :] = g.conj().T @ a[pq, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, pq] = v[:, pq] @ g
    raise ConvergenceError(f"Jacobi did not converge in {Config.JACOBI_MAX_SWEEPS} sweeps "
                           f"(off-diagonal norm {_off_norm(a):.3e}).")


def eigh(m):
    """
    Hermitian eigendecomposition, eigenvalues descending and eigenvectors as
    columns. Solver picked by ``Config.EIGENSOLVER``.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"Eigendecomposition needs a square matrix, got {m.shape}.")
    if not is_hermitian(m):
        raise NotHermitianError(f"max|M - M^H| = {np.max(np.abs(m - m.conj().T)):.3e}")
    m = hermitize(m)
    if Config.EIGENSOLVER == 'lapack':
        w, v = np.linalg.eigh(m)
    elif Config.EIGENSOLVER == 'jacobi':
        w, v = _jacobi_eigh(m)
    else:
        raise NumericalError(f"Unknown eigensolver '{Config.EIGENSOLVER}'")
    order = np.argsort(-w, kind='stable')
    return w[order], v[:, order]


def _clamp(w):
    w = np.array(w, dtype=float)
    lowest = float(w.min())
    if lowest < -Config.NEGATIVE_EIG_ERROR:
        raise NumericalError(f"Eigenvalue {lowest:.3e} below -{Config.NEGATIVE_EIG_ERROR}: "
                             f"corrupted density matrix?")
    if lowest < -Config.CLAMP_TOL:
        log.debug(f"Clamping negative eigenvalue {lowest:.3e} to 0")
        w[w < 0] = 0.0
    w[np.abs(w) <= Config.CLAMP_TOL] = 0.0
    return w


def hermitian_eigvals(m, clamp=False):
    """Real eigenvalues, descending; optionally round-off clamped to 0."""
    w, _ = eigh(m)
    return _clamp(w) if clamp else w


def psd_sqrt(m):
    w, v = eigh(m)
    w = _clamp(w)
    return hermitize((v * np.sqrt(w)) @ v.conj().T)


def expectation(m, vector):
    """Real part of <vector| m |vector>."""
    vector = np.asarray(vector, dtype=complex)
    return float(np.real(vector.conj() @ np.asarray(m, dtype=complex) @ vector))
