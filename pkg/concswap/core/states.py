import logging

import numpy as np

from concswap.config import Config
from concswap.core import DimensionError, InvalidParameterError, InvalidStateError
from concswap.core import linalg
from concswap.core.linalg import DimSignature

log = logging.getLogger(__name__)


def _signature(sig):
    return sig if isinstance(sig, DimSignature) else DimSignature(sig)


def _frozen(array):
    array.setflags(write=False)
    return array


def check_probability(name, value):
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {value}")
    return value


class SchmidtSpectrum:
    """
    Nonnegative Schmidt coefficients summing to one, stored descending
    (stable, so ties keep their input order).
    """

    def __init__(self, coeffs):
        values = np.asarray(coeffs)
        if np.iscomplexobj(values):
            if np.any(values.imag != 0):
                raise InvalidParameterError("Schmidt coefficients must be real.")
            values = values.real
        values = np.array(values, dtype=float).reshape(-1)
        if values.size < 2:
            raise InvalidParameterError(f"Spectrum needs at least 2 coefficients, got {values.size}.")
        if not np.all(np.isfinite(values)):
            raise InvalidParameterError(f"Spectrum {values.tolist()} is not finite.")
        if np.any(values < 0):
            raise InvalidParameterError(f"Spectrum {values.tolist()} has negative entries.")
        deviation = abs(float(values.sum()) - 1.0)
        if deviation > Config.SPECTRUM_RENORMALIZE_TOL:
            raise InvalidParameterError(f"Spectrum {values.tolist()} sums to {values.sum()!r}, not 1.")
        if deviation > Config.SPECTRUM_SUM_TOL:
            log.debug(f"Renormalizing spectrum off by {deviation:.3e}")
            values = values / values.sum()
        self._coeffs = _frozen(values[np.argsort(-values, kind='stable')])

    def __repr__(self):
        return f"<SchmidtSpectrum (coeffs={self._coeffs.tolist()})>"

    def __len__(self):
        return self._coeffs.size

    def __iter__(self):
        return iter(self._coeffs.tolist())

    def __getitem__(self, item):
        return self._coeffs[item]

    def __eq__(self, other):
        return isinstance(other, SchmidtSpectrum) and np.array_equal(self._coeffs, other._coeffs)

    def __hash__(self):
        return hash(self._coeffs.tobytes())

    @property
    def coeffs(self):
        return self._coeffs

    @property
    def n(self):
        return self._coeffs.size

    @property
    def purity(self):
        """Tr(rho_a^2) of the corresponding pure state."""
        return float(np.sum(self._coeffs ** 2))

    @classmethod
    def qubit(cls, lam0):
        lam0 = check_probability("lambda0", lam0)
        return cls([lam0, 1.0 - lam0])

    @classmethod
    def uniform(cls, n):
        return cls(np.full(int(n), 1.0 / int(n)))

    @classmethod
    def block(cls, m, n):
        """1/M on M slots, zero on the remaining N - M."""
        m, n = int(m), int(n)
        if not 1 <= m <= n:
            raise InvalidParameterError(f"Block size {m} must lie in 1..{n}")
        values = np.zeros(n)
        values[:m] = 1.0 / m
        return cls(values)

    @classmethod
    def random(cls, n, rng):
        return cls(rng.dirichlet(np.ones(int(n))))


class PureState:

    def __init__(self, amplitudes, sig):
        sig = _signature(sig)
        amplitudes = np.array(amplitudes, dtype=complex).reshape(-1)
        if amplitudes.size != sig.total:
            raise DimensionError(f"{amplitudes.size} amplitudes do not match {sig}.")
        norm = float(np.linalg.norm(amplitudes))
        if abs(norm - 1.0) > Config.NORM_TOL:
            raise InvalidStateError(f"State norm is {norm!r}, expected 1.")
        self._amplitudes = _frozen(amplitudes)
        self.sig = sig

    def __repr__(self):
        return f"<PureState (sig={self.sig.dims})>"

    @property
    def amplitudes(self):
        return self._amplitudes

    @classmethod
    def normalized(cls, amplitudes, sig):
        amplitudes = np.asarray(amplitudes, dtype=complex).reshape(-1)
        norm = float(np.linalg.norm(amplitudes))
        if norm == 0.0:
            raise InvalidStateError("Cannot normalize the zero vector.")
        return cls(amplitudes / norm, sig)

    def tensor(self, other):
        return PureState(linalg.tensor(self._amplitudes, other.amplitudes), self.sig + other.sig)

    def density(self):
        return DensityMatrix(np.outer(self._amplitudes, self._amplitudes.conj()), self.sig,
                             check_psd=False)

    def overlap(self, other):
        return complex(np.vdot(self._amplitudes, other.amplitudes))


class DensityMatrix:
    """
    Hermitian, unit-trace, positive semidefinite operator. Stored hermitized
    and read-only. ``check_psd=False`` skips the eigenvalue check for matrices
    that are PSD by construction (outer products, tensor products, projections).
    """

    def __init__(self, matrix, sig, check_psd=True):
        sig = _signature(sig)
        matrix = np.array(matrix, dtype=complex)
        if matrix.shape != (sig.total, sig.total):
            raise DimensionError(f"Matrix of shape {matrix.shape} does not match {sig}.")
        if not linalg.is_hermitian(matrix, Config.HERMITIAN_TOL):
            raise InvalidStateError("Density matrix is not Hermitian.")
        trace = complex(np.trace(matrix))
        if abs(trace - 1.0) > Config.TRACE_TOL:
            raise InvalidStateError(f"Density matrix trace is {trace!r}, expected 1.")
        matrix = linalg.hermitize(matrix)
        if check_psd:
            lowest = float(linalg.hermitian_eigvals(matrix)[-1])
            if lowest < -Config.PSD_TOL:
                raise InvalidStateError(f"Density matrix has eigenvalue {lowest:.3e} < 0.")
        self._matrix = _frozen(matrix)
        self.sig = sig

    def __repr__(self):
        return f"<DensityMatrix (sig={self.sig.dims}, purity={self.purity:.6f})>"

    @property
    def matrix(self):
        return self._matrix

    @property
    def dim(self):
        return self.sig.total

    @property
    def purity(self):
        return float(np.real(np.trace(self._matrix @ self._matrix)))

    def eigenvalues(self, clamp=True):
        return linalg.hermitian_eigvals(self._matrix, clamp=clamp)

    def tensor(self, other):
        return DensityMatrix(linalg.tensor(self._matrix, other.matrix), self.sig + other.sig,
                             check_psd=False)

    def reduced(self, keep):
        keep = tuple(sorted(self.sig.indices(keep)))
        return DensityMatrix(linalg.partial_trace(self._matrix, self.sig, keep),
                             self.sig.select(keep), check_psd=False)

    def fidelity(self, vector):
        if isinstance(vector, PureState):
            vector = vector.amplitudes
        return linalg.expectation(self._matrix, vector)

    def conjugated(self, unitary):
        """u rho u^dagger, same signature."""
        return DensityMatrix(linalg.conjugate_by(self._matrix, unitary), self.sig, check_psd=False)

    def allclose(self, other, tol):
        other = other.matrix if isinstance(other, DensityMatrix) else np.asarray(other)
        return float(np.max(np.abs(self._matrix - other))) <= tol


class IsotropicParams:

    def __init__(self, n, p):
        if int(n) != n or n < 2:
            raise InvalidParameterError(f"Dimension must be an integer >= 2, got {n}")
        self.n = int(n)
        self.p = check_probability("p", p)

    def __repr__(self):
        return f"<IsotropicParams (n={self.n}, p={self.p})>"


def schmidt_pure(s):
    """sum_j sqrt(lambda_j)|jj>, local bases fixed to the computational ones."""
    n = s.n
    amplitudes = np.zeros(n * n, dtype=complex)
    amplitudes[np.arange(n) * (n + 1)] = np.sqrt(s.coeffs)
    return PureState(amplitudes, (n, n))


def maximally_entangled(n):
    return schmidt_pure(SchmidtSpectrum.uniform(n))


def noisy_qubit_pair(p, lam0):
    """
    p I/4 + (1-p)|psi><psi| with |psi> = sqrt(lam0)|00> + sqrt(1-lam0)|11>.
    ``lam0`` always weighs |00>. At p = 0 this is exactly the Schmidt-form
    state of SchmidtSpectrum.qubit(lam0) when lam0 >= 1/2; below 1/2 it is
    that state with both qubits flipped.
    """
    p = check_probability("p", p)
    lam0 = check_probability("lambda0", lam0)
    psi = np.array([np.sqrt(lam0), 0.0, 0.0, np.sqrt(1.0 - lam0)], dtype=complex)
    matrix = p * np.eye(4) / 4 + (1.0 - p) * np.outer(psi, psi)
    return DensityMatrix(matrix, (2, 2), check_psd=False)


def isotropic_state(par):
    n = par.n
    phi = maximally_entangled(n).amplitudes
    matrix = par.p * np.eye(n * n) / (n * n) + (1.0 - par.p) * np.outer(phi, phi.conj())
    return DensityMatrix(matrix, (n, n), check_psd=False)


def fidelity_isotropic(par):
    return 1.0 - par.p + par.p / par.n ** 2


def schmidt_decompose(state, cut=None):
    """
    Schmidt coefficients across the cut after the first ``cut`` subsystems
    (default: a bipartite signature split in the middle). Computed from the
    reduced density matrix of the smaller side, so the spectrum has
    min(d_left, d_right) entries.
    """
    sig = state.sig
    if cut is None:
        if len(sig) != 2:
            raise DimensionError(f"{sig} is not bipartite; declare the cut.")
        cut = 1
    if not 1 <= cut < len(sig):
        raise DimensionError(f"Cut {cut} does not split {sig}.")
    left = DimSignature(sig.dims[:cut]).total
    right = DimSignature(sig.dims[cut:]).total
    psi = state.amplitudes.reshape(left, right)
    if left <= right:
        reduced = psi @ psi.conj().T
    else:
        reduced = psi.T @ psi.conj()
    values = linalg.hermitian_eigvals(reduced, clamp=True)
    return SchmidtSpectrum(np.clip(values, 0.0, None))


def random_unitary(n, rng):
    """Haar-random unitary (QR of a complex Ginibre matrix, phases fixed)."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_normalized_pair(rng):
    z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    z = z / np.linalg.norm(z)
    return complex(z[0]), complex(z[1])


def multiqubit_schmidt_frame(state, qubit):
    """
    Rotate ``qubit`` so that its Schmidt basis against the remaining
    subsystems is the computational basis (larger coefficient on |0>).
    """
    sig = state.sig
    (qubit,) = sig.indices([qubit])
    if sig.dims[qubit] != 2:
        raise DimensionError(f"Subsystem {qubit} of {sig} is not a qubit.")
    reduced = linalg.partial_trace(state.density().matrix, sig, [qubit])
    _, vectors = linalg.eigh(reduced)
    rotated = np.tensordot(vectors.conj().T, state.amplitudes.reshape(sig.dims), axes=([1], [qubit]))
    rotated = np.moveaxis(rotated, 0, qubit).reshape(-1)
    return PureState.normalized(rotated, sig)
