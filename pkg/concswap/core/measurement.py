"""
Measurement bases and projective measurement.

Convention: measured subsystems are moved to the front (in the order given by
the caller) before projecting; the retained subsystems keep their original
relative order in the post-measurement state.
"""
import logging

import numpy as np

from concswap.config import Config
from concswap.core import DimensionError, InvalidParameterError
from concswap.core import linalg
from concswap.core.cache import CACHE
from concswap.core.linalg import DimSignature
from concswap.core.states import PureState, DensityMatrix

log = logging.getLogger(__name__)

SQRT_HALF = 1 / np.sqrt(2)

BELL_LABELS = ('Phi+', 'Phi-', 'Psi+', 'Psi-')
GENERALIZED_BELL_LABELS = ('tPsi+', 'tPsi-', 'tPhi+', 'tPhi-')


class MeasurementBasis:
    """Complete orthonormal family of vectors over the measured subsystems."""

    def __init__(self, vectors, labels, sig):
        sig = sig if isinstance(sig, DimSignature) else DimSignature(sig)
        vectors = tuple(v if isinstance(v, PureState) else PureState(v, sig) for v in vectors)
        labels = tuple(labels)
        if len(labels) != len(vectors):
            raise DimensionError(f"{len(labels)} labels for {len(vectors)} vectors.")
        if len(set(labels)) != len(labels):
            raise InvalidParameterError(f"Duplicate outcome labels in {labels}.")
        if any(v.sig != sig for v in vectors):
            raise DimensionError(f"Basis vectors do not all live on {sig}.")
        if len(vectors) != sig.total:
            raise DimensionError(f"{len(vectors)} vectors cannot span dimension {sig.total}.")
        matrix = np.array([v.amplitudes for v in vectors])
        matrix.setflags(write=False)
        self.vectors = vectors
        self.labels = labels
        self.sig = sig
        self._matrix = matrix
        error = float(np.max(np.abs(self.gram() - np.eye(len(vectors)))))
        if error > Config.NORM_TOL:
            raise InvalidParameterError(f"Basis is not orthonormal (Gram error {error:.3e}).")

    def __repr__(self):
        return f"<MeasurementBasis (labels={list(self.labels)})>"

    def __len__(self):
        return len(self.vectors)

    def __iter__(self):
        return iter(zip(self.labels, self.vectors))

    def __getitem__(self, label):
        return self.vectors[self.labels.index(label)]

    @property
    def matrix(self):
        """Vectors as rows."""
        return self._matrix

    def gram(self):
        return self._matrix.conj() @ self._matrix.T

    def resolves_identity(self, tol=None):
        tol = Config.NORM_TOL if tol is None else tol
        completeness = self._matrix.T @ self._matrix.conj()
        return float(np.max(np.abs(completeness - np.eye(self.sig.total)))) <= tol


class SwapOutcome:
    """
    One measurement result. ``post_state`` (and ``post_vector`` for pure
    inputs) is None when the outcome probability is at or below the floor.
    """

    def __init__(self, label, probability, post_state=None, post_vector=None):
        self.label = label
        self.probability = float(probability)
        self.post_state = post_state
        self.post_vector = post_vector

    def __repr__(self):
        return f"<SwapOutcome (label={self.label}, probability={self.probability:.17g})>"

    @property
    def is_possible(self):
        return self.post_state is not None


def _check_normalized(alpha, beta):
    norm = abs(alpha) ** 2 + abs(beta) ** 2
    if abs(norm - 1.0) > Config.NORM_TOL:
        raise InvalidParameterError(f"|alpha|^2 + |beta|^2 = {norm!r}, expected 1 "
                                    f"(alpha={alpha}, beta={beta})")


def _build_generalized_bell(a0, b0, a1, b1, labels):
    def ket(entries):
        vector = np.zeros(4, dtype=complex)
        for index, amplitude in entries:
            vector[index] = amplitude
        return vector

    # |00>=0, |01>=1, |10>=2, |11>=3
    vectors = [
        ket([(0, a0), (3, b0)]),
        ket([(0, np.conj(b0)), (3, -np.conj(a0))]),
        ket([(1, a1), (2, b1)]),
        ket([(1, np.conj(b1)), (2, -np.conj(a1))]),
    ]
    return MeasurementBasis(vectors, labels, (2, 2))


def generalized_bell_basis(a0, b0, a1, b1):
    a0, b0, a1, b1 = (complex(x) for x in (a0, b0, a1, b1))
    _check_normalized(a0, b0)
    _check_normalized(a1, b1)
    return _build_generalized_bell(a0, b0, a1, b1, GENERALIZED_BELL_LABELS)


def bell_basis():
    """Phi+/- = (|00> +/- |11>)/sqrt2, Psi+/- = (|01> +/- |10>)/sqrt2."""
    return CACHE.get_or_build(
        ('bell',),
        lambda: _build_generalized_bell(SQRT_HALF, SQRT_HALF, SQRT_HALF, SQRT_HALF, BELL_LABELS))


def _build_ghz():
    vectors, labels = [], []
    for k, bits in enumerate(('000', '001', '010', '100')):
        index = int(bits, 2)
        complement = 7 - index
        for sign, suffix in ((1, '+'), (-1, '-')):
            vector = np.zeros(8, dtype=complex)
            vector[index] = SQRT_HALF
            vector[complement] = sign * SQRT_HALF
            vectors.append(vector)
            labels.append(f'G{k}{suffix}')
    return MeasurementBasis(vectors, labels, (2, 2, 2))


def ghz_basis():
    return CACHE.get_or_build(('ghz',), _build_ghz)


def _build_chi(n):
    vectors, labels = [], []
    j = np.arange(n)
    for m in range(n):
        for shift in range(n):
            vector = np.zeros(n * n, dtype=complex)
            vector[j * n + (j + shift) % n] = np.exp(2j * np.pi * j * m / n) / np.sqrt(n)
            vectors.append(vector)
            labels.append(f'chi_{m}_{shift}')
    return MeasurementBasis(vectors, labels, (n, n))


def qudit_chi_basis(n):
    """|chi_mn> = N^-1/2 sum_j e^{2 pi i jm/N} |j>|j+n mod N>, m-major order."""
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"Dimension must be an integer >= 2, got {n}")
    return CACHE.get_or_build(('chi', int(n)), lambda: _build_chi(int(n)))


def _split(sig, basis, measured):
    measured = sig.indices(measured)
    if sig.select(measured) != basis.sig:
        raise DimensionError(f"Measured subsystems {measured} of {sig} do not match {basis.sig}.")
    retained = sig.complement(measured)
    if not retained:
        raise DimensionError("Measurement must leave at least one subsystem.")
    return measured, retained


def project(joint, basis, measured):
    """Project ``joint`` (DensityMatrix) on every vector of ``basis``."""
    measured, retained = _split(joint.sig, basis, measured)
    permuted, _ = linalg.permute_subsystems(joint.matrix, joint.sig, measured + retained)
    kept_sig = joint.sig.select(retained)
    dm, dr = basis.sig.total, kept_sig.total
    blocks = np.einsum('ki,iajb,kj->kab', basis.matrix.conj(),
                       permuted.reshape(dm, dr, dm, dr), basis.matrix)

    outcomes = []
    for label, block in zip(basis.labels, blocks):
        block = linalg.hermitize(block)
        probability = float(np.real(np.trace(block)))
        if probability <= Config.PROBABILITY_FLOOR:
            log.debug(f"Outcome {label} has probability {probability:.3e}, no post-state")
            outcomes.append(SwapOutcome(label, max(probability, 0.0)))
            continue
        outcomes.append(SwapOutcome(label, probability,
                                    DensityMatrix(block / probability, kept_sig, check_psd=False)))
    return outcomes


def project_pure(joint, basis, measured):
    """Project a PureState; outcomes also carry the normalized post vector."""
    measured, retained = _split(joint.sig, basis, measured)
    permuted, _ = linalg.permute_subsystems(joint.amplitudes, joint.sig, measured + retained)
    kept_sig = joint.sig.select(retained)
    conditional = basis.matrix.conj() @ permuted.reshape(basis.sig.total, kept_sig.total)

    outcomes = []
    for label, branch in zip(basis.labels, conditional):
        probability = float(np.real(np.vdot(branch, branch)))
        if probability <= Config.PROBABILITY_FLOOR:
            log.debug(f"Outcome {label} has probability {probability:.3e}, no post-state")
            outcomes.append(SwapOutcome(label, probability))
            continue
        vector = PureState.normalized(branch, kept_sig)
        outcomes.append(SwapOutcome(label, probability, vector.density(), vector))
    return outcomes
