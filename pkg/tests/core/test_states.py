import math

import numpy as np
import pytest

from concswap.core import DimensionError, InvalidParameterError, InvalidStateError
from concswap.core import states
from concswap.core.states import SchmidtSpectrum, PureState, DensityMatrix, IsotropicParams


@pytest.mark.parametrize("coeffs", [[0.5], [0.6, 0.6], [1.2, -0.2], [0.5, float('nan')],
                                    [0.5 + 0.1j, 0.5]],
                         ids=["single", "sum", "negative", "nan", "complex"])
def test_spectrum_invalid(coeffs):
    with pytest.raises(InvalidParameterError):
        SchmidtSpectrum(coeffs)


def test_spectrum_sorted_and_frozen():
    s = SchmidtSpectrum([0.1, 0.6, 0.3])
    assert list(s) == [0.6, 0.3, 0.1]
    assert s.n == 3
    with pytest.raises(ValueError):
        s.coeffs[0] = 0.0


def test_spectrum_renormalized():
    s = SchmidtSpectrum([0.5, 0.5 + 5e-10])
    assert sum(s) == pytest.approx(1.0, abs=1e-15)


def test_spectrum_constructors(rng):
    assert list(SchmidtSpectrum.qubit(0.3)) == pytest.approx([0.7, 0.3])
    assert list(SchmidtSpectrum.uniform(4)) == [0.25] * 4
    assert list(SchmidtSpectrum.block(2, 4)) == [0.5, 0.5, 0.0, 0.0]
    random = SchmidtSpectrum.random(5, rng)
    assert len(random) == 5 and sum(random) == pytest.approx(1.0)
    with pytest.raises(InvalidParameterError):
        SchmidtSpectrum.block(5, 4)


def test_pure_state_norm():
    with pytest.raises(InvalidStateError):
        PureState([1, 1], (2,))
    with pytest.raises(DimensionError):
        PureState([1, 0, 0], (2,))
    with pytest.raises(InvalidStateError):
        PureState.normalized([0, 0], (2,))
    assert PureState.normalized([1, 1], (2,)).amplitudes[0] == pytest.approx(math.sqrt(0.5))


def test_density_matrix_checks():
    with pytest.raises(InvalidStateError, match="Hermitian"):
        DensityMatrix([[0.5, 0.5], [0, 0.5]], (2,))
    with pytest.raises(InvalidStateError, match="trace"):
        DensityMatrix(np.eye(2), (2,))
    with pytest.raises(InvalidStateError, match="eigenvalue"):
        DensityMatrix([[1.5, 0], [0, -0.5]], (2,))
    with pytest.raises(DimensionError):
        DensityMatrix(np.eye(2) / 2, (3,))


def test_schmidt_pure_round_trip(rng):
    s = SchmidtSpectrum.random(4, rng)
    psi = states.schmidt_pure(s)
    assert psi.sig.dims == (4, 4)
    assert np.allclose(states.schmidt_decompose(psi).coeffs, s.coeffs, atol=1e-12)


def test_schmidt_decompose_unequal_sides():
    # |0>(|00> + |11>)/sqrt2 across 1 | 2: product, one nonzero coefficient
    vector = np.kron([1, 0], np.array([1, 0, 0, 1]) / math.sqrt(2))
    state = PureState(vector, (2, 2, 2))
    assert list(states.schmidt_decompose(state, cut=1)) == pytest.approx([1.0, 0.0])
    assert list(states.schmidt_decompose(state, cut=2)) == pytest.approx([0.5, 0.5])


def test_schmidt_decompose_needs_cut():
    state = PureState(np.eye(8)[0], (2, 2, 2))
    with pytest.raises(DimensionError):
        states.schmidt_decompose(state)
    with pytest.raises(DimensionError):
        states.schmidt_decompose(state, cut=3)


def test_density_reduced_and_purity(rng):
    psi = states.schmidt_pure(SchmidtSpectrum.qubit(0.8))
    rho = psi.density()
    assert rho.purity == pytest.approx(1.0)
    reduced = rho.reduced([0])
    assert np.allclose(reduced.matrix, np.diag([0.8, 0.2]))
    assert reduced.purity == pytest.approx(0.68)


def test_noisy_qubit_pair():
    rho = states.noisy_qubit_pair(0.2, 0.7)
    assert rho.matrix[0, 0] == pytest.approx(0.05 + 0.8 * 0.7)
    assert rho.matrix[0, 3] == pytest.approx(0.8 * math.sqrt(0.21))
    assert rho.matrix[1, 1] == pytest.approx(0.05)


@pytest.mark.parametrize("lam0", [1.0, 0.7, 0.5])
def test_noisy_qubit_pair_pure_limit(lam0):
    pure = states.schmidt_pure(SchmidtSpectrum.qubit(lam0)).density().matrix
    assert np.array_equal(states.noisy_qubit_pair(0.0, lam0).matrix, pure)


@pytest.mark.parametrize("lam0", [0.0, 0.3])
def test_noisy_qubit_pair_pure_limit_flipped(lam0):
    pure = states.schmidt_pure(SchmidtSpectrum.qubit(lam0)).density().matrix
    # X x X maps |ij> to |1-i 1-j>, index k to 3 - k
    assert np.array_equal(states.noisy_qubit_pair(0.0, lam0).matrix, pure[::-1, ::-1])
    assert states.noisy_qubit_pair(0.0, lam0).matrix[0, 0].real == pytest.approx(lam0)


@pytest.mark.parametrize("p, lam0", [(-0.1, 0.5), (1.1, 0.5), (0.5, 1.5)])
def test_noisy_qubit_pair_invalid(p, lam0):
    with pytest.raises(InvalidParameterError):
        states.noisy_qubit_pair(p, lam0)


@pytest.mark.parametrize("n", [2, 3, 5])
def test_isotropic_state(n):
    par = IsotropicParams(n, 0.3)
    rho = states.isotropic_state(par)
    phi = states.maximally_entangled(n)
    assert rho.fidelity(phi) == pytest.approx(states.fidelity_isotropic(par), abs=1e-12)
    assert states.fidelity_isotropic(IsotropicParams(n, 1.0)) == pytest.approx(1 / n ** 2)


def test_isotropic_invalid():
    with pytest.raises(InvalidParameterError):
        IsotropicParams(1, 0.3)
    with pytest.raises(InvalidParameterError):
        IsotropicParams(3, 1.5)


def test_random_unitary(rng):
    u = states.random_unitary(4, rng)
    assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)


def test_random_normalized_pair(rng):
    alpha, beta = states.random_normalized_pair(rng)
    assert abs(alpha) ** 2 + abs(beta) ** 2 == pytest.approx(1.0)


def test_multiqubit_schmidt_frame(rng):
    amplitudes = rng.standard_normal(8) + 1j * rng.standard_normal(8)
    state = PureState.normalized(amplitudes, (2, 2, 2))
    framed = states.multiqubit_schmidt_frame(state, 1)
    reduced = framed.density().reduced([1]).matrix
    assert abs(reduced[0, 1]) < 1e-12
    assert reduced[0, 0].real >= reduced[1, 1].real
    assert np.allclose(states.schmidt_decompose(framed, cut=1).coeffs,
                       states.schmidt_decompose(state, cut=1).coeffs, atol=1e-12)
