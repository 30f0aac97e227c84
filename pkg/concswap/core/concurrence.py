import logging
import math

import numpy as np
from scipy.optimize import minimize

from concswap.config import Config
from concswap.core import DimensionError, InvalidParameterError, InvalidStateError
from concswap.core import linalg
from concswap.core.states import (SchmidtSpectrum, DensityMatrix,
                                  schmidt_decompose, fidelity_isotropic, check_probability)

log = logging.getLogger(__name__)

# (sigma_y x sigma_y)[i, 3 - i]
_SPIN_FLIP_SIGNS = np.array([-1.0, 1.0, 1.0, -1.0])
# positions that must vanish in an X state
_OFF_X = np.array([[not (i == j or i + j == 3) for j in range(4)] for i in range(4)])


def _two_qubit(rho):
    if not isinstance(rho, DensityMatrix):
        rho = DensityMatrix(rho, (2, 2))
    if rho.sig.dims != (2, 2):
        raise DimensionError(f"Two-qubit state expected, got {rho.sig}.")
    return rho


def concurrence_pure_qubit(s):
    if len(s) != 2:
        raise DimensionError(f"Qubit spectrum expected, got {len(s)} coefficients.")
    return 2.0 * math.sqrt(s[0] * s[1])


def spin_flip(rho):
    """(sigma_y x sigma_y) rho* (sigma_y x sigma_y)"""
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)
    return np.conj(m[::-1, ::-1]) * np.outer(_SPIN_FLIP_SIGNS, _SPIN_FLIP_SIGNS)


def wootters_concurrence(rho):
    """max(0, r1 - r2 - r3 - r4), r_i the descending eigenvalues of
    R = sqrt(sqrt(rho) rho~ sqrt(rho))."""
    rho = _two_qubit(rho)
    root = linalg.psd_sqrt(rho.matrix)
    r_matrix = linalg.psd_sqrt(linalg.hermitize(root @ spin_flip(rho) @ root))
    r = linalg.hermitian_eigvals(r_matrix, clamp=True)
    return max(0.0, float(r[0] - r[1] - r[2] - r[3]))


def is_x_state(rho, tol=None):
    tol = Config.X_STATE_TOL if tol is None else tol
    m = rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho)
    return m.shape == (4, 4) and float(np.max(np.abs(m[_OFF_X]))) <= tol


def x_state_concurrence(rho):
    rho = _two_qubit(rho)
    if not is_x_state(rho):
        raise InvalidStateError("Not an X state; use wootters_concurrence instead.")
    m = rho.matrix
    d = np.clip(np.real(np.diag(m)), 0.0, None)
    value = max(0.0,
                abs(m[0, 3]) - math.sqrt(d[1] * d[2]),
                abs(m[1, 2]) - math.sqrt(d[0] * d[3]))
    return 2.0 * float(value)


def input_entanglement_window(p):
    """
    Open lambda0 interval on which the depolarized pair at ``p`` is entangled,
    or None once p >= 2/3.
    """
    p = check_probability("p", p)
    if p >= 2.0 / 3.0:
        return None
    radicand = 1.0 - p ** 2 / (4.0 * (1.0 - p) ** 2)
    if radicand <= 0.0:
        return None
    half_width = 0.5 * math.sqrt(radicand)
    return 0.5 - half_width, 0.5 + half_width


def input_boundary_p(lam0):
    """Mixing parameter at which the depolarized pair stops being entangled."""
    lam0 = check_probability("lambda0", lam0)
    return 1.0 - 1.0 / (1.0 + 4.0 * math.sqrt(lam0 * (1.0 - lam0)))


def i_concurrence_pure(s):
    c = s.coeffs
    deficit = max(0.0, float(c.sum() ** 2 - np.sum(c ** 2)))
    return math.sqrt(2.0 * deficit)


def concurrence_2xd_pure(state, cut=None):
    """Concurrence of a pure state across a cut with a qubit on one side."""
    spectrum = state if isinstance(state, SchmidtSpectrum) else schmidt_decompose(state, cut)
    if len(spectrum) != 2:
        raise DimensionError(f"Neither side of the cut is a qubit ({len(spectrum)} coefficients).")
    return concurrence_pure_qubit(spectrum)


class QSolution:
    """Two-valued stationary point: r entries equal alpha, N - r equal beta."""

    def __init__(self, n, r, f, alpha, beta, q_value):
        self.n = n
        self.r = r
        self.f = f
        self.alpha = alpha
        self.beta = beta
        self.q_value = q_value

    def __repr__(self):
        return f"<QSolution (n={self.n}, r={self.r}, f={self.f}, q={self.q_value:.17g})>"

    @property
    def residuals(self):
        """Deviations from the norm and fidelity constraints."""
        norm = self.r * self.alpha ** 2 + (self.n - self.r) * self.beta ** 2 - 1.0
        fidelity = self.r * self.alpha + (self.n - self.r) * self.beta - math.sqrt(self.f * self.n)
        return abs(norm), abs(fidelity)


def _check_dimension(n):
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"Dimension must be an integer >= 2, got {n}")
    return int(n)


def q_branch(n, r, f):
    n = _check_dimension(n)
    if int(r) != r or not 1 <= r <= n - 1:
        raise InvalidParameterError(f"Branch r={r} outside 1..{n - 1}")
    r = int(r)
    f = float(f)
    if not r / n - 1e-12 <= f <= 1.0 + 1e-12:
        raise InvalidParameterError(f"Fidelity {f} outside the branch domain [{r}/{n}, 1]")
    f = min(max(f, r / n), 1.0)

    alpha = (math.sqrt(r * f) + math.sqrt((n - r) * (1.0 - f))) / math.sqrt(r * n)
    beta = max(0.0, (math.sqrt(f * n) - r * alpha) / (n - r))
    k_squared = 1.0 - r * alpha ** 4 - (n - r) * beta ** 4
    # sqrt2 keeps the F=1 endpoint on the pure-state I-concurrence
    q_value = math.sqrt(2.0) * math.sqrt(max(0.0, k_squared))
    return QSolution(n, r, f, alpha, beta, q_value)


def q_min(n, f):
    """Pointwise minimum of q_branch over every admissible branch."""
    n = _check_dimension(n)
    branches = [q_branch(n, r, f) for r in range(1, n) if r / n <= f + 1e-12]
    if not branches:
        raise InvalidParameterError(f"No branch admits F={f} for N={n}")
    return min(branches, key=lambda solution: solution.q_value)


def isotropic_i_concurrence_from_fidelity(n, f):
    n = _check_dimension(n)
    if f <= 1.0 / n:
        return 0.0
    return math.sqrt(2.0) * (n * f - 1.0) / math.sqrt(n * (n - 1))


def isotropic_i_concurrence(par):
    return isotropic_i_concurrence_from_fidelity(par.n, fidelity_isotropic(par))


def isotropic_thresholds(n):
    """(input, output) mixing thresholds of the isotropic swap."""
    n = _check_dimension(n)
    input_threshold = n / (n + 1)
    output_threshold = 1.0 - math.sqrt(n ** 3 - n ** 2 - n + 1) / (n ** 2 - 1)
    return input_threshold, output_threshold


def _constraint_curve(f, step):
    """
    Three-level simplex points with F(mu) = f exactly: mu_0 runs over a grid of
    the given step, mu_1 <= mu_2 are solved from the two constraints.
    """
    size = int(round(1.0 / step))
    first = np.arange(size + 1) / size
    rest = 1.0 - first
    # s = sqrt(mu_1) + sqrt(mu_2), d = sqrt(mu_1 mu_2) = (s^2 - rest) / 2
    s = math.sqrt(3.0 * f) - np.sqrt(first)
    d = (s ** 2 - rest) / 2.0
    feasible = (s >= 0.0) & (d >= -1e-12) & (d <= rest / 2.0 + 1e-12)
    rest = rest[feasible]
    d = np.clip(d[feasible], 0.0, rest / 2.0)
    second = (rest - np.sqrt(np.clip(rest ** 2 - 4.0 * d ** 2, 0.0, None))) / 2.0
    return np.stack([first[feasible], second, rest - second], axis=1)


def brute_force_k_minimum(f, step=None, polish=False):
    """
    Minimum of sqrt2 * sqrt(1 - sum mu_i^2) over the three-level simplex at
    F(mu) = (sum sqrt(mu_i))^2 / 3 = f, scanned along the constraint curve.
    ``polish`` refines the best grid point with SLSQP in x_i = sqrt(mu_i).
    """
    if not 0.0 <= f <= 1.0:
        raise InvalidParameterError(f"Fidelity {f} outside [0, 1]")
    step = Config.BRUTE_FORCE_STEP if step is None else step
    mu = _constraint_curve(f, step)
    if not len(mu):
        raise InvalidParameterError(f"No simplex point with fidelity {f} at step {step}")
    values = math.sqrt(2.0) * np.sqrt(np.clip(1.0 - np.sum(mu ** 2, axis=1), 0.0, None))
    best = int(np.argmin(values))
    value = float(values[best])
    if not polish:
        return value

    target = math.sqrt(3.0 * f)
    constraints = ({'type': 'eq', 'fun': lambda x: np.sum(x ** 2) - 1.0},
                   {'type': 'eq', 'fun': lambda x: np.sum(x) - target})
    result = minimize(lambda x: 1.0 - np.sum(x ** 4), np.sqrt(mu[best]), method='SLSQP',
                      bounds=[(0.0, 1.0)] * 3, constraints=constraints,
                      options={'ftol': 1e-14, 'maxiter': 200})
    if not result.success:
        log.debug(f"SLSQP polish failed at F={f}: {result.message}")
        return value
    polished = math.sqrt(2.0) * math.sqrt(max(0.0, float(result.fun)))
    log.debug(f"Brute force at F={f}: grid {value:.6f}, polished {polished:.6f}")
    return polished
