"""
Entanglement swapping: brute-force oracles built from states, projections
and concurrences, next to the closed forms they are checked against.
"""
import logging
import math

import numpy as np

from concswap.config import Config
from concswap.core import (MethodTag, DimensionError, InvalidParameterError,
                           UndefinedRatioError, ClosedFormMismatchError)
from concswap.core import linalg
from concswap.core.concurrence import (concurrence_pure_qubit, concurrence_2xd_pure,
                                       wootters_concurrence, x_state_concurrence,
                                       i_concurrence_pure, isotropic_i_concurrence,
                                       isotropic_i_concurrence_from_fidelity)
from concswap.core.measurement import (SwapOutcome, bell_basis, ghz_basis,
                                       qudit_chi_basis, generalized_bell_basis,
                                       project, project_pure, BELL_LABELS)
from concswap.core.states import (SchmidtSpectrum, DensityMatrix, IsotropicParams,
                                  schmidt_pure, noisy_qubit_pair, isotropic_state,
                                  maximally_entangled, schmidt_decompose,
                                  multiqubit_schmidt_frame, check_probability)

log = logging.getLogger(__name__)

OUTPUT_THRESHOLD = 1.0 - 1.0 / math.sqrt(3.0)


class SwapReport:
    """
    Outcomes of one swap with their concurrences, the probability-weighted
    average and (optionally) the closed-form value it must reproduce.
    """

    def __init__(self, outcomes=None, per_outcome_concurrence=None, closed_form_value=None,
                 method_tag=MethodTag.BOTH, extras=None):
        outcomes = list(outcomes or [])
        per_outcome = [float(c) for c in (per_outcome_concurrence or [])]
        if len(per_outcome) != len(outcomes):
            raise DimensionError(f"{len(per_outcome)} concurrences for {len(outcomes)} outcomes.")
        self.outcomes = outcomes
        self.per_outcome_concurrence = per_outcome
        self.closed_form_value = None if closed_form_value is None else float(closed_form_value)
        self.method_tag = method_tag
        self.extras = dict(extras or {})

        if method_tag == MethodTag.CLOSED_FORM:
            if self.closed_form_value is None:
                raise InvalidParameterError("Closed-form report without a closed-form value.")
            self.average_concurrence = self.closed_form_value
        else:
            self.average_concurrence = float(sum(
                o.probability * c for o, c in zip(outcomes, per_outcome)
                if o.probability > Config.PROBABILITY_FLOOR))

        if method_tag == MethodTag.BOTH:
            if self.closed_form_value is None:
                raise InvalidParameterError("Report tagged 'both' needs a closed-form value.")
            if self.residual > Config.CLOSED_FORM_TOL:
                raise ClosedFormMismatchError(
                    f"Oracle {self.average_concurrence!r} vs closed form "
                    f"{self.closed_form_value!r} (residual {self.residual:.3e})")

    def __repr__(self):
        return (f"<SwapReport (method={self.method_tag}, average={self.average_concurrence:.17g}, "
                f"closed_form={self.closed_form_value})>")

    @property
    def residual(self):
        if self.closed_form_value is None or self.method_tag == MethodTag.CLOSED_FORM:
            return None
        return abs(self.average_concurrence - self.closed_form_value)

    @property
    def total_probability(self):
        return sum(o.probability for o in self.outcomes)

    def outcome(self, label):
        for o, c in zip(self.outcomes, self.per_outcome_concurrence):
            if o.label == label:
                return o, c
        raise KeyError(f'No such outcome: {label}')


def _resolve_method(method, oracle_allowed):
    if method is None:
        return MethodTag.BOTH if oracle_allowed else MethodTag.CLOSED_FORM
    if isinstance(method, str):
        tag = MethodTag.from_string(method)
        if tag is None:
            raise InvalidParameterError(f"Unknown method '{method}'")
        method = tag
    if method != MethodTag.CLOSED_FORM and not oracle_allowed:
        raise InvalidParameterError(f"Oracle unavailable at this size; use '{MethodTag.CLOSED_FORM}'")
    return method


def _build_report(method, oracle, closed_form, extras=None):
    """``oracle`` returns (outcomes, concurrences); ``closed_form`` returns a float."""
    outcomes, concurrences = oracle() if method != MethodTag.CLOSED_FORM else ([], [])
    closed = closed_form() if method != MethodTag.ORACLE else None
    return SwapReport(outcomes, concurrences, closed, method, extras)


# Pure qubits

def _generalized_coefficients(basis):
    """(a0, b0, a1, b1) if ``basis`` has the generalized Bell form, else None."""
    if basis.sig.dims != (2, 2):
        return None
    m = basis.matrix
    coefficients = (m[0, 0], m[0, 3], m[2, 1], m[2, 2])
    try:
        rebuilt = generalized_bell_basis(*coefficients)
    except InvalidParameterError:
        return None
    if float(np.max(np.abs(rebuilt.matrix - m))) > Config.NORM_TOL:
        return None
    return coefficients


def pure_qubit_outcomes_closed_form(s1, s2, a0, b0, a1, b1):
    """(probability, concurrence) of the four generalized Bell outcomes, basis order."""
    l0, l1 = s1.coeffs
    m0, m1 = s2.coeffs
    root = math.sqrt(l0 * l1 * m0 * m1)
    a0, b0, a1, b1 = (abs(x) ** 2 for x in (a0, b0, a1, b1))
    probabilities = (a0 * l0 * m0 + b0 * l1 * m1,
                     b0 * l0 * m0 + a0 * l1 * m1,
                     a1 * l0 * m1 + b1 * l1 * m0,
                     b1 * l0 * m1 + a1 * l1 * m0)
    weights = (math.sqrt(a0 * b0),) * 2 + (math.sqrt(a1 * b1),) * 2
    return [(p, 2 * w * root / p if p > Config.PROBABILITY_FLOOR else 0.0)
            for p, w in zip(probabilities, weights)]


def swap_pure_qubits(s1, s2, basis=None, method=None):
    """Swap two Schmidt-form qubit pairs ab, cd by measuring bc."""
    for s in (s1, s2):
        if len(s) != 2:
            raise DimensionError(f"Qubit spectra expected, got {len(s)} coefficients.")
    basis = bell_basis() if basis is None else basis
    coefficients = _generalized_coefficients(basis)
    method = _resolve_method(method, True)
    if coefficients is None and method != MethodTag.ORACLE:
        log.debug(f"{basis} is not of generalized Bell form, oracle only")
        method = MethodTag.ORACLE

    def oracle():
        joint = schmidt_pure(s1).tensor(schmidt_pure(s2))
        outcomes = project_pure(joint, basis, (1, 2))
        return outcomes, [concurrence_2xd_pure(o.post_vector) if o.is_possible else 0.0
                          for o in outcomes]

    def closed_form():
        a0, b0, a1, b1 = coefficients
        return 4 * (abs(a0 * b0) + abs(a1 * b1)) * math.sqrt(s1[0] * s1[1] * s2[0] * s2[1])

    extras = {}
    if coefficients is not None:
        extras['closed_form_outcomes'] = pure_qubit_outcomes_closed_form(s1, s2, *coefficients)
    return _build_report(method, oracle, closed_form, extras)


def max_average_concurrence_pure(s1, s2):
    return concurrence_pure_qubit(s1) * concurrence_pure_qubit(s2)


# Swap chains

def chain_oracle(spectra):
    """
    Sequential swaps along a chain of qubit pairs: keep every measurement
    branch as a pure end-to-end state, append the next pair, Bell-measure the
    two middle qubits. Returns one SwapOutcome per measurement record.
    """
    spectra = list(spectra)
    if len(spectra) < 2:
        raise InvalidParameterError("A chain needs at least two pairs.")
    basis = bell_basis()
    first = schmidt_pure(spectra[0])
    branches = [('', 1.0, first)]
    finished = []
    for spectrum in spectra[1:]:
        appended = schmidt_pure(spectrum)
        following = []
        for path, weight, state in branches:
            for outcome in project_pure(state.tensor(appended), basis, (1, 2)):
                label = f'{path}>{outcome.label}' if path else outcome.label
                probability = weight * outcome.probability
                if not outcome.is_possible or probability <= Config.PROBABILITY_FLOOR:
                    finished.append(SwapOutcome(label, probability))
                    continue
                following.append((label, probability, outcome.post_vector))
        branches = following
    finished.extend(SwapOutcome(label, weight, state.density(), state)
                    for label, weight, state in branches)
    return finished


def swap_chain(spectra):
    """Closed-form end-to-end average concurrence: the product rule."""
    spectra = list(spectra)
    if len(spectra) < 2:
        raise InvalidParameterError("A chain needs at least two pairs.")
    return math.prod(concurrence_pure_qubit(s) for s in spectra)


def chain_report(spectra, method=None):
    spectra = list(spectra)
    method = _resolve_method(method, len(spectra) <= Config.ORACLE_MAX_CHAIN)

    def oracle():
        outcomes = chain_oracle(spectra)
        return outcomes, [concurrence_2xd_pure(o.post_vector) if o.is_possible else 0.0
                          for o in outcomes]

    return _build_report(method, oracle, lambda: swap_chain(spectra))


# GHZ measurement on three pairs

def ghz_swap(s1, s2, s3, method=None):
    """
    Pairs ab, cd, ef; measure bdf in the GHZ basis; average concurrence of
    a against ce.
    """
    spectra = (s1, s2, s3)
    for s in spectra:
        if len(s) != 2:
            raise DimensionError(f"Qubit spectra expected, got {len(s)} coefficients.")
    method = _resolve_method(method, True)

    def oracle():
        joint = schmidt_pure(s1).tensor(schmidt_pure(s2)).tensor(schmidt_pure(s3))
        outcomes = project_pure(joint, ghz_basis(), (1, 3, 5))
        return outcomes, [concurrence_2xd_pure(o.post_vector, cut=1) if o.is_possible else 0.0
                          for o in outcomes]

    extras = {'p_G0+': (s1[0] * s2[0] * s3[0] + s1[1] * s2[1] * s3[1]) / 2}
    return _build_report(method, oracle,
                         lambda: math.prod(concurrence_pure_qubit(s) for s in spectra), extras)


# Multi-qubit extension

def _qubit_concurrence(state, qubit):
    reduced = linalg.partial_trace(state.density().matrix, state.sig, [qubit])
    values = linalg.hermitian_eigvals(reduced, clamp=True)
    return concurrence_pure_qubit(SchmidtSpectrum(np.clip(values, 0.0, None)))


def swap_multiqubit(state, qubit, s, method=None):
    """
    Swap one qubit of a multipartite pure state with a fresh pair bc:
    Bell-measure (qubit, b) and report the concurrence of c against the
    remaining subsystems.
    """
    if len(s) != 2:
        raise DimensionError(f"Qubit spectrum expected, got {len(s)} coefficients.")
    if len(state.sig) < 2:
        raise DimensionError("State needs at least two subsystems.")
    (qubit,) = state.sig.indices([qubit])
    if state.sig.dims[qubit] != 2:
        raise DimensionError(f"Subsystem {qubit} of {state.sig} is not a qubit.")
    method = _resolve_method(method, state.sig.total <= Config.ORACLE_MAX_STATE_DIM)

    def oracle():
        framed = multiqubit_schmidt_frame(state, qubit)
        joint = framed.tensor(schmidt_pure(s))
        b = len(state.sig)
        outcomes = project_pure(joint, bell_basis(), (qubit, b))
        cut = len(state.sig) - 1
        return outcomes, [concurrence_2xd_pure(o.post_vector, cut=cut) if o.is_possible else 0.0
                          for o in outcomes]

    return _build_report(method, oracle,
                         lambda: _qubit_concurrence(state, qubit) * concurrence_pure_qubit(s))


# Depolarized qubits

def noisy_outcome_margins(p, lam0):
    """
    Signed, unnormalized X-state margins of the Phi and Psi outcome states;
    an outcome is entangled exactly where its margin is positive.
    """
    p = check_probability("p", p)
    lam0 = check_probability("lambda0", lam0)
    lam1 = 1.0 - lam0
    q = 1.0 - p
    coherence = q ** 2 * lam0 * lam1 / 2
    mixed = p ** 2 / 16 + p * q / 8
    corner0 = p ** 2 / 16 + p * q * lam0 / 4
    corner1 = p ** 2 / 16 + p * q * lam1 / 4
    return coherence - mixed, coherence - math.sqrt(corner0 * corner1)


def noisy_outcome_closed_form(p, lam0):
    """
    P_Phi, P_Psi (probability of each of Phi+/-, Psi+/-) and the concurrence of
    the ad state after a Phi or a Psi outcome.
    """
    phi_margin, psi_margin = noisy_outcome_margins(p, lam0)
    lam1 = 1.0 - lam0
    q = 1.0 - p
    p_phi = p * (2 - p) / 4 + q ** 2 * (lam0 ** 2 + lam1 ** 2) / 2
    p_psi = p * (2 - p) / 4 + q ** 2 * lam0 * lam1
    c_phi = 2 * max(0.0, phi_margin) / p_phi if p_phi > Config.PROBABILITY_FLOOR else 0.0
    c_psi = 2 * max(0.0, psi_margin) / p_psi if p_psi > Config.PROBABILITY_FLOOR else 0.0
    return p_phi, p_psi, c_phi, c_psi


def noisy_post_state(p, lam0, label):
    """Closed-form ad state after Bell outcome ``label`` (X form)."""
    p = check_probability("p", p)
    lam0 = check_probability("lambda0", lam0)
    if label not in BELL_LABELS:
        raise InvalidParameterError(f"Unknown Bell outcome '{label}'")
    lam1 = 1.0 - lam0
    q = 1.0 - p
    p_phi, p_psi, _, _ = noisy_outcome_closed_form(p, lam0)
    sign = 1.0 if label.endswith('+') else -1.0
    base = p ** 2 / 16
    matrix = np.zeros((4, 4), dtype=complex)
    if label.startswith('Phi'):
        matrix[0, 0] = base + p * q * lam0 / 4 + q ** 2 * lam0 ** 2 / 2
        matrix[1, 1] = matrix[2, 2] = base + p * q / 8
        matrix[3, 3] = base + p * q * lam1 / 4 + q ** 2 * lam1 ** 2 / 2
        matrix[0, 3] = matrix[3, 0] = sign * q ** 2 * lam0 * lam1 / 2
        probability = p_phi
    else:
        matrix[0, 0] = base + p * q * lam0 / 4
        matrix[1, 1] = matrix[2, 2] = base + p * q / 8 + q ** 2 * lam0 * lam1 / 2
        matrix[3, 3] = base + p * q * lam1 / 4
        matrix[1, 2] = matrix[2, 1] = sign * q ** 2 * lam0 * lam1 / 2
        probability = p_psi
    if probability <= Config.PROBABILITY_FLOOR:
        return None
    return DensityMatrix(matrix / probability, (2, 2), check_psd=False)


def noisy_average_closed_form(p, lam0):
    p_phi, p_psi, c_phi, c_psi = noisy_outcome_closed_form(p, lam0)
    return 2 * p_phi * c_phi + 2 * p_psi * c_psi


def swap_noisy_qubits(p, lam0, method=None):
    """Swap two copies of the depolarized pair (p, lam0) with a Bell measurement."""
    p_phi, p_psi, c_phi, c_psi = noisy_outcome_closed_form(p, lam0)
    method = _resolve_method(method, True)

    def oracle():
        rho = noisy_qubit_pair(p, lam0)
        outcomes = project(rho.tensor(rho), bell_basis(), (1, 2))
        return outcomes, [wootters_concurrence(o.post_state) if o.is_possible else 0.0
                          for o in outcomes]

    extras = {'P_Phi': p_phi, 'P_Psi': p_psi, 'C_Phi': c_phi, 'C_Psi': c_psi}
    return _build_report(method, oracle, lambda: 2 * p_phi * c_phi + 2 * p_psi * c_psi, extras)


def output_entanglement_windows(p):
    """
    Half-widths (delta_phi, delta_psi) of the lambda0 windows around 1/2 in
    which the Phi and Psi outcomes stay entangled; None past the threshold.
    """
    p = check_probability("p", p)
    if p >= OUTPUT_THRESHOLD:
        return None
    q2 = 2 * (1.0 - p) ** 2
    phi = 1.0 - p * (2 - p) / q2
    psi = 1.0 - (p ** 2 + p * math.sqrt(2 * p * (2 - p))) / q2
    if phi <= 0.0 and psi <= 0.0:
        return None
    return 0.5 * math.sqrt(max(0.0, phi)), 0.5 * math.sqrt(max(0.0, psi))


def noisy_upper_bound(p, lam0):
    p = check_probability("p", p)
    lam0 = check_probability("lambda0", lam0)
    return 4 * (1.0 - p) ** 2 * lam0 * (1.0 - lam0)


def ratio_cav_over_cx2(p, lam0):
    c_x = x_state_concurrence(noisy_qubit_pair(p, lam0))
    if c_x <= 0.0:
        raise UndefinedRatioError(f"Input state (p={p}, lambda0={lam0}) is not entangled.")
    return noisy_average_closed_form(p, lam0) / c_x ** 2


# Pure qudits

def _shifted_products(s1, s2):
    """products[k, j] = lambda_j * lambda'_{j+k mod N}"""
    n = s1.n
    j = np.arange(n)
    return np.array([s1.coeffs * s2.coeffs[(j + k) % n] for k in range(n)])


def qudit_outcomes_closed_form(s1, s2):
    """{'chi_m_n': (probability, I-concurrence)} for every chi outcome."""
    if s1.n != s2.n:
        raise DimensionError(f"Spectra of different lengths: {s1.n} and {s2.n}")
    n = s1.n
    result = {}
    for k, products in enumerate(_shifted_products(s1, s2)):
        total = float(products.sum())
        deficit = max(0.0, total ** 2 - float(np.sum(products ** 2)))
        concurrence = math.sqrt(2 * deficit) / total if total > Config.PROBABILITY_FLOOR else 0.0
        for m in range(n):
            result[f'chi_{m}_{k}'] = (total / n, concurrence)
    return result


def qudit_average_closed_form(s1, s2):
    if s1.n != s2.n:
        raise DimensionError(f"Spectra of different lengths: {s1.n} and {s2.n}")
    products = _shifted_products(s1, s2)
    deficits = np.clip(products.sum(axis=1) ** 2 - np.sum(products ** 2, axis=1), 0.0, None)
    return math.sqrt(2) * float(np.sum(np.sqrt(deficits)))


def swap_pure_qudits(s1, s2, method=None):
    if s1.n != s2.n:
        raise DimensionError(f"Spectra of different lengths: {s1.n} and {s2.n}")
    n = s1.n
    method = _resolve_method(method, n <= Config.ORACLE_MAX_PURE_QUDIT)

    def oracle():
        joint = schmidt_pure(s1).tensor(schmidt_pure(s2))
        outcomes = project_pure(joint, qudit_chi_basis(n), (1, 2))
        return outcomes, [i_concurrence_pure(schmidt_decompose(o.post_vector))
                          if o.is_possible else 0.0 for o in outcomes]

    return _build_report(method, oracle, lambda: qudit_average_closed_form(s1, s2))


def small_epsilon_bound(n, eps):
    """Upper bound on the average I-concurrence when C_I(first pair) = sqrt(2 eps)."""
    if int(n) != n or n < 2:
        raise InvalidParameterError(f"Dimension must be an integer >= 2, got {n}")
    limit = 2 * (n - 1) / n ** 2
    if not 0.0 <= eps < limit:
        raise InvalidParameterError(f"eps={eps} outside [0, {limit})")
    delta = 0.5 - 0.5 * math.sqrt(1 - 2 * eps)
    return 2 * math.sqrt(n * delta) + n * delta


def block_exact_value(m):
    """Average I-concurrence for two M-block spectra (valid while 2M < N)."""
    if int(m) != m or m < 1:
        raise InvalidParameterError(f"Block size must be a positive integer, got {m}")
    roots = [math.sqrt(k * (k - 1)) for k in range(1, int(m) + 1)]
    return math.sqrt(2) / m ** 2 * (sum(roots) + sum(roots[:-1]))


def block_example_bounds(m):
    if int(m) != m or m < 2:
        raise InvalidParameterError(f"Block size must be an integer >= 2, got {m}")
    lower = math.sqrt(2) * ((m - 1) / m) ** 2
    upper = (m - 1) / (math.sqrt(2) * m) * (math.sqrt((m + 1) / (m - 1)) + math.sqrt(1 - 2 / m))
    return lower, upper


# Isotropic qudits

def local_correction(n, m, k):
    """U(m, k) = sum_r e^{-2 pi i m r/N} |r-k><r|"""
    r = np.arange(n)
    u = np.zeros((n, n), dtype=complex)
    u[(r - k) % n, r] = np.exp(-2j * np.pi * m * r / n)
    return u


def isotropic_outcome_state(par, m, k):
    """Closed-form ad state after outcome chi_mk: (U(m,k) x I) rho(p') (U(m,k) x I)^dagger."""
    n = par.n
    phi = np.kron(local_correction(n, m, k), np.eye(n)) @ maximally_entangled(n).amplitudes
    swapped = par.p * (2 - par.p)
    matrix = swapped * np.eye(n * n) / n ** 2 + (1 - par.p) ** 2 * np.outer(phi, phi.conj())
    return DensityMatrix(matrix, (n, n), check_psd=False)


def _label_indices(label):
    _, m, k = label.split('_')
    return int(m), int(k)


def swap_noisy_qudits(par, method=None):
    n = par.n
    swapped = IsotropicParams(n, par.p * (2 - par.p))
    method = _resolve_method(method, n <= Config.ORACLE_MAX_NOISY_QUDIT)
    target = isotropic_state(swapped)
    phi = maximally_entangled(n).amplitudes
    extras = {'p_swapped': swapped.p}

    def oracle():
        rho = isotropic_state(par)
        outcomes = project(rho.tensor(rho), qudit_chi_basis(n), (1, 2))
        concurrences, deviation = [], 0.0
        for o in outcomes:
            if not o.is_possible:
                concurrences.append(0.0)
                continue
            m, k = _label_indices(o.label)
            correction = np.kron(local_correction(n, m, k).conj().T, np.eye(n))
            corrected = o.post_state.conjugated(correction)
            deviation = max(deviation, float(np.max(np.abs(corrected.matrix - target.matrix))))
            concurrences.append(isotropic_i_concurrence_from_fidelity(n, corrected.fidelity(phi)))
        extras['max_isotropic_deviation'] = deviation
        return outcomes, concurrences

    return _build_report(method, oracle, lambda: isotropic_i_concurrence(swapped), extras)
