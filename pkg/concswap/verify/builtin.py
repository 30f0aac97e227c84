"""
Built-in verification suites. Each compares a brute-force oracle with the
matching closed form (or checks an inequality the closed forms promise).
"""
import math

import numpy as np
from scipy.optimize import brentq

from concswap.core import MethodTag
from concswap.core import concurrence, states, swap
from concswap.core.measurement import generalized_bell_basis
from concswap.core.states import SchmidtSpectrum, IsotropicParams
from concswap.verify import VerificationSuite


def _random_qubit_spectra(rng, count):
    return [SchmidtSpectrum.random(2, rng) for _ in range(count)]


def _grid(side):
    return np.linspace(0.0, 1.0, max(2, int(side)))


class ProductRuleSuite(VerificationSuite):
    name = "product_rule"
    order = 1
    default_trials = 200
    description = "Bell-basis swap of pure qubit pairs averages to C_ab * C_cd"

    def _run(self, rng, trials):
        for _ in range(trials):
            s1, s2 = _random_qubit_spectra(rng, 2)
            report = swap.swap_pure_qubits(s1, s2, method=MethodTag.ORACLE)
            yield abs(report.average_concurrence - swap.max_average_concurrence_pure(s1, s2)), 1e-10
            yield abs(report.total_probability - 1.0), 1e-10

            basis = generalized_bell_basis(*states.random_normalized_pair(rng),
                                           *states.random_normalized_pair(rng))
            general = swap.swap_pure_qubits(s1, s2, basis, method=MethodTag.BOTH)
            yield general.residual, 1e-10


class ChainRuleSuite(VerificationSuite):
    name = "chain_rule"
    order = 2
    default_trials = 50
    description = "Sequential swaps along a chain multiply the pair concurrences"

    def _run(self, rng, trials):
        for length in (3, 4):
            for _ in range(trials):
                spectra = _random_qubit_spectra(rng, length)
                report = swap.chain_report(spectra, method=MethodTag.ORACLE)
                yield abs(report.average_concurrence - swap.swap_chain(spectra)), 1e-9


class GhzRuleSuite(VerificationSuite):
    name = "ghz_rule"
    order = 3
    default_trials = 100
    description = "GHZ-basis swap of three pairs multiplies the three concurrences"

    def _run(self, rng, trials):
        for _ in range(trials):
            spectra = _random_qubit_spectra(rng, 3)
            report = swap.ghz_swap(*spectra, method=MethodTag.ORACLE)
            product = math.prod(concurrence.concurrence_pure_qubit(s) for s in spectra)
            yield abs(report.average_concurrence - product), 1e-10
            outcome, _ = report.outcome('G0+')
            yield abs(outcome.probability - report.extras['p_G0+']), 1e-12


class NoisyThresholdSuite(VerificationSuite):
    name = "noisy_thresholds"
    order = 4
    default_trials = 200
    description = "Entanglement thresholds of depolarized pairs before and after the swap"

    def _run(self, rng, trials):
        input_threshold = 2.0 / 3.0

        # C_X(p, 1/2) > 0 strictly below 2/3
        for p in np.linspace(0.0, input_threshold, max(2, trials), endpoint=False):
            c_x = concurrence.x_state_concurrence(states.noisy_qubit_pair(p, 0.5))
            yield (0.0 if c_x > 0.0 else 1.0), 0.0
        yield concurrence.x_state_concurrence(states.noisy_qubit_pair(input_threshold, 0.5)), 1e-9
        yield abs(concurrence.input_boundary_p(0.5) - input_threshold), 1e-12
        root = brentq(lambda p: (1 - p) * 0.5 - p / 4, 0.0, 0.99, xtol=1e-15)
        yield abs(root - input_threshold), 1e-9

        # both output windows close together
        for index in (0, 1):
            root = brentq(lambda p: swap.noisy_outcome_margins(p, 0.5)[index], 0.1, 0.6, xtol=1e-15)
            yield abs(root - swap.OUTPUT_THRESHOLD), 1e-9
        yield (0.0 if swap.output_entanglement_windows(swap.OUTPUT_THRESHOLD) is None else 1.0), 0.0

        # window ordering and window edges
        for p in np.linspace(0.0, swap.OUTPUT_THRESHOLD, max(3, trials), endpoint=False)[1:]:
            delta_phi, delta_psi = swap.output_entanglement_windows(p)
            lo, hi = concurrence.input_entanglement_window(p)
            yield (0.0 if delta_psi > delta_phi else 1.0), 0.0
            yield (0.0 if (hi - lo) / 2 > delta_psi else 1.0), 0.0
            yield abs(swap.noisy_outcome_margins(p, 0.5 + delta_phi)[0]), 1e-12
            yield abs(swap.noisy_outcome_margins(p, 0.5 + delta_psi)[1]), 1e-12


class NoisyOracleSuite(VerificationSuite):
    name = "noisy_oracle"
    order = 5
    default_trials = 50
    description = "Depolarized-qubit closed forms against the 16x16 brute force"

    def _run(self, rng, trials):
        grid = _grid(trials)
        for p in grid:
            for lam0 in grid:
                report = swap.swap_noisy_qubits(p, lam0, method=MethodTag.ORACLE)
                p_phi, p_psi, c_phi, c_psi = swap.noisy_outcome_closed_form(p, lam0)
                yield abs(2 * (p_phi + p_psi) - 1.0), 1e-12
                yield abs(report.average_concurrence
                          - swap.noisy_average_closed_form(p, lam0)), 1e-10
                for outcome, value in zip(report.outcomes, report.per_outcome_concurrence):
                    is_phi = outcome.label.startswith('Phi')
                    yield abs(outcome.probability - (p_phi if is_phi else p_psi)), 1e-12
                    if not outcome.is_possible:
                        continue
                    yield abs(value - (c_phi if is_phi else c_psi)), 1e-10
                    closed = swap.noisy_post_state(p, lam0, outcome.label)
                    yield float(np.max(np.abs(closed.matrix - outcome.post_state.matrix))), 1e-10
                    yield abs(concurrence.x_state_concurrence(outcome.post_state) - value), 1e-10


class UpperBoundRatioSuite(VerificationSuite):
    name = "upper_bound_ratio"
    order = 6
    default_trials = 200
    description = "C_av <= 4(1-p)^2 lambda0 lambda1 and C_av / C_X^2 is nonincreasing in p"
    lambdas = (0.01, 0.025, 0.1, 0.15, 0.25, 0.5)

    def _run(self, rng, trials):
        grid = _grid(trials)
        for p in grid:
            for lam0 in grid:
                excess = swap.noisy_average_closed_form(p, lam0) - swap.noisy_upper_bound(p, lam0)
                yield max(0.0, excess), 1e-12

        for lam0 in self.lambdas:
            yield abs(swap.ratio_cav_over_cx2(0.0, lam0) - 1.0), 1e-12
            boundary = concurrence.input_boundary_p(lam0)
            ratios = [swap.ratio_cav_over_cx2(p, lam0)
                      for p in np.linspace(0.0, boundary, max(2, trials), endpoint=False)]
            for before, after in zip(ratios, ratios[1:]):
                yield max(0.0, after - before), 1e-12
            yield max(0.0, max(ratios) - 1.0), 1e-12


class WoottersSuite(VerificationSuite):
    name = "wootters_vs_x"
    order = 7
    default_trials = 100
    description = "Wootters oracle against the X-state and pure-state closed forms"

    def _run(self, rng, trials):
        for spectrum in _random_qubit_spectra(rng, trials):
            rho = states.schmidt_pure(spectrum).density()
            yield abs(concurrence.wootters_concurrence(rho)
                      - concurrence.concurrence_pure_qubit(spectrum)), 1e-10
        grid = _grid(min(trials, 50))
        for p in grid:
            for lam0 in grid:
                rho = states.noisy_qubit_pair(p, lam0)
                yield abs(concurrence.wootters_concurrence(rho)
                          - concurrence.x_state_concurrence(rho)), 1e-10


class QuditClosedFormSuite(VerificationSuite):
    name = "qudit_closed_form"
    order = 8
    default_trials = 50
    description = "Average I-concurrence of the qudit swap against the chi-basis oracle"

    def _run(self, rng, trials):
        for n in (2, 3, 4, 5):
            for _ in range(trials):
                s1, s2 = SchmidtSpectrum.random(n, rng), SchmidtSpectrum.random(n, rng)
                report = swap.swap_pure_qudits(s1, s2, method=MethodTag.ORACLE)
                closed = swap.qudit_average_closed_form(s1, s2)
                yield abs(report.average_concurrence - closed), 1e-9
                expected = swap.qudit_outcomes_closed_form(s1, s2)
                for outcome in report.outcomes:
                    yield abs(outcome.probability - expected[outcome.label][0]), 1e-12
                if n == 2:
                    yield abs(closed - swap.max_average_concurrence_pure(s1, s2)), 1e-12


class MaximalPartnerSuite(VerificationSuite):
    name = "maximal_partner"
    order = 9
    default_trials = 50
    description = "A maximally entangled partner passes the other pair's I-concurrence through"

    def _run(self, rng, trials):
        for n in range(2, 9):
            uniform = SchmidtSpectrum.uniform(n)
            for _ in range(trials):
                s = SchmidtSpectrum.random(n, rng)
                report = swap.swap_pure_qudits(s, uniform)
                yield abs(report.average_concurrence - concurrence.i_concurrence_pure(s)), 1e-10


class BlockExampleSuite(VerificationSuite):
    name = "block_example"
    order = 10
    default_trials = 10
    description = "M-block spectra: exact value and its two bounds; the small-epsilon bound"

    def _run(self, rng, trials):
        block = SchmidtSpectrum.block(2, 5)
        yield abs(swap.block_exact_value(2) - 0.5), 1e-15
        report = swap.swap_pure_qudits(block, block, method=MethodTag.ORACLE)
        yield abs(report.average_concurrence - 0.5), 1e-10

        top = max(2, trials)
        for m in range(2, top + 1):
            exact = swap.block_exact_value(m)
            lower, upper = swap.block_example_bounds(m)
            yield max(0.0, lower - exact), 0.0
            yield max(0.0, exact - upper), 0.0
            spectrum = SchmidtSpectrum.block(m, 2 * m + 1)
            yield abs(swap.qudit_average_closed_form(spectrum, spectrum) - exact), 1e-12

        bounds = [swap.block_example_bounds(m) for m in range(2, 51)]
        for (lower, upper), (next_lower, next_upper) in zip(bounds, bounds[1:]):
            yield max(0.0, lower - next_lower), 0.0
            yield max(0.0, upper - next_upper), 0.0

        yield from self._small_epsilon(rng, 10 * trials)

    def _small_epsilon(self, rng, partners, n=4, eps=0.05):
        delta = 0.5 - 0.5 * math.sqrt(1 - 2 * eps)
        s1 = SchmidtSpectrum([1 - delta, delta] + [0.0] * (n - 2))
        yield abs(concurrence.i_concurrence_pure(s1) - math.sqrt(2 * eps)), 1e-12
        bound = swap.small_epsilon_bound(n, eps)
        for _ in range(partners):
            s2 = SchmidtSpectrum.random(n, rng)
            report = swap.swap_pure_qudits(s1, s2, method=MethodTag.ORACLE)
            yield max(0.0, report.average_concurrence - bound), 0.0


class IsotropicSuite(VerificationSuite):
    name = "isotropic"
    order = 11
    default_trials = 20
    description = "Isotropic closed form, its minimization and the isotropic swap"

    def _run(self, rng, trials):
        yield from self._minimization()
        yield from self._brute_force()
        yield from self._thresholds()
        yield from self._swap(rng, trials)

    def _minimization(self):
        for n in range(2, 9):
            for f in np.linspace(1.0 / n, 1.0, 100):
                first = concurrence.q_branch(n, 1, f)
                yield max(first.residuals), 1e-10
                yield abs(concurrence.q_min(n, f).q_value - first.q_value), 1e-12
                for r in range(2, n):
                    if r / n <= f:
                        yield max(0.0, first.q_value - concurrence.q_branch(n, r, f).q_value), 1e-12
                chord = concurrence.isotropic_i_concurrence_from_fidelity(n, f)
                yield max(0.0, chord - first.q_value), 1e-12

            curve = np.array([concurrence.q_branch(n, 1, f).q_value
                              for f in np.linspace(1.0 / n, 1.0, 1000)])
            yield max(0.0, float(np.max(curve[2:] - 2 * curve[1:-1] + curve[:-2]))), 1e-10

            endpoint = math.sqrt(2 * (1 - 1 / n))
            yield concurrence.isotropic_i_concurrence_from_fidelity(n, 1.0 / n), 0.0
            yield abs(concurrence.isotropic_i_concurrence_from_fidelity(n, 1.0) - endpoint), 1e-15
            yield abs(concurrence.q_branch(n, 1, 1.0).q_value - endpoint), 1e-12

    def _brute_force(self):
        for f in np.linspace(0.45, 0.95, 11):
            expected = concurrence.q_branch(3, 1, f).q_value
            yield abs(concurrence.brute_force_k_minimum(f, step=1e-3) - expected), 2e-3
            yield abs(concurrence.brute_force_k_minimum(f, step=1e-3, polish=True) - expected), 1e-5

    def _thresholds(self):
        for n in range(2, 9):
            input_threshold, output_threshold = concurrence.isotropic_thresholds(n)

            def input_margin(p):
                return n * states.fidelity_isotropic(IsotropicParams(n, p)) - 1

            def output_margin(p):
                return input_margin(p * (2 - p))

            yield abs(brentq(input_margin, 0.0, 1.0, xtol=1e-15) - input_threshold), 1e-9
            yield abs(brentq(output_margin, 0.0, 1.0, xtol=1e-15) - output_threshold), 1e-9
            yield abs(output_threshold - (1 - 1 / math.sqrt(n + 1))), 1e-12
        yield abs(concurrence.isotropic_thresholds(2)[1] - swap.OUTPUT_THRESHOLD), 1e-12

    def _swap(self, rng, trials):
        for n in (2, 3):
            rho = states.isotropic_state(IsotropicParams(n, 0.3))
            phi = states.maximally_entangled(n).amplitudes
            yield abs(rho.fidelity(phi) - states.fidelity_isotropic(IsotropicParams(n, 0.3))), 1e-12
            for _ in range(trials):
                u = states.random_unitary(n, rng)
                twirled = rho.conjugated(np.kron(u, u.conj()))
                yield float(np.max(np.abs(twirled.matrix - rho.matrix))), 1e-10

            for p in np.linspace(0.0, 1.0, max(2, min(trials, 11))):
                par = IsotropicParams(n, p)
                report = swap.swap_noisy_qudits(par, method=MethodTag.BOTH)
                yield report.residual, 1e-10
                yield report.extras['max_isotropic_deviation'], 1e-10
                for outcome in report.outcomes:
                    yield abs(outcome.probability - 1.0 / n ** 2), 1e-12
                    m, k = (int(x) for x in outcome.label.split('_')[1:])
                    closed = swap.isotropic_outcome_state(par, m, k)
                    yield float(np.max(np.abs(closed.matrix - outcome.post_state.matrix))), 1e-10
                spread = max(report.per_outcome_concurrence) - min(report.per_outcome_concurrence)
                yield spread, 1e-10

        rho = states.isotropic_state(IsotropicParams(2, 0.2))
        yield abs(concurrence.x_state_concurrence(rho)
                  - concurrence.isotropic_i_concurrence(IsotropicParams(2, 0.2))), 1e-12


class MultiqubitSuite(VerificationSuite):
    name = "multiqubit_rule"
    order = 12
    default_trials = 30
    description = "Swapping one qubit of a multi-qubit state multiplies concurrences"

    def _run(self, rng, trials):
        for k in (2, 3, 4):
            for _ in range(trials):
                amplitudes = rng.standard_normal(2 ** k) + 1j * rng.standard_normal(2 ** k)
                state = states.PureState.normalized(amplitudes, (2,) * k)
                qubit = int(rng.integers(k))
                report = swap.swap_multiqubit(state, qubit, SchmidtSpectrum.random(2, rng),
                                              method=MethodTag.BOTH)
                yield report.residual, 1e-10
