import mock
import pytest

from concswap.core import swap
from concswap.verify import SuiteResult, VerificationSuite
from concswap.verify import builtin
from concswap.verify.registry import registry

SMALL_TRIALS = {
    'product_rule': 10,
    'chain_rule': 3,
    'ghz_rule': 10,
    'noisy_thresholds': 20,
    'noisy_oracle': 5,
    'upper_bound_ratio': 20,
    'wootters_vs_x': 10,
    'qudit_closed_form': 3,
    'maximal_partner': 3,
    'block_example': 4,
    'isotropic': 2,
    'multiqubit_rule': 3,
}


@pytest.fixture(autouse=True)
def initialized_registry():
    registry.initialize()
    return registry


def flipped_noisy_closed_form(original):
    def flipped(p, lam0):
        p_phi, p_psi, c_phi, c_psi = original(p, lam0)
        return p_phi, p_psi, -c_phi, c_psi
    return flipped


@pytest.mark.parametrize("name", sorted(SMALL_TRIALS))
def test_suite_passes(name):
    result = registry.create(name, trials=SMALL_TRIALS[name]).run()
    assert type(result) is SuiteResult
    assert result.is_success, result.summary()
    assert result.checks > 0
    assert result.failures == 0


@pytest.mark.slow
@pytest.mark.parametrize("name", sorted(SMALL_TRIALS))
def test_suite_passes_full_size(name):
    result = registry.create(name).run()
    assert result.is_success, result.summary()


def test_every_suite_has_small_trials():
    assert set(registry.available_suites) == set(SMALL_TRIALS)


def test_same_seed_same_summary():
    first = registry.create('product_rule', seed=7, trials=5).run()
    second = registry.create('product_rule', seed=7, trials=5).run()
    assert first.summary() == second.summary()


def test_streams_depend_on_name_and_seed():
    a = builtin.ProductRuleSuite(seed=1).rng().random()
    b = builtin.ProductRuleSuite(seed=2).rng().random()
    c = builtin.ChainRuleSuite(seed=1).rng().random()
    assert len({a, b, c}) == 3
    assert builtin.ProductRuleSuite(seed=1).rng().random() == a


def test_flipped_sign_fails_noisy_oracle():
    original = swap.noisy_outcome_closed_form
    with mock.patch.object(swap, 'noisy_outcome_closed_form', flipped_noisy_closed_form(original)):
        result = builtin.NoisyOracleSuite(trials=3).run()
    assert not result.is_success
    assert result.failures > 0
    assert "FAIL" in result.summary()


def test_exception_is_recorded():
    with mock.patch.object(builtin.GhzRuleSuite, '_run', side_effect=RuntimeError("boom")):
        result = builtin.GhzRuleSuite(trials=1).run()
    assert not result.is_success
    assert result.error == "RuntimeError: boom"
    assert "error=RuntimeError: boom" in result.summary()


def test_non_finite_residual_fails():
    class NanSuite(VerificationSuite):
        name = "nan_suite"

        def _run(self, rng, trials):
            yield float('nan'), 1.0

    result = NanSuite().run()
    assert not result.is_success
    assert result.failures == 1


def test_empty_suite_fails():
    class EmptySuite(VerificationSuite):
        name = "empty_suite"

        def _run(self, rng, trials):
            return iter(())

    assert not EmptySuite().run().is_success
