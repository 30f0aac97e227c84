import os

import pytest
import shutil

from concswap.core import InvalidParameterError
from concswap.verify import VerificationSuite
from concswap.verify import builtin
from concswap.verify.registry import SuiteRegistry, registry
from tests.constants import PLUGIN_SUITE_NAME


def test_builtin_suites():
    registry.initialize()
    names = registry.available_suites
    assert names[:3] == ['product_rule', 'chain_rule', 'ghz_rule']
    assert 'isotropic' in names
    assert registry.get_class('noisy_oracle') is builtin.NoisyOracleSuite
    assert registry.get_class('nothing') is None
    assert VerificationSuite not in [registry.get_class(name) for name in names]


def test_create_unknown():
    registry.initialize()
    with pytest.raises(InvalidParameterError, match="Unknown suite"):
        registry.create('nothing')


def test_create_passes_seed_and_trials():
    suite = registry.create('ghz_rule', seed=3, trials=4)
    assert (suite.seed, suite.trials) == (3, 4)
    assert registry.create('ghz_rule').trials == builtin.GhzRuleSuite.default_trials


def test_run_all_in_order():
    results = registry.run_all(names=['ghz_rule', 'product_rule', 'ghz_rule'], seed=1, trials=2)
    assert [r.name for r in results] == ['product_rule', 'ghz_rule']
    assert all(r.is_success for r in results)


@pytest.fixture()
def suite_dir(tmp_path):
    dir_path = os.path.join(str(tmp_path), 'suites')
    os.mkdir(dir_path)
    content = f"""
from concswap.verify import VerificationSuite


class PluginSuite(VerificationSuite):
    name = '{PLUGIN_SUITE_NAME}'
    order = 100

    def _run(self, rng, trials):
        for _ in range(trials):
            yield rng.random() * 1e-13, 1e-12
"""
    with open(os.path.join(dir_path, 'plugin_suites.py'), 'x') as file:
        file.write(content)
    yield dir_path
    shutil.rmtree(dir_path)


def test_plugin_suite(suite_dir):
    plugins = SuiteRegistry(init=True)
    assert PLUGIN_SUITE_NAME not in plugins.available_suites
    plugins.initialize(suite_paths=[suite_dir])
    assert plugins.available_suites[-1] == PLUGIN_SUITE_NAME
    result = plugins.create(PLUGIN_SUITE_NAME, trials=3).run()
    assert result.is_success
    assert result.checks == 3


def test_missing_plugin_dir(tmp_path):
    plugins = SuiteRegistry(init=True)
    plugins.initialize(suite_paths=[os.path.join(str(tmp_path), 'missing')])
    assert 'product_rule' in plugins.available_suites
