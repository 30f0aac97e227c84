import logging
import os
import traceback
from concurrent.futures import ThreadPoolExecutor
from inspect import isclass
from threading import Lock

from pluginbase import PluginBase

from concswap.config import Config
from concswap.core import InvalidParameterError
# common base class - every suite extends this
from concswap.verify import VerificationSuite

log = logging.getLogger(__name__)

builtin_suite_path = os.path.dirname(os.path.abspath(__file__))
BUILTIN_MODULES = ('builtin',)


class SuiteRegistry:

    init_lock = Lock()

    def __init__(self, init=False):
        self.__plugin_base = PluginBase(package='concswap.plugins')
        self.__available_suites = {}
        self.__suite_paths = set()
        self.__plugin_source = None
        self.__is_initialized = False

        if init:
            self.initialize()

    def is_initialized(self, new_paths):
        return self.__is_initialized and all([path in self.__suite_paths for path in new_paths])

    def initialize(self, suite_paths=None):
        """Collect built-in suites plus every suite found in ``suite_paths``."""
        with self.init_lock:
            if suite_paths is None:
                suite_paths = []

            if type(suite_paths) not in (list, set, tuple):
                suite_paths = [suite_paths]

            if self.is_initialized(suite_paths):
                return

            if not self.__is_initialized:
                from concswap.verify import builtin
                self.__collect_suites(builtin)

            new_paths = []
            for custom_path in suite_paths:
                if not os.path.isdir(custom_path):
                    log.error(f"Can't load suites: '{custom_path}': is not a directory.")
                    continue
                if custom_path not in self.__suite_paths:
                    new_paths.append(custom_path)
                    self.__suite_paths.add(custom_path)

            if new_paths:
                log.info(f"Loading suite plugins {self.__suite_paths}")
                self.__plugin_source = self.__plugin_base \
                    .make_plugin_source(searchpath=list(self.__suite_paths))
                for path in new_paths:
                    self.__load_path(path)

            log.debug(f"Suites available: {self.available_suites}")
            self.__is_initialized = True

    def __load_path(self, path):
        for module_file in sorted(os.listdir(path)):
            if not module_file.endswith(".py") or module_file.startswith("_"):
                continue
            module_name = module_file[:-len(".py")]

            with self.__plugin_source:
                try:
                    module = self.__plugin_source.load_plugin(module_name)
                except Exception as e:
                    log.error(f"{e}: Failed to load suite module '{module_name}' "
                              f"located in {path}/{module_file}")
                    traceback.print_exc()
                    continue
            self.__collect_suites(module)

    def __collect_suites(self, module):
        for attribute_name in dir(module):
            attribute = getattr(module, attribute_name)
            if attribute is VerificationSuite:
                continue
            if isclass(attribute) and issubclass(attribute, VerificationSuite):
                if getattr(attribute, 'name', 'abstract') == 'abstract':
                    log.error(f'class {attribute} has no attribute \'name\'')
                    continue
                if attribute.name in self.__available_suites \
                        and self.__available_suites[attribute.name] is not attribute:
                    log.warning(f"Suite '{attribute.name}' redefined by {attribute}")
                self.__available_suites[attribute.name] = attribute

    def get_class(self, name):
        return self.__available_suites.get(name)

    @property
    def available_suites(self):
        """Suite names in run order."""
        return [cls.name for cls in sorted(self.__available_suites.values(),
                                           key=lambda cls: (cls.order, cls.name))]

    def create(self, name, seed=None, trials=None):
        cls = self.get_class(name)
        if cls is None:
            raise InvalidParameterError(f"Unknown suite '{name}', "
                                        f"available: {', '.join(self.available_suites)}")
        return cls(seed=seed, trials=trials)

    def run_all(self, names=None, seed=None, trials=None, max_workers=None):
        """Run the named suites (all by default); results come back in run order."""
        self.initialize()
        names = self.available_suites if not names else list(dict.fromkeys(names))
        suites = [self.create(name, seed, trials) for name in names]
        suites.sort(key=lambda suite: (suite.order, suite.name))

        max_workers = Config.MAX_WORKERS if max_workers is None else max_workers
        with ThreadPoolExecutor(max_workers=max_workers) as executor:
            return list(executor.map(lambda suite: suite.run(), suites))


registry = SuiteRegistry(init=False)
