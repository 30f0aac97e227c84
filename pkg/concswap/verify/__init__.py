import logging
import math
import time
import traceback
import zlib

import numpy as np

from concswap.config import Config


class SuiteResult:
    """Outcome of one verification suite."""

    def __init__(self, name, passed, max_residual, trials, checks, failures, elapsed=0.0,
                 error=None):
        self.name = name
        self.passed = passed
        self.max_residual = max_residual
        self.trials = trials
        self.checks = checks
        self.failures = failures
        self.elapsed = elapsed
        self.error = error

    def __repr__(self):
        return (f"<SuiteResult (name={self.name}, passed={self.passed}, "
                f"max_residual={self.max_residual})>")

    @property
    def is_success(self):
        return self.passed

    def summary(self):
        """One deterministic report line (no timing)."""
        status = "PASS" if self.passed else "FAIL"
        line = (f"{self.name:<18} {status}  max_residual={self.max_residual:.17g}  "
                f"checks={self.checks}  failures={self.failures}  trials={self.trials}")
        if self.error:
            line += f"  error={self.error}"
        return line


class VerificationSuite(object):
    """
    A named group of oracle-vs-closed-form checks. String 'name' is required.
    ``_run`` yields (residual, tolerance) pairs; a check fails when its
    residual exceeds its tolerance or is not finite.
    """

    log = logging.getLogger(__name__)
    name = "abstract"
    order = 0
    default_trials = 1
    description = ""

    def __init__(self, seed=None, trials=None):
        self.seed = Config.DEFAULT_SEED if seed is None else int(seed)
        self.trials = self.default_trials if trials is None else int(trials)

    def __repr__(self):
        return f"<{type(self).__name__} (name={self.name}, seed={self.seed}, trials={self.trials})>"

    def rng(self):
        """Independent PCG64 stream per suite, derived from the root seed and the name."""
        sequence = np.random.SeedSequence(self.seed, spawn_key=(zlib.crc32(self.name.encode()),))
        return np.random.Generator(np.random.PCG64(sequence))

    def _run(self, rng, trials):
        raise NotImplementedError

    def run(self):
        """Intercept and record unexpected errors"""
        start = time.perf_counter()
        checks, failures, max_residual = 0, 0, 0.0
        try:
            self.log.debug(f"{self}: running")
            for residual, tolerance in self._run(self.rng(), self.trials):
                residual = float(residual)
                checks += 1
                if not math.isfinite(residual) or residual > tolerance:
                    failures += 1
                    max_residual = math.inf if not math.isfinite(residual) else max(max_residual, residual)
                    continue
                max_residual = max(max_residual, residual)
        except Exception as e:
            self.log.error(f"Suite {self.name} failed: {e}")
            traceback.print_exc()
            return SuiteResult(self.name, False, max_residual, self.trials, checks, failures + 1,
                               time.perf_counter() - start, error=f"{type(e).__name__}: {e}")
        elapsed = time.perf_counter() - start
        passed = failures == 0 and checks > 0
        level = logging.INFO if passed else logging.ERROR
        self.log.log(level, f"Suite {self.name}: {checks} checks, {failures} failures, "
                            f"max residual {max_residual:.3e} in {elapsed:.2f}s")
        return SuiteResult(self.name, passed, max_residual, self.trials, checks, failures, elapsed)
