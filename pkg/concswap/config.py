import os


class Config(object):
    # Numerical tolerances
    HERMITIAN_TOL = 1e-12
    TRACE_TOL = 1e-12
    NORM_TOL = 1e-12
    PSD_TOL = 1e-10
    CLAMP_TOL = 1e-12  # |eigenvalue| below this is round-off, set to 0
    NEGATIVE_EIG_ERROR = 1e-9  # anything more negative is a corrupted matrix
    PROBABILITY_FLOOR = 1e-14  # outcomes at or below carry no post-state
    SPECTRUM_SUM_TOL = 1e-12
    SPECTRUM_RENORMALIZE_TOL = 1e-9
    X_STATE_TOL = 1e-12
    CLOSED_FORM_TOL = 1e-8  # oracle vs closed form in a SwapReport

    # Eigensolver: 'jacobi' (cyclic Jacobi) or 'lapack' (numpy.linalg.eigh)
    EIGENSOLVER = os.environ.get('CONCSWAP_EIGENSOLVER') or 'jacobi'
    JACOBI_TOL = 1e-14
    JACOBI_MAX_SWEEPS = int(os.environ.get('CONCSWAP_JACOBI_MAX_SWEEPS') or 100)

    # Oracle caps, closed forms cover every N
    ORACLE_MAX_PURE_QUDIT = int(os.environ.get('CONCSWAP_ORACLE_MAX_PURE_QUDIT') or 6)
    ORACLE_MAX_NOISY_QUDIT = int(os.environ.get('CONCSWAP_ORACLE_MAX_NOISY_QUDIT') or 3)
    ORACLE_MAX_CHAIN = int(os.environ.get('CONCSWAP_ORACLE_MAX_CHAIN') or 6)  # 4^(k-1) branches
    ORACLE_MAX_STATE_DIM = 256  # multipartite input of the multi-qubit swap

    # Sweeps
    SWEEP_GRID = 201
    SWEEP_CURVE_POINTS = 1001
    SWEEP_DIMENSIONS = (2, 3, 4, 5, 8)
    MAX_WORKERS = int(os.environ.get('CONCSWAP_MAX_WORKERS') or 4)  # sweep threads

    # Verification
    DEFAULT_SEED = int(os.environ.get('CONCSWAP_SEED') or 20240601)
    BRUTE_FORCE_STEP = 1e-3

    LOG_LEVEL = os.environ.get('CONCSWAP_LOG_LEVEL') or 'WARNING'


class TestConfig(Config):
    TESTING = True
    SWEEP_GRID = 11
    SWEEP_CURVE_POINTS = 21
    MAX_WORKERS = 2
    BRUTE_FORCE_STEP = 5e-3
    LOG_LEVEL = 'DEBUG'
