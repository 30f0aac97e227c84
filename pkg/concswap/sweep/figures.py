import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from concswap import __version__
from concswap.config import Config
from concswap.core import InvalidParameterError
from concswap.core.concurrence import (x_state_concurrence, input_boundary_p,
                                       isotropic_i_concurrence)
from concswap.core.states import noisy_qubit_pair, IsotropicParams
from concswap.core.swap import (noisy_outcome_closed_form, output_entanglement_windows)
from concswap.sweep import SweepTable, Figure

log = logging.getLogger(__name__)

NAN = float('nan')

HEADERS = {
    Figure.INPUT_CONCURRENCE: ['p', 'lambda0', 'C_X'],
    Figure.OUTCOME_PROBABILITIES: ['p', 'lambda0', 'P_Phi', 'P_Psi'],
    Figure.PHI_CONCURRENCE: ['p', 'lambda0', 'C_Phi'],
    Figure.PSI_CONCURRENCE: ['p', 'lambda0', 'C_Psi'],
    Figure.CONCURRENCE_RATIO: ['p', 'lambda0', 'ratio'],
    Figure.AVERAGE_CONCURRENCE: ['p', 'lambda0', 'C_av'],
}

BOUNDARY_HEADERS = {
    Figure.INPUT_CONCURRENCE: ['lambda0', 'p_boundary'],
    Figure.PHI_CONCURRENCE: ['p', 'lambda0_lo', 'lambda0_hi'],
    Figure.PSI_CONCURRENCE: ['p', 'lambda0_lo', 'lambda0_hi'],
    Figure.AVERAGE_CONCURRENCE: ['p', 'phi_lo', 'phi_hi', 'psi_lo', 'psi_hi'],
}


def axis(points):
    if int(points) != points or points < 2:
        raise InvalidParameterError(f"Grid needs at least 2 points, got {points}")
    return np.linspace(0.0, 1.0, int(points))


def _noisy_values(figure, p, lam0):
    c_x = x_state_concurrence(noisy_qubit_pair(p, lam0))
    if figure == Figure.INPUT_CONCURRENCE:
        return [c_x]
    p_phi, p_psi, c_phi, c_psi = noisy_outcome_closed_form(p, lam0)
    if figure == Figure.OUTCOME_PROBABILITIES:
        return [p_phi, p_psi]
    if figure == Figure.PHI_CONCURRENCE:
        return [c_phi]
    if figure == Figure.PSI_CONCURRENCE:
        return [c_psi]
    c_av = 2 * p_phi * c_phi + 2 * p_psi * c_psi
    if figure == Figure.AVERAGE_CONCURRENCE:
        return [c_av]
    # ratio undefined where the input is separable
    return [c_av / c_x ** 2 if c_x > 0.0 else NAN]


def _window(half_width):
    if half_width is None or half_width <= 0.0:
        return [NAN, NAN]
    return [0.5 - half_width, 0.5 + half_width]


def _boundary_row(figure, value):
    if figure == Figure.INPUT_CONCURRENCE:
        return [value, input_boundary_p(value)]
    windows = output_entanglement_windows(value)
    delta_phi, delta_psi = windows if windows is not None else (None, None)
    if figure == Figure.PHI_CONCURRENCE:
        return [value] + _window(delta_phi)
    if figure == Figure.PSI_CONCURRENCE:
        return [value] + _window(delta_psi)
    return [value] + _window(delta_phi) + _window(delta_psi)


def _isotropic_headers(figure, dimensions):
    headers = ['p']
    for n in dimensions:
        if figure == Figure.ISOTROPIC_CONCURRENCE:
            headers += [f'C_in_N{n}', f'C_out_N{n}']
        else:
            headers.append(f'ratio_N{n}')
    return headers


def _isotropic_row(figure, p, dimensions):
    row = [p]
    for n in dimensions:
        c_in = isotropic_i_concurrence(IsotropicParams(n, p))
        c_out = isotropic_i_concurrence(IsotropicParams(n, p * (2.0 - p)))
        if figure == Figure.ISOTROPIC_CONCURRENCE:
            row += [c_in, c_out]
        else:
            row.append(c_out / c_in if c_in > 0.0 else NAN)
    return row


class FigureSweep:
    """
    Builds the table (and the analytic boundary table, where the figure has
    one) for one figure. Rows are computed in a thread pool, one task per
    value of p, and collected in grid order.
    """

    def __init__(self, figure, grid=None, dimensions=None, max_workers=None, metadata=None):
        if not isinstance(figure, Figure):
            figure = Figure.from_string(figure)
            if figure is None:
                raise InvalidParameterError(f"Figure must be one of 1..{len(Figure)}")
        self.figure = figure
        if grid is None:
            grid = Config.SWEEP_CURVE_POINTS if figure.is_isotropic else Config.SWEEP_GRID
        self.grid = axis(grid)
        self.dimensions = tuple(Config.SWEEP_DIMENSIONS if dimensions is None else dimensions)
        self.max_workers = Config.MAX_WORKERS if max_workers is None else max_workers
        self.metadata = {'figure': figure.value, 'grid': len(self.grid), 'version': __version__}
        self.metadata.update(metadata or {})

    def __repr__(self):
        return f"<FigureSweep (figure={self.figure.value}, grid={len(self.grid)})>"

    def _map(self, function, values):
        with ThreadPoolExecutor(max_workers=self.max_workers) as executor:
            return list(executor.map(function, values))

    def table(self):
        figure = self.figure
        if figure.is_isotropic:
            rows = self._map(lambda p: _isotropic_row(figure, float(p), self.dimensions), self.grid)
            return SweepTable(_isotropic_headers(figure, self.dimensions), rows, self.metadata)

        def p_row(p):
            return [[float(p), float(lam0)] + _noisy_values(figure, float(p), float(lam0))
                    for lam0 in self.grid]

        log.info(f"{self}: computing {len(self.grid) ** 2} grid points")
        rows = [row for block in self._map(p_row, self.grid) for row in block]
        return SweepTable(HEADERS[figure], rows, self.metadata)

    def boundary(self):
        """Zero-concurrence contours from the closed forms; None for figures without one."""
        if not self.figure.has_boundary:
            return None
        rows = self._map(lambda value: _boundary_row(self.figure, float(value)), self.grid)
        metadata = dict(self.metadata, boundary=True)
        return SweepTable(BOUNDARY_HEADERS[self.figure], rows, metadata)

