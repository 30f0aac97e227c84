import io
import json
import math
import os

import pytest

from concswap import __version__
from concswap.core import DimensionError, InvalidParameterError, OutputError
from concswap.sweep import SweepTable, Figure, boundary_path
from concswap.sweep.figures import FigureSweep, HEADERS, axis
from tests.constants import INPUT_THRESHOLD


@pytest.mark.parametrize("string, expected", [
    ("1", Figure.INPUT_CONCURRENCE), (8, Figure.ISOTROPIC_RATIO),
    ("9", None), ("x", None), (None, None),
])
def test_figure_from_string(string, expected):
    assert Figure.from_string(string) == expected


def test_figure_flags():
    assert [f.value for f in Figure if f.has_boundary] == [1, 3, 4, 6]
    assert [f.value for f in Figure if f.is_isotropic] == [7, 8]


def test_table_rectangular():
    table = SweepTable(['a', 'b'], [[1, 2]])
    with pytest.raises(DimensionError):
        table.append([1, 2, 3])
    assert len(table) == 1
    assert table.column('b') == [2.0]


def test_table_format():
    table = SweepTable(['x', 'y'], [[0.1, float('nan')], [1.0, 2.0 / 3.0]])
    stream = io.StringIO()
    table.write(stream)
    assert stream.getvalue() == "x,y\n0.10000000000000001,nan\n1,0.66666666666666663\n"


def test_table_save(tmp_path):
    path = os.path.join(str(tmp_path), 'table.csv')
    SweepTable(['x'], [[1.0]], {'seed': 1, 'figure': 2}).save(path)
    with open(f"{path}.meta.json") as f:
        text = f.read()
    assert text.endswith('\n')
    assert json.loads(text) == {'figure': 2, 'seed': 1}


def test_table_save_unwritable(tmp_path):
    with pytest.raises(OutputError):
        SweepTable(['x']).save(os.path.join(str(tmp_path), 'missing', 'table.csv'))


def test_boundary_path():
    assert boundary_path('out/fig1.csv') == 'out/fig1_boundary.csv'


@pytest.mark.parametrize("points", [1, 0, 2.5])
def test_axis_invalid(points):
    with pytest.raises(InvalidParameterError):
        axis(points)


def test_unknown_figure():
    with pytest.raises(InvalidParameterError):
        FigureSweep(9)


@pytest.mark.parametrize("figure", [f for f in Figure if not f.is_isotropic], ids=str)
def test_noisy_table_shape(figure, test_config):
    sweep = FigureSweep(figure)
    table = sweep.table()
    assert table.headers == HEADERS[figure]
    assert len(table) == test_config.SWEEP_GRID ** 2
    # p-major
    assert table.rows[0][:2] == [0.0, 0.0]
    assert table.rows[1][:2] == [0.0, 0.1]
    assert table.rows[test_config.SWEEP_GRID][:2] == [0.1, 0.0]
    assert table.metadata['figure'] == figure.value
    assert table.metadata['version'] == __version__


def test_probabilities_sum_to_half():
    table = FigureSweep(Figure.OUTCOME_PROBABILITIES, grid=5).table()
    for _, _, p_phi, p_psi in table.rows:
        assert p_phi + p_psi == pytest.approx(0.5, abs=1e-15)


def test_average_concurrence_of_bell_pairs():
    table = FigureSweep(Figure.AVERAGE_CONCURRENCE, grid=3).table()
    assert [r[2] for r in table.rows if r[0] == 0.0 and r[1] == 0.5] == [pytest.approx(1.0)]


def test_ratio_nan_where_input_separable():
    table = FigureSweep(Figure.CONCURRENCE_RATIO, grid=5).table()
    for p, lam0, ratio in table.rows:
        if p == 1.0 or lam0 in (0.0, 1.0):
            assert math.isnan(ratio)


def test_boundary_tables():
    assert FigureSweep(Figure.CONCURRENCE_RATIO).boundary() is None
    boundary = FigureSweep(Figure.INPUT_CONCURRENCE, grid=3).boundary()
    assert boundary.headers == ['lambda0', 'p_boundary']
    assert boundary.rows[1] == [0.5, pytest.approx(INPUT_THRESHOLD)]
    assert boundary.rows[0] == [0.0, 0.0]
    assert boundary.metadata['boundary'] is True


def test_window_boundary_empty_past_threshold():
    boundary = FigureSweep(Figure.AVERAGE_CONCURRENCE, grid=11).boundary()
    assert boundary.headers == ['p', 'phi_lo', 'phi_hi', 'psi_lo', 'psi_hi']
    first, last = boundary.rows[0], boundary.rows[-1]
    assert first[1] < 0.5 < first[2]
    assert all(math.isnan(v) for v in last[1:])


def test_isotropic_tables(test_config):
    table = FigureSweep(Figure.ISOTROPIC_CONCURRENCE, dimensions=(2, 3)).table()
    assert table.headers == ['p', 'C_in_N2', 'C_out_N2', 'C_in_N3', 'C_out_N3']
    assert len(table) == test_config.SWEEP_CURVE_POINTS
    assert table.rows[0][1:] == pytest.approx([1.0, 1.0, 2.0 / math.sqrt(3), 2.0 / math.sqrt(3)])
    for row in table.rows:
        assert row[2] <= row[1] + 1e-12

    ratio = FigureSweep(Figure.ISOTROPIC_RATIO, dimensions=(2,)).table()
    assert ratio.headers == ['p', 'ratio_N2']
    assert ratio.rows[0][1] == pytest.approx(1.0)
    assert math.isnan(ratio.rows[-1][1])


def test_sweep_deterministic():
    first = io.StringIO()
    second = io.StringIO()
    FigureSweep(Figure.PSI_CONCURRENCE, max_workers=1).table().write(first)
    FigureSweep(Figure.PSI_CONCURRENCE, max_workers=4).table().write(second)
    assert first.getvalue() == second.getvalue()
