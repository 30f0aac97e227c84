import logging

import click

from concswap.cli import cli, EXIT_OK, EXIT_FAILURE
from concswap.config import Config
from concswap.core import MethodTag, UndefinedRatioError
from concswap.core import swap
from concswap.core.concurrence import x_state_concurrence, isotropic_i_concurrence
from concswap.core.measurement import bell_basis, generalized_bell_basis, SQRT_HALF
from concswap.core.states import IsotropicParams, SchmidtSpectrum, noisy_qubit_pair
from concswap.sweep import boundary_path
from concswap.sweep.figures import FigureSweep
from concswap.utils import format_value, parse_complex, parse_spectrum, parse_specs
from concswap.verify.registry import registry

log = logging.getLogger(__name__)


def echo_pairs(pairs):
    width = max(len(key) for key, _ in pairs)
    for key, value in pairs:
        click.echo(f"{key:<{width}}  {value if isinstance(value, str) else format_value(value)}")


def echo_outcomes(report, closed_outcomes=None):
    """One line per measurement outcome; closed-form columns when given."""
    if not report.outcomes:
        return
    header = ['outcome', 'probability', 'concurrence']
    if closed_outcomes is not None:
        header += ['probability_closed_form', 'concurrence_closed_form']
    click.echo('  '.join(header))
    for index, (outcome, value) in enumerate(zip(report.outcomes, report.per_outcome_concurrence)):
        columns = [outcome.label, format_value(outcome.probability), format_value(value)]
        if closed_outcomes is not None:
            probability, concurrence = closed_outcomes[index]
            columns += [format_value(probability), format_value(concurrence)]
        click.echo('  '.join(columns))


def echo_report(report):
    """Average, closed form and their difference for whichever are available."""
    pairs = [('method', str(report.method_tag))]
    if report.method_tag != MethodTag.CLOSED_FORM:
        pairs.append(('average', report.average_concurrence))
    if report.closed_form_value is not None:
        pairs.append(('closed_form', report.closed_form_value))
    if report.residual is not None:
        pairs.append(('difference', report.residual))
    echo_pairs(pairs)


@cli.command()
@click.option('--lam0', required=True, type=float, help='Larger Schmidt coefficient of pair ab.')
@click.option('--lam0p', required=True, type=float, help='Larger Schmidt coefficient of pair cd.')
@click.option('--alpha0', default=None, help='Complex re[+imi]; default 1/sqrt2.')
@click.option('--beta0', default=None)
@click.option('--alpha1', default=None)
@click.option('--beta1', default=None)
def pure(lam0, lam0p, alpha0, beta0, alpha1, beta1):
    """Swap two pure qubit pairs in a (generalized) Bell basis."""
    s1 = SchmidtSpectrum.qubit(lam0)
    s2 = SchmidtSpectrum.qubit(lam0p)
    coefficients = (alpha0, beta0, alpha1, beta1)
    if all(c is None for c in coefficients):
        basis = bell_basis()
    else:
        names = ('alpha0', 'beta0', 'alpha1', 'beta1')
        basis = generalized_bell_basis(*(SQRT_HALF if c is None else parse_complex(c, name)
                                         for c, name in zip(coefficients, names)))

    report = swap.swap_pure_qubits(s1, s2, basis)
    echo_outcomes(report, report.extras.get('closed_form_outcomes'))
    echo_report(report)
    return EXIT_OK


@cli.command()
@click.option('--specs', required=True, help="Qubit pairs 'a:b,c:d,...' (at least two).")
def chain(specs):
    """Sequential Bell-measurement swaps along a chain of pure pairs."""
    spectra = parse_specs(specs, minimum=2)
    report = swap.chain_report(spectra)
    echo_outcomes(report)
    echo_report(report)
    return EXIT_OK


@cli.command()
@click.option('--specs', required=True, help="Three qubit pairs 'a:b,c:d,e:f'.")
def ghz(specs):
    """GHZ-basis measurement on one qubit of each of three pairs."""
    spectra = parse_specs(specs, count=3)
    report = swap.ghz_swap(*spectra)
    echo_outcomes(report)
    echo_report(report)
    return EXIT_OK


@cli.command('noisy-qubit')
@click.option('--p', 'p', required=True, type=float, help='Mixing parameter in [0, 1].')
@click.option('--lam0', required=True, type=float, help='Schmidt coefficient on |00>.')
def noisy_qubit(p, lam0):
    """Swap two copies of a depolarized Schmidt-form qubit pair."""
    report = swap.swap_noisy_qubits(p, lam0)
    extras = report.extras
    c_x = x_state_concurrence(noisy_qubit_pair(p, lam0))
    try:
        ratio = format_value(swap.ratio_cav_over_cx2(p, lam0))
    except UndefinedRatioError:
        ratio = 'undefined'

    echo_outcomes(report)
    echo_pairs([('C_X', c_x), ('P_Phi', extras['P_Phi']), ('P_Psi', extras['P_Psi']),
                ('C_Phi', extras['C_Phi']), ('C_Psi', extras['C_Psi']),
                ('upper_bound', swap.noisy_upper_bound(p, lam0)), ('ratio', ratio)])
    echo_report(report)
    return EXIT_OK


@cli.command()
@click.option('--lams', required=True, help='Schmidt coefficients of pair ab, comma separated.')
@click.option('--lamsp', required=True, help='Schmidt coefficients of pair cd.')
def qudit(lams, lamsp):
    """Swap two pure qudit pairs in the chi basis (average I-concurrence)."""
    s1, s2 = parse_spectrum(lams, 'lams'), parse_spectrum(lamsp, 'lamsp')
    report = swap.swap_pure_qudits(s1, s2)
    if report.outcomes:
        closed = swap.qudit_outcomes_closed_form(s1, s2)
        echo_outcomes(report, [closed[o.label] for o in report.outcomes])
    echo_report(report)
    return EXIT_OK


@cli.command('noisy-qudit')
@click.option('--n', 'n', required=True, type=int, help='Local dimension N >= 2.')
@click.option('--p', 'p', required=True, type=float, help='Mixing parameter in [0, 1].')
def noisy_qudit(n, p):
    """Swap two copies of an isotropic state."""
    par = IsotropicParams(n, p)
    report = swap.swap_noisy_qudits(par)
    echo_outcomes(report)
    pairs = [('p_swapped', report.extras['p_swapped']), ('C_in', isotropic_i_concurrence(par))]
    if 'max_isotropic_deviation' in report.extras:
        pairs.append(('max_isotropic_deviation', report.extras['max_isotropic_deviation']))
    echo_pairs(pairs)
    echo_report(report)
    return EXIT_OK


@cli.command('sweep')
@click.option('--figure', required=True, type=click.IntRange(1, 8), help='Figure 1..8.')
@click.option('--out', required=True, type=click.Path(dir_okay=False), help='CSV path.')
@click.option('--grid', default=None, type=click.IntRange(min=2),
              help='Points per axis (default 201, or 1001 for figures 7-8).')
@click.option('--seed', default=None, type=int, help='Recorded in the metadata sidecar.')
def sweep_command(figure, out, grid, seed):
    """Write the data behind one figure as CSV (plus _boundary CSV where analytic)."""
    seed = Config.DEFAULT_SEED if seed is None else seed
    command = f"concswap sweep --figure {figure} --out {out}"
    if grid is not None:
        command += f" --grid {grid}"
    metadata = {'command': f"{command} --seed {seed}", 'seed': seed}
    builder = FigureSweep(figure, grid=grid, metadata=metadata)
    written = []
    table = builder.table()
    table.save(out)
    written.append((out, table))
    boundary = builder.boundary()
    if boundary is not None:
        path = boundary_path(out)
        boundary.save(path)
        written.append((path, boundary))
    for path, table in written:
        click.echo(f"{path}  rows={len(table)}  columns={','.join(table.headers)}")
    return EXIT_OK


@cli.command()
@click.option('--seed', default=None, type=int, help='Root seed of the PCG64 streams.')
@click.option('--trials', default=None, type=click.IntRange(min=1),
              help='Random trials per suite (grid side for grid suites).')
@click.option('--suite', 'suites', multiple=True, help='Run only this suite (repeatable).')
@click.option('--suite-path', 'suite_paths', multiple=True,
              type=click.Path(exists=True, file_okay=False),
              help='Directory with extra suites (repeatable).')
def verify(seed, trials, suites, suite_paths):
    """Run the oracle-vs-closed-form suites; exit 2 if any fails."""
    registry.initialize(list(suite_paths))
    seed = Config.DEFAULT_SEED if seed is None else seed
    results = registry.run_all(names=list(suites), seed=seed, trials=trials)

    click.echo(f"seed={seed}")
    for result in results:
        click.echo(result.summary())
    failed = [r.name for r in results if not r.is_success]
    click.echo(f"{len(results) - len(failed)}/{len(results)} suites passed")
    if failed:
        log.error(f"Failed suites: {', '.join(failed)}")
        return EXIT_FAILURE
    return EXIT_OK
