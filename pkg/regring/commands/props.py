import click

from ..services import ring_props
from .common import RING, emit, finish, guarded, output_options, parse_element, resolve_budget

CHECKS = ('theorem23', 'handelman', 'directly-finite', 'strongly-pi-regular', 'ehrlich', 'mainr-length',
          'exploratory', 'unit-regular', 'strong-pi-index')


@click.command('props')
@click.option('--ring', 'specs', type=RING, multiple=True, required=True, help='Ring spec; repeatable for theorem23.')
@click.option('--check', type=click.Choice(CHECKS), required=True)
@click.option('--d', 'd', type=click.IntRange(min=0), default=None, help='Length bound for theorem23.')
@click.option('--n', 'n', type=click.IntRange(min=0), default=None, help='Index for mainr-length and exploratory.')
@click.option('--a', 'a_text', default=None, help='Element for unit-regular and strong-pi-index.')
@click.option('--budget', type=click.IntRange(min=1), default=None)
@click.option('--workers', type=click.IntRange(min=1), default=None)
@output_options
@click.pass_context
@guarded
def props_cmd(ctx, specs, check, d, n, a_text, budget, workers, output, out_path):
    """Check a ring-level property on finite instances."""
    budget = resolve_budget(ctx, budget)
    spec = specs[0]

    if check == 'theorem23':
        d = max(s.length for s in specs) if d is None else d
        report = ring_props.theorem23_check(d, specs, budget, workers or ctx.obj.WORKERS)
    elif check == 'handelman':
        report = ring_props.handelman_scan(spec, budget)
    elif check == 'directly-finite':
        report = ring_props.is_directly_finite(spec, budget)
    elif check == 'strongly-pi-regular':
        report = ring_props.strongly_pi_regular_scan(spec, budget)
    elif check == 'ehrlich':
        report = ring_props.ehrlich_scan(spec, budget)
    elif check == 'mainr-length':
        report = ring_props.mainr_length_scan(spec, n, budget)
    elif check == 'exploratory':
        if n is None:
            raise click.UsageError("--check exploratory needs --n", ctx=ctx)
        report = ring_props.exploratory_scan(spec, n, budget)
        # informational: a failure here contradicts nothing
        emit(report, output, out_path)
        finish(ctx, True)
    else:
        if not a_text:
            raise click.UsageError(f"--check {check} needs --a", ctx=ctx)
        a = parse_element(spec, a_text, '--a')
        if check == 'unit-regular':
            report = ring_props.is_unit_regular_element(a)
        else:
            index = ring_props.strong_pi_index(a)
            emit({'ring': str(spec), 'a': a.to_text(), 'strong_pi_index': index}, output, out_path)
            finish(ctx, index is not None)

    emit(report, output, out_path)
    finish(ctx, report.holds)
