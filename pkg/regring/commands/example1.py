import click

from ..services import examples
from ..utils.validators import validate_prime
from .common import emit, finish, guarded, output_options


@click.command('example1')
@click.option('--n', 'n', type=click.IntRange(min=0, max=6), default=0, show_default=True,
              help='Depth: the chain drops strictly n + 1 times.')
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--base', is_flag=True, help='Use the three-dimensional base instance (n = 0).')
@click.option('--emit-json', is_flag=True, help='Shorthand for --output json.')
@output_options
@click.pass_context
@guarded
def example1_cmd(ctx, n, p, base, emit_json, output, out_path):
    """Build a slowly stabilizing pair, extend it by a third element c and verify both."""
    if not validate_prime(p):
        raise click.BadParameter(f"{p} is not a prime in the supported range", param_hint='--p')
    report = examples.verify_example1(0 if base else n, p, base=base)
    emit(report, 'json' if emit_json else output, out_path)
    finish(ctx, report.holds)
