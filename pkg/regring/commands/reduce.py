import click

from ..models.trace import CertificateBundle
from ..services import reduction, ring_core
from ..utils.logger import get_cli_logger
from .common import RING, emit, finish, guarded, output_options, parse_element

logger = get_cli_logger()


@click.command('reduce')
@click.option('--ring', 'spec', type=RING, required=True, help='Ring spec, e.g. M2(F2)xM1(F3).')
@click.option('--a', 'a_text', required=True, help='Element a: row-major entries per component, ";"-separated.')
@click.option('--b', 'b_text', default=None, help='Reflexive inverse of a (default: the canonical one).')
@click.option('--max-steps', type=click.IntRange(min=0), default=None, help='Step limit (default: length + 1).')
@click.option('--decompose', is_flag=True, help='Also report the x_n, y_n decomposition of the chain.')
@output_options
@click.pass_context
@guarded
def reduce_cmd(ctx, spec, a_text, b_text, max_steps, decompose, output, out_path):
    """Run the reduction on a mutually reflexive pair and certify bR ~ aR and a unit quasi-inverse."""
    a = parse_element(spec, a_text, '--a')
    b = parse_element(spec, b_text, '--b') if b_text else ring_core.reflexive(a)
    if max_steps is None and ctx.obj.MAX_STEPS:
        max_steps = int(ctx.obj.MAX_STEPS)

    trace = reduction.run_reduction(a, b, max_steps)
    if not trace.stabilized:
        emit(trace, output, out_path)
        finish(ctx, False)

    bundle = CertificateBundle(trace, reduction.axis_witness(a, b, trace), reduction.unit_witness(a, b, trace))
    payload = bundle.to_dict()
    ok = bundle.ok
    if decompose:
        decomposition = reduction.lemma_ind_decomposition(trace)
        payload['decomposition'] = decomposition.to_dict()
        ok = ok and decomposition.ok

    logger.debug(f"reduce on {spec}: status {trace.status}, verified {payload['verified']}")
    emit(payload, output, out_path)
    finish(ctx, ok)
