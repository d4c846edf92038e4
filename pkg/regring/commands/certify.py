from pathlib import Path

import click
import numpy as np

from ..models.ring import RingElement, RingSpec
from ..models.trace import AXIS, UNIT, Certificate
from ..services import reduction, ring_core
from ..utils.logger import get_cli_logger, log_scan_summary
from ..utils.serialization import load_certificate
from .common import RING, emit, finish, guarded, output_options, resolve_seed

logger = get_cli_logger()


def _verify_file(path):
    document = load_certificate(Path(path).read_text(encoding='utf-8'))
    spec = RingSpec.parse(document['ring'])
    a = RingElement.parse(spec, document['a'])
    b = RingElement.parse(spec, document['b'])
    results = {
        AXIS: reduction.verify_certificate(a, b, Certificate(AXIS, RingElement.parse(spec, document['axis']))),
        UNIT: reduction.verify_certificate(a, b, Certificate(UNIT, RingElement.parse(spec, document['unit']))),
    }
    return {'ring': str(spec), 'a': document['a'], 'b': document['b'], 'verified': results}


def _batch(spec, count, seed):
    rng = np.random.default_rng(seed)
    failures = 0
    first_failure = None
    latest = 0
    for index in range(count):
        a = ring_core.sample_element(spec, rng)
        bundle = reduction.certify(a)
        latest = max(latest, bundle.trace.stabilized_at)
        if bundle.ok and bundle.trace.stabilized_at <= spec.length:
            continue
        failures += 1
        if first_failure is None:
            first_failure = {'index': index, **bundle.to_dict()}
    log_scan_summary('certify', count, failures, 'sampled', ring=spec)
    return {
        'ring': str(spec),
        'count': count,
        'seed': seed,
        'failures': failures,
        'first_failure': first_failure,
        'max_stabilized_at': latest,
    }


@click.command('certify')
@click.option('--verify', 'verify_path', type=click.Path(exists=True, dir_okay=False),
              help='Re-verify a certificate JSON written by `reduce`.')
@click.option('--ring', 'spec', type=RING, default=None, help='Ring for a seeded batch of random elements.')
@click.option('--count', type=click.IntRange(min=1), default=None, help='Batch size (default: REGRING_TRIALS).')
@click.option('--seed', type=click.IntRange(min=0), default=None)
@output_options
@click.pass_context
@guarded
def certify_cmd(ctx, verify_path, spec, count, seed, output, out_path):
    """Re-check a certificate file, or certify a seeded batch of random elements."""
    if verify_path:
        report = _verify_file(verify_path)
        emit(report, output, out_path)
        finish(ctx, all(report['verified'].values()))

    if spec is None:
        raise click.UsageError("give --verify FILE or --ring for a batch", ctx=ctx)
    seed = resolve_seed(ctx, seed)
    report = _batch(spec, count or ctx.obj.DEFAULT_TRIALS, seed)
    emit(report, output, out_path)
    finish(ctx, report['failures'] == 0)
