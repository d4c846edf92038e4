import click

from ..services import term_lang
from .common import RING, emit, finish, guarded, output_options, resolve_budget, resolve_seed


@click.command('identities')
@click.option('--ring', 'spec', type=RING, required=True)
@click.option('--lhs', default=None, help="Left-hand term, e.g. \"x*x'*x\".")
@click.option('--rhs', default=None, help='Right-hand term.')
@click.option('--scheme', type=click.Choice(sorted(term_lang.SCHEMES)), default=None,
              help='Built-in identity scheme instead of --lhs/--rhs.')
@click.option('--d', 'd', type=click.IntRange(min=0), default=None, help='Length bound the scheme is built for.')
@click.option('--mode', type=click.Choice(['exhaustive', 'sampled']), default='exhaustive', show_default=True)
@click.option('--budget', type=click.IntRange(min=1), default=None, help='Exhaustive case limit.')
@click.option('--samples', type=click.IntRange(min=1), default=None, help='Assignments drawn in sampled mode.')
@click.option('--seed', type=click.IntRange(min=0), default=None)
@click.option('--workers', type=click.IntRange(min=1), default=None)
@output_options
@click.pass_context
@guarded
def identities_cmd(ctx, spec, lhs, rhs, scheme, d, mode, budget, samples, seed, workers, output, out_path):
    """Check an identity on every (or a seeded sample of) variable assignment."""
    config = ctx.obj
    workers = workers or config.WORKERS
    if mode == 'sampled':
        seed = resolve_seed(ctx, seed)
        budget = samples or config.DEFAULT_TRIALS
    else:
        seed = seed or 0
        budget = resolve_budget(ctx, budget)

    if scheme:
        if d is None and scheme != 'defining':
            raise click.UsageError(f"--scheme {scheme} needs --d", ctx=ctx)
        left, right = term_lang.scheme_terms(scheme, d or 0)
    elif lhs and rhs:
        left, right = term_lang.parse_term(lhs), term_lang.parse_term(rhs)
    else:
        raise click.UsageError("give --lhs and --rhs, or --scheme with --d", ctx=ctx)

    verdict = term_lang.check_identity(spec, left, right, mode, budget, seed, workers)
    payload = verdict.to_dict()
    payload['ring'] = str(spec)
    payload['identity'] = f"{term_lang.render(left)} = {term_lang.render(right)}"
    emit(payload, output, out_path)
    finish(ctx, verdict.holds)
