import click

from ..models.report import LAW_MODES, LawConfig
from ..services import laws
from ..utils.serialization import LAW_VERDICT_SCHEMA, validate_document
from .common import RING, emit, finish, guarded, output_options, resolve_seed


@click.command('laws')
@click.option('--suite', 'suites', multiple=True, type=click.Choice(sorted(laws.SUITES) + ['all']),
              default=('all',), show_default=True, help='Suite to run; repeatable.')
@click.option('--ring', 'spec', type=RING, default=None, help='Explicit ring (default: M_dim(F_p)).')
@click.option('--dim', type=click.IntRange(min=1), default=4, show_default=True)
@click.option('--p', 'p', type=int, default=2, show_default=True)
@click.option('--trials', type=click.IntRange(min=1), default=None, help='Trials per suite (default: REGRING_TRIALS).')
@click.option('--seed', type=click.IntRange(min=0), default=None)
@click.option('--mode', type=click.Choice(LAW_MODES), default='constructive', show_default=True)
@click.option('--workers', type=click.IntRange(min=1), default=None, help='Processes per suite (default: REGRING_WORKERS).')
@output_options
@click.pass_context
@guarded
def laws_cmd(ctx, suites, spec, dim, p, trials, seed, mode, workers, output, out_path):
    """Run seeded property suites for the lattice lemmas and the reflexive-inverse facts."""
    config = ctx.obj
    seed = resolve_seed(ctx, seed)
    cfg = LawConfig(dim=dim, p=p, trials=trials or config.DEFAULT_TRIALS, seed=seed, mode=mode, spec=spec,
                    workers=workers or config.WORKERS)
    names = sorted(laws.SUITES) if 'all' in suites else list(dict.fromkeys(suites))
    verdicts = [validate_document(v.to_dict(), LAW_VERDICT_SCHEMA, f"{v.law} verdict")
                for v in laws.run_suites(names, cfg)]
    emit({'config': cfg.to_dict(), 'verdicts': verdicts}, output, out_path)
    finish(ctx, all(v['failed'] == 0 for v in verdicts))
