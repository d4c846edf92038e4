import click

from .config import get_config
from .utils.logger import get_cli_logger, setup_logging


@click.group()
@click.option('--env', 'env_name', type=click.Choice(['development', 'testing', 'ci']), default=None,
              help='Configuration to use (default: REGRING_ENV).')
@click.version_option('1.0.0', prog_name='regring')
@click.pass_context
def cli(ctx, env_name):
    """Exact computations with perspectivity and unit-regularity in finite regular rings."""
    config = get_config(env_name)
    setup_logging(config)
    ctx.obj = config


def create_cli():
    # Register commands
    from .commands.certify import certify_cmd
    from .commands.example1 import example1_cmd
    from .commands.identities import identities_cmd
    from .commands.laws import laws_cmd
    from .commands.props import props_cmd
    from .commands.reduce import reduce_cmd

    for command in (reduce_cmd, certify_cmd, identities_cmd, laws_cmd, props_cmd, example1_cmd):
        cli.add_command(command)
    return cli


def main(argv=None) -> int:
    """Run the command line; 0 on success, 1 on a failed verification, 2 on bad usage."""
    root = create_cli()
    try:
        rv = root.main(args=argv, prog_name='regring', standalone_mode=False)
    except click.UsageError as e:
        e.show()
        return 2
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.Abort:
        get_cli_logger().warning("aborted")
        return 1
    return rv if isinstance(rv, int) else 0
