"""
Helpers shared by the commands: parameter types, seeding, output and the
mapping from library errors to exit codes (2 for bad input, 1 for a failed
verification).
"""
import functools
import json
from pathlib import Path

import click

from ..errors import (BudgetExceeded, FormatError, NotMutuallyReflexive, RegringError, SpecMismatch,
                      TermMismatch, TermParseError)
from ..models.ring import RingElement, RingSpec
from ..utils.logger import get_cli_logger, log_validation_error
from ..utils.serialization import to_json

logger = get_cli_logger()

USAGE_ERRORS = (FormatError, TermParseError, TermMismatch, SpecMismatch, NotMutuallyReflexive, BudgetExceeded)


class RingSpecParam(click.ParamType):
    name = 'ring'

    def convert(self, value, param, ctx):
        if isinstance(value, RingSpec):
            return value
        try:
            return RingSpec.parse(value)
        except FormatError as e:
            log_validation_error('ring', value, str(e), command=ctx.info_name if ctx else None)
            self.fail(f"'{value}' is not a ring spec such as M2(F2)xM1(F3): {e}", param, ctx)


RING = RingSpecParam()


def parse_element(spec: RingSpec, text: str, option: str) -> RingElement:
    try:
        return RingElement.parse(spec, text)
    except (FormatError, SpecMismatch) as e:
        log_validation_error(option, text, str(e))
        raise click.BadParameter(f"'{text}' is not an element of {spec}: {e}", param_hint=option)


def resolve_seed(ctx, seed):
    """Seed to use; strict CI mode refuses to pick one."""
    config = ctx.obj
    if seed is not None:
        return seed
    if config.CI_STRICT:
        raise click.UsageError("--seed is required when REGRING_CI is set", ctx=ctx)
    return config.DEFAULT_SEED


def resolve_budget(ctx, budget):
    return budget if budget is not None else ctx.obj.ENUM_BUDGET


def output_options(command):
    command = click.option('--output', type=click.Choice(['json', 'text']), default='json',
                           show_default=True, help='Report format on stdout.')(command)
    command = click.option('--out', 'out_path', type=click.Path(dir_okay=False, writable=True),
                           default=None, help='Also write the report to this file.')(command)
    return command


def _text(payload, indent=0):
    lines = []
    pad = '  ' * indent
    for key in sorted(payload):
        value = payload[key]
        if isinstance(value, dict):
            lines.append(f"{pad}{key}:")
            lines.extend(_text(value, indent + 1))
        elif isinstance(value, list) and value and isinstance(value[0], dict):
            lines.append(f"{pad}{key}:")
            for item in value:
                lines.append(f"{pad}  - {json.dumps(item, sort_keys=True)}")
        else:
            lines.append(f"{pad}{key}: {value}")
    return lines


def emit(payload, output='json', out_path=None):
    if hasattr(payload, 'to_dict'):
        payload = payload.to_dict()
    rendered = to_json(payload)
    if out_path:
        Path(out_path).write_text(rendered, encoding='utf-8')
        logger.info(f"[+] Report written to {out_path}")
    click.echo(rendered if output == 'json' else '\n'.join(_text(payload)), nl=output != 'json')


def finish(ctx, ok: bool):
    ctx.exit(0 if ok else 1)


def guarded(command):
    """Run a command body with library errors mapped to exit codes."""
    @functools.wraps(command)
    def wrapper(ctx, *args, **kwargs):
        try:
            return command(ctx, *args, **kwargs)
        except USAGE_ERRORS as e:
            raise click.UsageError(str(e), ctx=ctx)
        except ValueError as e:
            raise click.UsageError(str(e), ctx=ctx)
        except RegringError as e:
            logger.error(f"{ctx.info_name} failed: {type(e).__name__}: {e}")
            click.echo(f"Error: {e}", err=True)
            ctx.exit(1)
    return wrapper
