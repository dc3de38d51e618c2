"""
Shared plumbing for the command modules.

Handles:
- error reporting (one-line diagnostic, exit code 1)
- flag callbacks built on the validators
- provenance echo
- PSF and constraint construction from flags
"""

import functools
import logging
import sys
from typing import Any, Dict, Optional, Sequence

import click

from ..services.blur import BlurSpectrum, Psf, gaussian_psf, spectrum
from ..services.denoiser import ConstraintSet
from ..services.media import MediaKind, MediaMapping
from ..storage import StorageManager
from ..storage.managers.trace_manager import provenance_line
from . import validators

logger = logging.getLogger(__name__)

CONSTRAINTS = {
    'box01': ConstraintSet.box,
    'none': ConstraintSet.unconstrained,
}


def handle_errors(func):
    """Report library errors as 'error: <message>' on stderr and exit 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except click.ClickException:
            raise
        except Exception as e:
            message = ' '.join(str(e).split()) or e.__class__.__name__
            logger.error(f"{func.__name__} failed: {message}")
            click.echo(f"error: {message}", err=True)
            sys.exit(1)
    return wrapper


def dims_option(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    if value is None:
        return None
    ok, dims, message = validators.parse_dims(value)
    if not ok:
        raise click.BadParameter(message, ctx=ctx, param=param)
    return dims


def lambdas_option(ctx: click.Context, param: click.Parameter, value: str):
    ok, values, message = validators.parse_lambdas(value)
    if not ok:
        raise click.BadParameter(message, ctx=ctx, param=param)
    return values


def output_option(ctx: click.Context, param: click.Parameter, value: Optional[str]):
    if value is None:
        return None
    ok, message = validators.validate_output_target(value)
    if not ok:
        raise click.BadParameter(message, ctx=ctx, param=param)
    return value


def mapping_from_flag(value: Optional[str]) -> Optional[MediaMapping]:
    return None if value is None else MediaMapping(kind=MediaKind(value))


def constraint_from_flag(value: str) -> ConstraintSet:
    return CONSTRAINTS[value]()


MAPPING_CHOICE = click.Choice([kind.value for kind in MediaKind])
CONSTRAINT_CHOICE = click.Choice(sorted(CONSTRAINTS))


def psf_options(func):
    """--psf, --psf-size and --sigma, shared by blur, deblur and invert."""
    func = click.option('--sigma', type=click.FloatRange(min=0.0, min_open=True),
                        help='Gaussian PSF standard deviation in voxels')(func)
    func = click.option('--psf-size', callback=dims_option,
                        help='Gaussian PSF extents, e.g. 7x7x3')(func)
    func = click.option('--psf', 'psf_path', type=click.Path(exists=True, dir_okay=False),
                        help='PSF kernel as a .tns file (overrides --psf-size/--sigma)')(func)
    return func


def build_spectrum(store: StorageManager, shape: Sequence[int], psf_path: Optional[str],
                   psf_size: Optional[Sequence[int]], sigma: Optional[float]) -> BlurSpectrum:
    """Blur spectrum from either a PSF file or Gaussian PSF flags."""
    if psf_path is not None:
        psf = Psf.from_kernel(store.read_tns(psf_path))
    elif psf_size is not None and sigma is not None:
        psf = gaussian_psf(psf_size, sigma)
    else:
        raise click.UsageError("either --psf or both --psf-size and --sigma are required")
    return spectrum(psf, shape)


def echo_params(params: Dict[str, Any]) -> None:
    """Print the provenance line for a run."""
    click.echo(provenance_line(params))


def run_params(command: str) -> Dict[str, Any]:
    """Command name plus every parsed flag of the current invocation."""
    ctx = click.get_current_context()
    return {'command': command, **ctx.params}
