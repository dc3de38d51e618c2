"""
Restoration commands: denoise, blur, deblur, invert and sweep.
"""

import logging

import click
import pandas as pd

from .. import settings
from ..services.blur import naive_inverse
from ..services.deblurrer import DeblurConfig, TvDeblurrer
from ..services.denoiser import Algorithm, SolverConfig, TvDenoiser
from ..services.media import NoiseSpec, add_blur_and_noise, format_psnr, psnr
from ..services.tv_ops import TvFlavor
from ..storage import StorageManager
from .common import (CONSTRAINT_CHOICE, MAPPING_CHOICE, build_spectrum, constraint_from_flag,
                     echo_params, handle_errors, lambdas_option, mapping_from_flag,
                     output_option, psf_options, run_params)

logger = logging.getLogger(__name__)

FLAVOR_CHOICE = click.Choice([f.value for f in TvFlavor])
ALGO_CHOICE = click.Choice([a.value for a in Algorithm])


def _report_reference(store: StorageManager, x, reference) -> None:
    if reference is not None:
        ref = store.load(reference)
        click.echo(f"psnr(output, reference): {format_psnr(psnr(x, ref))}")


@click.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True),
              help='Noisy tensor (.tns, .png or frame directory)')
@click.option('--output', 'output_path', required=True, callback=output_option)
@click.option('--lambda', 'lam', required=True, type=click.FloatRange(min=0.0),
              help='Regularization weight')
@click.option('--tv', 'flavor', type=FLAVOR_CHOICE, default='iso', show_default=True)
@click.option('--algo', type=ALGO_CHOICE, default='fista', show_default=True)
@click.option('--iters', type=click.IntRange(min=1), default=settings.MAX_ITERS, show_default=True)
@click.option('--tol', type=click.FloatRange(min=0.0), default=settings.TOL, show_default=True)
@click.option('--constraint', type=CONSTRAINT_CHOICE, default='box01', show_default=True)
@click.option('--trace', 'trace_path', type=click.Path(dir_okay=False),
              help='Write the per-iteration trace CSV here')
@click.option('--mapping', type=MAPPING_CHOICE, help='Expected media layout of input and output')
@click.option('--reference', type=click.Path(exists=True), help='Clean tensor to report PSNR against')
@handle_errors
def denoise(input_path, output_path, lam, flavor, algo, iters, tol, constraint,
            trace_path, mapping, reference):
    """Denoise a tensor with the FGP total-variation solver."""
    params = run_params('denoise')
    store = StorageManager()
    media = mapping_from_flag(mapping)
    s = store.load(input_path, media)

    cfg = SolverConfig(lam=lam, flavor=flavor, constraint=constraint_from_flag(constraint),
                       max_iters=iters, tol=tol, algo=algo)
    x, report = TvDenoiser(cfg).denoise(s)

    store.save(x, output_path, media)
    if trace_path:
        store.write_trace(report, trace_path, params)
    echo_params(params)
    click.echo(f"iterations: {report.iterations}")
    click.echo(f"psnr(output, input): {format_psnr(psnr(x, s))}")
    _report_reference(store, x, reference)


@click.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True))
@click.option('--output', 'output_path', required=True, callback=output_option)
@psf_options
@click.option('--noise-std', type=click.FloatRange(min=0.0), default=0.0, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@click.option('--mapping', type=MAPPING_CHOICE)
@handle_errors
def blur(input_path, output_path, psf_path, psf_size, sigma, noise_std, seed, mapping):
    """Blur a tensor with periodic boundaries, then add seeded Gaussian noise."""
    params = run_params('blur')
    store = StorageManager()
    media = mapping_from_flag(mapping)
    t = store.load(input_path, media)

    b = build_spectrum(store, t.shape, psf_path, psf_size, sigma)
    noise = NoiseSpec(std=noise_std, seed=seed) if noise_std > 0 else None
    s = add_blur_and_noise(t, b, noise)

    store.save(s, output_path, media)
    echo_params(params)
    click.echo(f"psnr(output, input): {format_psnr(psnr(s, t))}")


@click.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True))
@click.option('--output', 'output_path', required=True, callback=output_option)
@psf_options
@click.option('--lambda', 'lam', required=True, type=click.FloatRange(min=0.0))
@click.option('--outer-iters', type=click.IntRange(min=1), default=settings.OUTER_ITERS,
              show_default=True)
@click.option('--inner-iters', type=click.IntRange(min=1), default=settings.INNER_ITERS,
              show_default=True)
@click.option('--algo', type=ALGO_CHOICE, default='fista', show_default=True)
@click.option('--tv', 'flavor', type=FLAVOR_CHOICE, default='iso', show_default=True)
@click.option('--constraint', type=CONSTRAINT_CHOICE, default='box01', show_default=True)
@click.option('--tol', type=click.FloatRange(min=0.0), default=0.0, show_default=True,
              help='Stop the outer loop once the relative change drops below this')
@click.option('--trace', 'trace_path', type=click.Path(dir_okay=False))
@click.option('--mapping', type=MAPPING_CHOICE)
@click.option('--reference', type=click.Path(exists=True))
@handle_errors
def deblur(input_path, output_path, psf_path, psf_size, sigma, lam, outer_iters, inner_iters,
           algo, flavor, constraint, tol, trace_path, mapping, reference):
    """Deblur a tensor with FISTA around the FGP denoiser."""
    params = run_params('deblur')
    store = StorageManager()
    media = mapping_from_flag(mapping)
    s = store.load(input_path, media)

    b = build_spectrum(store, s.shape, psf_path, psf_size, sigma)
    inner = DeblurConfig.default_inner(lam, flavor=flavor, max_iters=inner_iters,
                                       constraint=constraint_from_flag(constraint))
    cfg = DeblurConfig(inner=inner, outer_iters=outer_iters, algo=algo, tol=tol)
    x, report = TvDeblurrer(cfg).deblur(s, b)

    store.save(x, output_path, media)
    if trace_path:
        store.write_trace(report, trace_path, params)
    echo_params(params)
    click.echo(f"outer iterations: {report.iterations}")
    click.echo(f"psnr(output, input): {format_psnr(psnr(x, s))}")
    _report_reference(store, x, reference)


@click.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True))
@click.option('--output', 'output_path', required=True, callback=output_option)
@psf_options
@click.option('--floor', type=click.FloatRange(min=0.0), default=1e-10, show_default=True,
              help='Zero frequencies whose eigenvalue magnitude is below this')
@click.option('--mapping', type=MAPPING_CHOICE)
@click.option('--reference', type=click.Path(exists=True))
@handle_errors
def invert(input_path, output_path, psf_path, psf_size, sigma, floor, mapping, reference):
    """Naive spectral inverse of a blur, for comparison with deblur."""
    params = run_params('invert')
    store = StorageManager()
    media = mapping_from_flag(mapping)
    s = store.load(input_path, media)

    b = build_spectrum(store, s.shape, psf_path, psf_size, sigma)
    x = naive_inverse(b, s, floor)

    store.save(x, output_path, media)
    echo_params(params)
    _report_reference(store, x, reference)


@click.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True))
@click.option('--reference', required=True, type=click.Path(exists=True))
@click.option('--lambdas', default='0.01,0.15,100', show_default=True, callback=lambdas_option,
              help='Comma separated regularization weights')
@click.option('--tv', 'flavor', type=FLAVOR_CHOICE, default='iso', show_default=True)
@click.option('--algo', type=ALGO_CHOICE, default='fista', show_default=True)
@click.option('--iters', type=click.IntRange(min=1), default=settings.MAX_ITERS, show_default=True)
@click.option('--constraint', type=CONSTRAINT_CHOICE, default='box01', show_default=True)
@click.option('--csv', 'csv_path', type=click.Path(dir_okay=False), help='Also write the table here')
@handle_errors
def sweep(input_path, reference, lambdas, flavor, algo, iters, constraint, csv_path):
    """Denoise with several lambdas and tabulate the PSNR of each result."""
    params = run_params('sweep')
    store = StorageManager()
    s = store.load(input_path)
    ref = store.load(reference)

    rows = []
    for lam in lambdas:
        cfg = SolverConfig(lam=lam, flavor=flavor, constraint=constraint_from_flag(constraint),
                           max_iters=iters, algo=algo)
        x, report = TvDenoiser(cfg).denoise(s)
        rows.append({'lambda': lam, 'iterations': report.iterations, 'psnr': psnr(x, ref)})
    df = pd.DataFrame(rows)

    if csv_path:
        store.write_table(df, csv_path, params)
    echo_params(params)
    click.echo(f"input psnr: {format_psnr(psnr(s, ref))}")
    click.echo(df.to_string(index=False, float_format=lambda v: f"{v:.2f}"))


commands = [denoise, blur, deblur, invert, sweep]
