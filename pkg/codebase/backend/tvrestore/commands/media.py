"""
Media commands: psnr, convert and phantom.
"""

import click

from ..services.media import MediaKind, NoiseSpec, add_noise, format_psnr
from ..services.media import phantom as make_phantom
from ..services.media import psnr as compute_psnr
from ..storage import StorageManager
from .common import (MAPPING_CHOICE, echo_params, handle_errors, mapping_from_flag,
                     output_option, run_params)


@click.command()
@click.option('--a', 'a_path', required=True, type=click.Path(exists=True))
@click.option('--b', 'b_path', required=True, type=click.Path(exists=True))
@click.option('--peak', type=click.FloatRange(min=0.0, min_open=True), default=1.0, show_default=True)
@handle_errors
def psnr(a_path, b_path, peak):
    """Print the PSNR of A against B in dB ('inf' for identical inputs)."""
    store = StorageManager()
    value = compute_psnr(store.load(a_path), store.load(b_path), peak)
    click.echo(format_psnr(value))


@click.command()
@click.option('--input', 'input_path', required=True, type=click.Path(exists=True))
@click.option('--output', 'output_path', required=True, callback=output_option)
@click.option('--mapping', type=MAPPING_CHOICE, help='Layout to check while converting')
@handle_errors
def convert(input_path, output_path, mapping):
    """Convert between .tns, PNG and frame directories."""
    params = run_params('convert')
    store = StorageManager()
    media = mapping_from_flag(mapping)
    t = store.load(input_path, media)
    store.save(t, output_path, media)
    echo_params(params)
    click.echo(f"dims: {'x'.join(str(n) for n in t.shape)}")


@click.command()
@click.option('--output', 'output_path', required=True, callback=output_option)
@click.option('--kind', type=click.Choice([k.value for k in MediaKind]), default='color-image',
              show_default=True)
@click.option('--rows', type=click.IntRange(min=1), default=64, show_default=True)
@click.option('--cols', type=click.IntRange(min=1), default=64, show_default=True)
@click.option('--frames', type=click.IntRange(min=1), default=8, show_default=True,
              help='Frame count for video kinds')
@click.option('--noise-std', type=click.FloatRange(min=0.0), default=0.0, show_default=True)
@click.option('--seed', type=int, default=0, show_default=True)
@handle_errors
def phantom(output_path, kind, rows, cols, frames, noise_std, seed):
    """Write a synthetic piecewise-constant image or video, optionally noisy."""
    params = run_params('phantom')
    store = StorageManager()
    t = make_phantom(MediaKind(kind), rows, cols, frames)
    if noise_std > 0:
        t = add_noise(t, NoiseSpec(std=noise_std, seed=seed))
    store.save(t, output_path)
    echo_params(params)


commands = [psnr, convert, phantom]
