import math

import numpy as np
import pytest
from pydantic import ValidationError

from tvrestore.errors import ParameterError, ShapeError
from tvrestore.services.blur import gaussian_psf, spectrum
from tvrestore.services.media import (MediaKind, MediaMapping, NoiseSpec, add_blur_and_noise,
                                      add_noise, format_psnr, phantom, psnr)


def test_zero_std_noise_is_identity(rng):
    t = rng.uniform(0, 1, size=(4, 4, 3))
    noisy = add_noise(t, NoiseSpec(std=0.0, seed=1))
    np.testing.assert_array_equal(noisy, t)
    assert noisy is not t


def test_noise_is_deterministic_per_seed():
    t = np.zeros((8, 8, 3))
    a = add_noise(t, NoiseSpec(std=0.2, seed=42))
    b = add_noise(t, NoiseSpec(std=0.2, seed=42))
    c = add_noise(t, NoiseSpec(std=0.2, seed=43))
    assert a.tobytes() == b.tobytes()
    assert not np.array_equal(a, c)


def test_noise_sample_std():
    noisy = add_noise(np.zeros((64, 64, 3)), NoiseSpec(std=0.1, seed=0))
    assert 0.095 <= noisy.std() <= 0.105


def test_noise_is_not_clamped():
    noisy = add_noise(np.ones((16, 16, 3)), NoiseSpec(std=0.5, seed=3))
    assert noisy.max() > 1.0


def test_noise_spec_rejects_negative_std():
    with pytest.raises(ValidationError):
        NoiseSpec(std=-0.1)


def test_psnr_examples():
    ref = np.zeros((10, 10, 1))
    assert psnr(ref, ref) == math.inf
    assert psnr(np.full_like(ref, 0.1), ref) == pytest.approx(20.0)
    assert psnr(np.full_like(ref, 0.01), ref) == pytest.approx(40.0)
    assert psnr(np.full_like(ref, 0.2), ref, peak=2.0) == pytest.approx(20.0)


def test_psnr_errors():
    with pytest.raises(ShapeError):
        psnr(np.zeros((2, 2, 1)), np.zeros((2, 2, 3)))
    with pytest.raises(ParameterError):
        psnr(np.zeros(3), np.zeros(3), peak=0.0)


def test_format_psnr():
    assert format_psnr(math.inf) == 'inf'
    assert format_psnr(20.0) == '20.00'


@pytest.mark.parametrize('kind,shape', [
    (MediaKind.COLOR_IMAGE, (16, 12, 3)),
    (MediaKind.GRAY_IMAGE, (16, 12, 1)),
    (MediaKind.GRAY_VIDEO, (16, 12, 5)),
    (MediaKind.COLOR_VIDEO, (16, 12, 3, 5)),
])
def test_phantom_layouts(kind, shape):
    t = phantom(kind, 16, 12, 5)
    assert t.shape == shape
    assert t.min() >= 0.0 and t.max() <= 1.0
    MediaMapping(kind=kind).check(t)


def test_phantom_channels_are_correlated():
    t = phantom(MediaKind.COLOR_IMAGE, 64, 64)
    spread = t.max(axis=2) - t.min(axis=2)
    assert spread.max() <= 0.1 + 1e-12
    brightness = t.mean(axis=2)
    assert brightness.max() - brightness.min() >= 0.6


def test_phantom_video_moves_between_frames():
    video = phantom(MediaKind.GRAY_VIDEO, 32, 32, 3)
    assert not np.array_equal(video[..., 0], video[..., 2])


def test_phantom_rejects_empty_dims():
    with pytest.raises(ParameterError):
        phantom(MediaKind.COLOR_IMAGE, 0, 8)


def test_mapping_check_rejects_wrong_layout():
    with pytest.raises(ShapeError):
        MediaMapping(kind=MediaKind.COLOR_IMAGE).check(np.zeros((4, 4, 1)))
    with pytest.raises(ShapeError):
        MediaMapping(kind=MediaKind.COLOR_VIDEO).check(np.zeros((4, 4, 3)))
    assert MediaMapping(kind='gray-video').is_video


def test_blur_and_noise_without_noise_is_plain_blur(rng):
    t = rng.uniform(0, 1, size=(8, 8, 3))
    b = spectrum(gaussian_psf((3, 3, 3), 1.0), t.shape)
    blurred = add_blur_and_noise(t, b)
    noisy = add_blur_and_noise(t, b, NoiseSpec(std=0.05, seed=1))
    assert np.linalg.norm(blurred - t) > 0
    assert 0 < np.linalg.norm(noisy - blurred) < 0.05 * 3 * np.sqrt(t.size)
