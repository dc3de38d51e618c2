"""
Shared fixtures for the tvrestore test suite.
"""

import numpy as np
import pytest
from hypothesis import settings as hypothesis_settings

from tvrestore.services.blur import Psf
from tvrestore.services.media import MediaKind, NoiseSpec, add_noise, phantom
from tvrestore.storage import StorageManager

hypothesis_settings.register_profile('tvrestore', deadline=None, max_examples=50)
hypothesis_settings.load_profile('tvrestore')


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def store(tmp_path):
    return StorageManager(tmp_path)


@pytest.fixture(scope='session')
def noisy_color():
    """Seeded 32x32x3 phantom and a noisy copy (std 0.1)."""
    clean = phantom(MediaKind.COLOR_IMAGE, 32, 32)
    return clean, add_noise(clean, NoiseSpec(std=0.1, seed=11))


@pytest.fixture
def delta_psf():
    kernel = np.zeros((3, 3, 3))
    kernel[1, 1, 1] = 1.0
    return Psf(kernel)


@pytest.fixture
def convolve_direct():
    """Periodic convolution by summing shifted copies, one per kernel entry."""
    def _convolve(kernel, center, x):
        out = np.zeros_like(x)
        axes = tuple(range(x.ndim))
        for k in np.ndindex(kernel.shape):
            if kernel[k] == 0:
                continue
            shift = tuple(ki - ci for ki, ci in zip(k, center))
            out += kernel[k] * np.roll(x, shift, axis=axes)
        return out
    return _convolve
