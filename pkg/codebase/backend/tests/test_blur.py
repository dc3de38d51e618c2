import math

import numpy as np
import pytest

from tvrestore.errors import NumericError, ParameterError
from tvrestore.services.blur import (Psf, apply, apply_adjoint, gaussian_psf, naive_inverse,
                                     spectrum)


def test_gaussian_psf_single_voxel():
    psf = gaussian_psf((1, 1, 1), sigma=0.7)
    np.testing.assert_array_equal(psf.kernel, np.ones((1, 1, 1)))
    assert psf.center == (0, 0, 0)


def test_gaussian_psf_flattens_for_large_sigma():
    psf = gaussian_psf((3, 3, 3), sigma=1e3)
    assert np.max(np.abs(psf.kernel - 1.0 / 27.0)) <= 1e-3
    assert psf.kernel.sum() == pytest.approx(1.0)


def test_gaussian_psf_closed_form_ratio():
    psf = gaussian_psf((3, 1, 1), sigma=1.0)
    side = math.exp(-0.5)
    expected = np.array([side, 1.0, side]) / (1.0 + 2.0 * side)
    np.testing.assert_allclose(psf.kernel.ravel(), expected, rtol=1e-12)


def test_gaussian_psf_even_extent_center():
    assert gaussian_psf((4, 2, 3), sigma=1.0).center == (2, 1, 1)


@pytest.mark.parametrize('size,sigma', [((3, 3, 3), 0.0), ((3, 3, 3), -1.0), ((3, 0, 3), 1.0)])
def test_gaussian_psf_rejects_bad_parameters(size, sigma):
    with pytest.raises(ParameterError):
        gaussian_psf(size, sigma)


def test_psf_center_must_lie_inside_kernel():
    with pytest.raises(ParameterError):
        Psf(np.ones((3, 3)), center=(3, 0))


def test_normalizing_zero_sum_kernel_fails():
    with pytest.raises(NumericError):
        Psf.from_kernel(np.array([1.0, -1.0]), normalize=True)


def test_delta_psf_spectrum_is_all_ones(delta_psf):
    b = spectrum(delta_psf, (5, 6, 4))
    np.testing.assert_allclose(b.eigenvalues, np.ones((5, 6, 4)), atol=1e-15)


def test_normalized_psf_has_unit_dc_gain():
    b = spectrum(gaussian_psf((5, 5, 3), 1.3), (8, 8, 3))
    assert abs(b.eigenvalues[0, 0, 0] - 1.0) <= 1e-12


def test_spectrum_is_read_only():
    b = spectrum(gaussian_psf((3, 3, 1), 1.0), (4, 4, 2))
    with pytest.raises(ValueError):
        b.eigenvalues[0, 0, 0] = 2.0


def test_kernel_larger_than_image_rejected():
    with pytest.raises(ParameterError):
        spectrum(gaussian_psf((5, 5, 3), 1.0), (4, 8, 3))


def test_lower_order_psf_pads_trailing_modes(rng):
    kernel2d = rng.uniform(0, 1, size=(3, 3))
    x = rng.standard_normal((6, 6, 3))
    lifted = apply(spectrum(Psf(kernel2d[:, :, None]), x.shape), x)
    np.testing.assert_allclose(apply(spectrum(Psf(kernel2d), x.shape), x), lifted, atol=1e-12)


def test_fft_blur_matches_direct_convolution(convolve_direct):
    rng = np.random.default_rng(7)
    for _ in range(20):
        size = tuple(int(n) for n in rng.integers(1, 6, size=3))
        psf = Psf(rng.uniform(-1, 1, size=size))
        x = rng.standard_normal((8, 8, 8))
        expected = convolve_direct(psf.kernel, psf.center, x)
        got = apply(spectrum(psf, x.shape), x)
        assert np.linalg.norm(got - expected) <= 1e-8 * np.linalg.norm(expected)


def test_delta_psf_is_identity(delta_psf, rng):
    x = rng.standard_normal((6, 5, 4))
    b = spectrum(delta_psf, x.shape)
    assert np.max(np.abs(apply(b, x) - x)) <= 1e-12
    assert np.max(np.abs(apply_adjoint(b, x) - x)) <= 1e-12


def test_constant_input_passes_normalized_blur():
    b = spectrum(gaussian_psf((5, 5, 3), 1.0), (8, 8, 3))
    np.testing.assert_allclose(apply(b, np.full((8, 8, 3), 0.4)), 0.4, atol=1e-12)


def test_symmetric_psf_is_self_adjoint(rng):
    b = spectrum(gaussian_psf((5, 5, 3), 1.0), (8, 8, 6))
    x = rng.standard_normal((8, 8, 6))
    np.testing.assert_allclose(apply_adjoint(b, x), apply(b, x), atol=1e-10)


def test_adjoint_identity(rng):
    b = spectrum(Psf(rng.uniform(0, 1, size=(3, 2, 3))), (6, 6, 6))
    x = rng.standard_normal((6, 6, 6))
    y = rng.standard_normal((6, 6, 6))
    lhs = float(np.sum(apply(b, x) * y))
    rhs = float(np.sum(x * apply_adjoint(b, y)))
    assert abs(lhs - rhs) <= 1e-10 * np.linalg.norm(x) * np.linalg.norm(y)


def test_norm_bounded_by_max_gain(rng):
    b = spectrum(gaussian_psf((3, 3, 3), 0.8), (7, 7, 3))
    x = rng.standard_normal((7, 7, 3))
    assert np.linalg.norm(apply(b, x)) <= b.max_gain * np.linalg.norm(x) + 1e-12
    assert b.max_gain == pytest.approx(1.0)


def test_blur_commutes_with_circular_shift(rng):
    b = spectrum(Psf(rng.uniform(0, 1, size=(3, 3, 2))), (6, 5, 4))
    x = rng.standard_normal((6, 5, 4))
    for axis in range(3):
        shifted = apply(b, np.roll(x, 1, axis=axis))
        np.testing.assert_allclose(shifted, np.roll(apply(b, x), 1, axis=axis), atol=1e-12)


def test_naive_inverse_of_delta(delta_psf, rng):
    y = rng.standard_normal((4, 4, 3))
    np.testing.assert_allclose(naive_inverse(spectrum(delta_psf, y.shape), y, 0.0), y, atol=1e-12)


def test_naive_inverse_exact_for_well_conditioned_psf(rng):
    taps = np.array([0.1, 0.8, 0.1])
    kernel = taps[:, None, None] * taps[None, :, None] * taps[None, None, :]
    b = spectrum(Psf(kernel), (8, 8, 4))
    x = rng.uniform(0, 1, size=(8, 8, 4))
    restored = naive_inverse(b, apply(b, x), 1e-12)
    assert np.linalg.norm(restored - x) <= 1e-6 * np.linalg.norm(x)


def test_naive_inverse_amplifies_noise(rng):
    b = spectrum(gaussian_psf((9, 9, 3), 3.0), (32, 32, 3))
    x = rng.uniform(0, 1, size=(32, 32, 3))
    noise = 1e-3 * rng.standard_normal(x.shape)
    restored = naive_inverse(b, apply(b, x) + noise, 1e-10)
    assert np.linalg.norm(restored - x) > 10 * np.linalg.norm(noise)


def test_naive_inverse_floor_checks():
    b = spectrum(Psf(np.array([0.5, 0.5])), (2,))
    with pytest.raises(ParameterError):
        naive_inverse(b, np.ones(2), -1.0)
    with pytest.raises(NumericError):
        naive_inverse(b, np.ones(2), 0.0)
    np.testing.assert_allclose(naive_inverse(b, np.ones(2), 1e-8), np.ones(2))
