"""
Circulant (periodic boundary) N-D blur operator.

Handles:
- Gaussian PSF construction
- PSF rotation to the origin (circular shift of the zero-padded kernel)
- FFT diagonalization into the eigenvalue tensor of the blur operator
- forward blur, its adjoint and the naive spectral inverse

The blur of x is real(ifftn(D .* fftn(x))) where D = fftn(rotated PSF).
Shift matrices are never built; rotation is done with np.roll.
"""

import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from ..errors import NumericError, ParameterError
from .tensor_core import ComplexTensor, Shape, Tensor, as_tensor, check_same_shape, fftn, ifftn

logger = logging.getLogger(__name__)

IMAG_TOL = 1e-10


class Psf:
    """
    Point spread function with a declared center.

    Attributes:
        kernel (Tensor): Kernel values
        center (tuple): 0-based multi-index of the PSF center
        normalized (bool): Whether the kernel was scaled to sum to one
    """

    def __init__(self, kernel: Tensor, center: Optional[Sequence[int]] = None,
                 normalized: bool = False):
        self.kernel = as_tensor(kernel, 'PSF kernel')
        if center is None:
            center = tuple(n // 2 for n in self.kernel.shape)
        center = tuple(int(c) for c in center)
        if len(center) != self.kernel.ndim or any(
                not 0 <= c < n for c, n in zip(center, self.kernel.shape)):
            raise ParameterError(f"PSF center {center} outside kernel dims {self.kernel.shape}")
        self.center = center
        self.normalized = normalized

    @classmethod
    def from_kernel(cls, kernel: Tensor, center: Optional[Sequence[int]] = None,
                    normalize: bool = False) -> 'Psf':
        """Wrap an arbitrary kernel, optionally scaling it to unit sum."""
        kernel = as_tensor(kernel, 'PSF kernel')
        if normalize:
            total = kernel.sum()
            if total == 0:
                raise NumericError("cannot normalize a PSF whose entries sum to zero")
            kernel = kernel / total
        return cls(kernel, center, normalized=normalize)

    def describe(self) -> str:
        return f"psf dims={self.kernel.shape} center={self.center} normalized={self.normalized}"

    def __repr__(self) -> str:
        return f"Psf({self.describe()})"


class BlurSpectrum:
    """
    Eigenvalue tensor of a circulant blur operator.

    Attributes:
        eigenvalues (ComplexTensor): fftn of the rotated PSF, image dims
        source (str): Description of the PSF the spectrum came from
    """

    def __init__(self, eigenvalues: ComplexTensor, source: str = ''):
        self.eigenvalues = eigenvalues
        self.eigenvalues.setflags(write=False)
        self.source = source

    @property
    def shape(self) -> Shape:
        return self.eigenvalues.shape

    @property
    def max_gain(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))


def gaussian_psf(size: Sequence[int], sigma: float) -> Psf:
    """
    Isotropic Gaussian PSF sampled on the integer grid and normalized to sum 1.

    Args:
        size: Kernel extents, each >= 1
        sigma: Standard deviation in voxels

    Returns:
        Psf: Normalized kernel centered at size // 2 in every mode

    Raises:
        ParameterError: If sigma <= 0 or an extent < 1
    """
    size = tuple(int(n) for n in size)
    if not sigma > 0:
        raise ParameterError(f"sigma must be positive, got {sigma}")
    if not size or any(n < 1 for n in size):
        raise ParameterError(f"PSF extents must be >= 1, got {size}")

    center = tuple(n // 2 for n in size)
    grids = np.meshgrid(*[np.arange(n) - c for n, c in zip(size, center)], indexing='ij')
    radius_sq = sum(g.astype(np.float64) ** 2 for g in grids)
    kernel = np.exp(-radius_sq / (2.0 * sigma ** 2))
    return Psf(kernel / kernel.sum(), center, normalized=True)


def _embed_kernel(psf: Psf, shape: Shape) -> Tuple[np.ndarray, Tuple[int, ...]]:
    kernel, center = psf.kernel, psf.center
    if kernel.ndim > len(shape):
        raise ParameterError(f"PSF order {kernel.ndim} exceeds image order {len(shape)}")
    extra = len(shape) - kernel.ndim
    kernel = kernel.reshape(kernel.shape + (1,) * extra)
    center = center + (0,) * extra
    if any(k > n for k, n in zip(kernel.shape, shape)):
        raise ParameterError(f"PSF dims {psf.kernel.shape} larger than image dims {tuple(shape)}")

    padded = np.zeros(shape)
    padded[tuple(slice(0, k) for k in kernel.shape)] = kernel
    return padded, center


def spectrum(psf: Psf, shape: Sequence[int]) -> BlurSpectrum:
    """
    Eigenvalues of the periodic blur operator for images of the given dims.

    The kernel is zero-padded to the image dims and circularly shifted so
    that its center lands on the origin, then transformed with fftn.

    Raises:
        ParameterError: If the kernel does not fit inside the image
    """
    shape = tuple(int(n) for n in shape)
    padded, center = _embed_kernel(psf, shape)
    rotated = np.roll(padded, shift=[-c for c in center], axis=tuple(range(len(shape))))
    eigenvalues = fftn(rotated)
    logger.debug(f"Blur spectrum for {psf.describe()} on dims {shape}")
    return BlurSpectrum(eigenvalues, psf.describe())


def _real_part(z: ComplexTensor, what: str) -> Tensor:
    real = z.real
    residue = float(np.max(np.abs(z.imag))) if z.size else 0.0
    scale = max(1.0, float(np.max(np.abs(real))) if z.size else 0.0)
    if residue > IMAG_TOL * scale:
        raise NumericError(f"{what}: imaginary residue {residue:.3e} above tolerance")
    return np.ascontiguousarray(real)


def apply(b: BlurSpectrum, x: Tensor) -> Tensor:
    """Forward blur real(ifftn(D .* fftn(x)))."""
    check_same_shape(x, b.eigenvalues, 'blur input and spectrum')
    return _real_part(ifftn(b.eigenvalues * fftn(x)), 'blur')


def apply_adjoint(b: BlurSpectrum, y: Tensor) -> Tensor:
    """Adjoint blur real(ifftn(conj(D) .* fftn(y)))."""
    check_same_shape(y, b.eigenvalues, 'adjoint blur input and spectrum')
    return _real_part(ifftn(np.conj(b.eigenvalues) * fftn(y)), 'adjoint blur')


def naive_inverse(b: BlurSpectrum, y: Tensor, floor: float) -> Tensor:
    """
    Spectral division real(ifftn(fftn(y) ./ D)).

    Frequencies whose eigenvalue magnitude is below ``floor`` are zeroed.
    Meant to demonstrate noise amplification; the solvers never use it.

    Raises:
        ParameterError: If floor is negative
        NumericError: If floor is zero and some eigenvalue is exactly zero
    """
    if floor < 0:
        raise ParameterError(f"floor must be >= 0, got {floor}")
    check_same_shape(y, b.eigenvalues, 'naive inverse input and spectrum')
    magnitude = np.abs(b.eigenvalues)
    if floor == 0 and np.any(magnitude == 0):
        raise NumericError("blur spectrum has zero eigenvalues; use a positive floor")

    keep = magnitude >= floor
    dropped = int(keep.size - np.count_nonzero(keep))
    if dropped:
        logger.info(f"Naive inverse zeroed {dropped} frequencies below floor {floor:g}")
    quotient = np.zeros(b.shape, dtype=np.complex128)
    np.divide(fftn(y), b.eigenvalues, out=quotient, where=keep)
    # real operator: the imaginary residue is amplified noise, drop it
    return np.ascontiguousarray(ifftn(quotient).real)
