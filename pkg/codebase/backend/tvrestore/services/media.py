"""
Media-level helpers for the restoration pipeline.

Handles:
- media mappings (how images and videos are laid out as tensors)
- seeded Gaussian noise
- PSNR
- synthetic piecewise-constant test images and videos
"""

import logging
import math
from enum import Enum
from typing import Optional

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..errors import ParameterError, ShapeError
from .blur import BlurSpectrum, apply
from .tensor_core import Tensor, check_same_shape

logger = logging.getLogger(__name__)


class MediaKind(str, Enum):
    COLOR_IMAGE = 'color-image'    # m x n x 3
    GRAY_IMAGE = 'gray-image'      # m x n x 1
    GRAY_VIDEO = 'gray-video'      # m x n x frames
    COLOR_VIDEO = 'color-video'    # m x n x 3 x frames


class MediaMapping(BaseModel):
    """
    Layout of a media object as a tensor.

    Attributes:
        kind: Image or video layout
        peak: Peak intensity after normalization
    """

    model_config = ConfigDict(frozen=True)

    kind: MediaKind
    peak: float = Field(default=1.0, gt=0.0)

    @property
    def is_video(self) -> bool:
        return self.kind in (MediaKind.GRAY_VIDEO, MediaKind.COLOR_VIDEO)

    @property
    def channels(self) -> int:
        return 3 if self.kind in (MediaKind.COLOR_IMAGE, MediaKind.COLOR_VIDEO) else 1

    def check(self, t: Tensor) -> None:
        """
        Verify that a tensor has the dims this mapping declares.

        Raises:
            ShapeError: If order or channel extent disagree with the mapping
        """
        order = 4 if self.kind is MediaKind.COLOR_VIDEO else 3
        if t.ndim != order:
            raise ShapeError(f"{self.kind.value} needs an order-{order} tensor, got dims {t.shape}")
        if self.kind is not MediaKind.GRAY_VIDEO and t.shape[2] != self.channels:
            raise ShapeError(
                f"{self.kind.value} needs {self.channels} channel(s) in mode 3, got dims {t.shape}"
            )


class NoiseSpec(BaseModel):
    """Seeded additive Gaussian noise."""

    model_config = ConfigDict(frozen=True)

    std: float = Field(ge=0.0, allow_inf_nan=False)
    seed: int = 0


def add_noise(t: Tensor, spec: NoiseSpec) -> Tensor:
    """Return t plus seeded Gaussian noise; the result is not clamped."""
    if spec.std == 0:
        return t.copy()
    rng = np.random.default_rng(spec.seed)
    return t + rng.normal(0.0, spec.std, size=t.shape)


def add_blur_and_noise(t: Tensor, b: BlurSpectrum, spec: Optional[NoiseSpec] = None) -> Tensor:
    """Blur t with spectrum b, then add noise when a spec is given."""
    blurred = apply(b, t)
    return blurred if spec is None else add_noise(blurred, spec)


def psnr(x: Tensor, ref: Tensor, peak: float = 1.0) -> float:
    """
    Peak signal-to-noise ratio 10*log10(peak^2 / MSE) in dB.

    Returns:
        float: PSNR, or math.inf when x equals ref

    Raises:
        ShapeError: If x and ref have different dims
        ParameterError: If peak <= 0
    """
    if not peak > 0:
        raise ParameterError(f"peak must be positive, got {peak}")
    check_same_shape(x, ref, 'psnr operands')
    mse = float(np.mean((np.asarray(x, dtype=np.float64) - ref) ** 2))
    if mse == 0:
        return math.inf
    return 10.0 * math.log10(peak ** 2 / mse)


def format_psnr(value: float) -> str:
    return 'inf' if math.isinf(value) else f"{value:.2f}"


# Per-channel intensities of the phantom regions. Channels differ by at most
# 0.1 within a region while regions differ strongly in brightness.
_BACKGROUND = (0.10, 0.12, 0.15)
_RECTANGLE = (0.82, 0.78, 0.74)
_DISC = (0.42, 0.47, 0.50)
_BAND = (0.64, 0.61, 0.55)


def _color_frame(rows: int, cols: int, shift: float = 0.0) -> Tensor:
    """One piecewise-constant RGB frame; shift moves the rectangle horizontally."""
    r, c = np.meshgrid(np.arange(rows) / rows, np.arange(cols) / cols, indexing='ij')
    frame = np.empty((rows, cols, 3))
    frame[:] = _BACKGROUND

    left = 0.125 + shift
    rectangle = (r >= 0.125) & (r < 0.5) & (c >= left) & (c < left + 0.5)
    frame[rectangle] = _RECTANGLE
    frame[(r >= 0.75) & (r < 0.9)] = _BAND
    disc = (r - 0.65) ** 2 + (c - 0.6) ** 2 < 0.22 ** 2
    frame[disc] = _DISC
    return frame


def phantom(kind: MediaKind, rows: int = 64, cols: int = 64, frames: int = 1) -> Tensor:
    """
    Synthetic piecewise-constant test data in [0, 1].

    Color content is a background with a rectangle, a horizontal band and a
    disc in muted tints, so the channels stay strongly correlated as in
    natural images. Videos move the rectangle to the right by one pixel per frame;
    gray variants average the color channels.

    Args:
        kind: Layout of the result
        rows: Image height
        cols: Image width
        frames: Frame count for videos (ignored for images)

    Returns:
        Tensor: Phantom with the dims required by ``kind``
    """
    kind = MediaKind(kind)
    if rows < 1 or cols < 1 or frames < 1:
        raise ParameterError(f"phantom dims must be positive, got {rows}x{cols}x{frames}")

    if kind in (MediaKind.COLOR_IMAGE, MediaKind.GRAY_IMAGE):
        frame = _color_frame(rows, cols)
        if kind is MediaKind.GRAY_IMAGE:
            return frame.mean(axis=2, keepdims=True)
        return frame

    stack = np.stack([_color_frame(rows, cols, shift=k / cols) for k in range(frames)], axis=-1)
    if kind is MediaKind.GRAY_VIDEO:
        return stack.mean(axis=2)
    return stack
