"""
PNG image and frame-directory storage.

Handles all image-related operations including:
- single PNG images (gray or RGB, 8 bits per channel)
- videos stored as directories of frame_%06d.png files
- 8-bit quantization (v/255 on load, clamp and round half up on save)
"""

from pathlib import Path
from typing import List

import numpy as np
from PIL import Image

from ...errors import MediaError
from ...services.tensor_core import Tensor
from .base_manager import BaseManager, PathLike

FRAME_PATTERN = 'frame_{:06d}.png'
FRAME_GLOB = 'frame_*.png'

# 8-bit modes accepted as is, and 8-bit modes converted on load
_NATIVE_MODES = {'L', 'RGB'}
_CONVERTED_MODES = {'P': 'RGB', 'RGBA': 'RGB', 'LA': 'L'}


def quantize(t: Tensor) -> np.ndarray:
    """Clamp to [0, 1] and round half up to 8-bit."""
    return np.floor(np.clip(t, 0.0, 1.0) * 255.0 + 0.5).astype(np.uint8)


class ImageManager(BaseManager):

    def read_png(self, path: PathLike) -> Tensor:
        """
        Load one PNG as an m x n (gray) or m x n x 3 (RGB) array in [0, 1].

        Raises:
            MediaError: If the file is unreadable or not 8 bits per channel
        """
        source = self.resolve(path)
        try:
            with Image.open(source) as img:
                mode = img.mode
                if mode in _CONVERTED_MODES:
                    img = img.convert(_CONVERTED_MODES[mode])
                elif mode not in _NATIVE_MODES:
                    raise MediaError(f"{source}: unsupported bit depth or mode '{mode}'")
                pixels = np.asarray(img, dtype=np.uint8)
        except MediaError:
            raise
        except (OSError, ValueError) as e:
            self.logger.error(f"Failed to read image {source}: {str(e)}")
            raise MediaError(f"cannot read image {source}: {e}") from e

        self.logger.info(f"Read image {pixels.shape} from {source}")
        return pixels.astype(np.float64) / 255.0

    def write_png(self, t: Tensor, path: PathLike) -> None:
        """
        Save an m x n, m x n x 1 or m x n x 3 array in [0, 1] as a PNG.

        Raises:
            MediaError: If the array is not image shaped or the write fails
        """
        t = np.asarray(t)
        if t.ndim == 3 and t.shape[2] == 1:
            t = t[:, :, 0]
        if not (t.ndim == 2 or (t.ndim == 3 and t.shape[2] == 3)):
            raise MediaError(f"cannot store dims {t.shape} as a PNG image")
        target = self.prepare_output(path)
        try:
            Image.fromarray(quantize(t)).save(target, format='PNG')
        except OSError as e:
            self.logger.error(f"Failed to write image {target}: {str(e)}")
            raise MediaError(f"cannot write image {target}: {e}") from e
        self.logger.info(f"Wrote image {t.shape} to {target}")

    def frame_paths(self, directory: PathLike) -> List[Path]:
        source = self.resolve(directory)
        if not source.is_dir():
            raise MediaError(f"{source} is not a frame directory")
        paths = sorted(source.glob(FRAME_GLOB))
        if not paths:
            raise MediaError(f"{source} contains no {FRAME_GLOB} files")
        return paths

    def read_frames(self, directory: PathLike) -> Tensor:
        """
        Stack the frames of a directory along a new last mode.

        Gray frames give m x n x frames, RGB frames m x n x 3 x frames.

        Raises:
            MediaError: If frames are missing, unreadable or of mixed sizes
        """
        frames = [self.read_png(p) for p in self.frame_paths(directory)]
        first = frames[0].shape
        for index, frame in enumerate(frames):
            if frame.shape != first:
                raise MediaError(
                    f"frame {index} of {directory} has dims {frame.shape}, expected {first}"
                )
        return np.stack(frames, axis=-1)

    def write_frames(self, t: Tensor, directory: PathLike) -> None:
        """Write each slice along the last mode as frame_%06d.png."""
        t = np.asarray(t)
        if t.ndim not in (3, 4):
            raise MediaError(f"cannot store dims {t.shape} as video frames")
        target = self.resolve(directory)
        target.mkdir(parents=True, exist_ok=True)
        for k in range(t.shape[-1]):
            self.write_png(t[..., k], target / FRAME_PATTERN.format(k))
        self.logger.info(f"Wrote {t.shape[-1]} frames to {target}")
