"""
Main storage manager that combines all specialized managers.

This module provides a unified interface to every file format the toolkit
reads or writes, by combining the specialized managers through multiple
inheritance. Commands and scripts only ever talk to StorageManager.

Usage example:
    store = StorageManager()
    t = store.load('input.png')
    store.save(t, 'restored.tns')
    store.save(t, 'frames/', MediaMapping(kind=MediaKind.GRAY_VIDEO))
"""

from typing import Optional

from ..errors import MediaError
from ..services.media import MediaKind, MediaMapping
from ..services.tensor_core import Tensor
from .managers import ImageManager, TensorManager, TraceManager
from .managers.base_manager import PathLike

TNS_SUFFIX = '.tns'
PNG_SUFFIX = '.png'


class StorageManager(TensorManager, ImageManager, TraceManager):
    """
    Comprehensive storage manager combining all specialized managers.

    Dispatch on the path:
    - ``*.tns``: binary tensor container, any order
    - ``*.png``: single image, loaded as m x n x 1 (gray) or m x n x 3 (RGB)
    - anything else: directory of frame_%06d.png files, loaded as
      m x n x frames (gray) or m x n x 3 x frames (RGB)
    """

    def infer_mapping(self, t: Tensor, path: PathLike) -> Optional[MediaMapping]:
        """
        Mapping implied by a loaded tensor and its source path.

        Returns None for .tns data, whose layout is not recorded in the file.
        """
        suffix = self.resolve(path).suffix.lower()
        if suffix == TNS_SUFFIX:
            return None
        if suffix == PNG_SUFFIX:
            kind = MediaKind.COLOR_IMAGE if t.shape[2] == 3 else MediaKind.GRAY_IMAGE
        else:
            kind = MediaKind.COLOR_VIDEO if t.ndim == 4 else MediaKind.GRAY_VIDEO
        return MediaMapping(kind=kind)

    def load(self, path: PathLike, mapping: Optional[MediaMapping] = None) -> Tensor:
        """
        Load a tensor from a .tns file, a PNG or a frame directory.

        Args:
            path: Source path
            mapping: Expected layout; checked against the loaded dims when given

        Returns:
            Tensor: float64 tensor, media values in [0, 1]

        Raises:
            MediaError: If the source cannot be read
            ShapeError: If the loaded dims disagree with ``mapping``
        """
        source = self.resolve(path)
        suffix = source.suffix.lower()
        if suffix == TNS_SUFFIX:
            t = self.read_tns(source)
        elif suffix == PNG_SUFFIX:
            t = self.read_png(source)
            if t.ndim == 2:
                t = t[:, :, None]
        elif source.is_dir():
            t = self.read_frames(source)
        else:
            raise MediaError(f"{source}: unsupported input (expected .tns, .png or a frame directory)")

        if mapping is not None:
            mapping.check(t)
        return t

    def save(self, t: Tensor, path: PathLike, mapping: Optional[MediaMapping] = None) -> None:
        """
        Save a tensor; the target format follows the path like in load.

        Raises:
            MediaError: If the tensor cannot be stored in the target format
            ShapeError: If the tensor disagrees with ``mapping``
        """
        if mapping is not None:
            mapping.check(t)
        suffix = self.resolve(path).suffix.lower()
        if suffix == TNS_SUFFIX:
            self.write_tns(t, path)
        elif suffix == PNG_SUFFIX:
            self.write_png(t, path)
        else:
            self.write_frames(t, path)
