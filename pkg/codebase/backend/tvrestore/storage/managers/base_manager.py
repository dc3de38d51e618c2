"""
Base storage manager with path handling.

This module provides the foundation for all specialized storage managers.
It handles path resolution and logging setup.

Features:
- Path resolution against a base directory
- Parent directory creation before writes
- Per-manager logger
"""

import logging
from pathlib import Path
from typing import Optional, Union

PathLike = Union[str, Path]


class BaseManager:
    """
    Base class for all storage managers.

    Provides common functionality for path handling and logging.
    All specialized managers inherit from this class so that reads and
    writes resolve paths and log the same way.

    Attributes:
        base_dir (Path): Directory relative paths are resolved against
        logger (logging.Logger): Logger instance for this manager
    """

    def __init__(self, base_dir: Optional[PathLike] = None):
        """
        Initialize the base manager.

        Args:
            base_dir: Directory for relative paths; the working directory
                when omitted
        """
        self.base_dir = Path(base_dir) if base_dir is not None else Path.cwd()
        self.logger = logging.getLogger(self.__class__.__name__)

    def resolve(self, path: PathLike) -> Path:
        """Return ``path`` as an absolute Path, relative to base_dir."""
        path = Path(path)
        return path if path.is_absolute() else self.base_dir / path

    def prepare_output(self, path: PathLike) -> Path:
        """Resolve an output path and create its parent directory."""
        path = self.resolve(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        return path
