"""
Persistence layer: tensors, images, frame directories and solver traces.
"""
from .storage_manager import StorageManager

__all__ = ['StorageManager']
