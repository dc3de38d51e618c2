"""
Storage managers package initialization.
"""
from .base_manager import BaseManager
from .tensor_manager import TensorManager
from .image_manager import ImageManager
from .trace_manager import TraceManager

__all__ = ['BaseManager', 'TensorManager', 'ImageManager', 'TraceManager']
