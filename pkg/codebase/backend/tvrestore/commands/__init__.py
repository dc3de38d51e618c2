"""
Command-line surface of the toolkit.

Each module exposes a ``commands`` list that the factory registers on the
top-level group.
"""
from . import media, restore

__all__ = ['media', 'restore']
