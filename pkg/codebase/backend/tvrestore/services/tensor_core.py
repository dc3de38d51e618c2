"""
Dense N-order tensor primitives.

Tensors are plain numpy arrays of float64 in C order (last index varies
fastest). This module provides the handful of algebraic operations every
other service builds on:
- validation/conversion of caller data
- inner product and Frobenius norm
- element-wise arithmetic with explicit division checks
- the N-dimensional FFT pair (forward unnormalized, inverse divides by
  the number of entries)
"""

import logging
import math
from enum import Enum
from typing import Tuple, Union

import numpy as np
import numpy.typing as npt
import scipy.fft

from .. import settings
from ..errors import NumericError, ShapeError

logger = logging.getLogger(__name__)

Tensor = npt.NDArray[np.float64]
ComplexTensor = npt.NDArray[np.complex128]
Shape = Tuple[int, ...]


class ElementwiseOp(str, Enum):
    ADD = 'add'
    SUB = 'sub'
    MUL = 'mul'
    DIV = 'div'
    SCALE = 'scale'


def as_tensor(data, name: str = 'tensor') -> Tensor:
    """
    Convert array-like data into a validated float64 C-ordered tensor.

    Args:
        data: Anything numpy can turn into a real array
        name: Name used in error messages

    Returns:
        Tensor: A C-contiguous float64 array (a copy when conversion is needed)

    Raises:
        ShapeError: If the array has order 0 or an empty mode
        NumericError: If any entry is NaN or infinite
    """
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim < 1:
        raise ShapeError(f"{name} must have order >= 1, got a scalar")
    arr = np.ascontiguousarray(arr)
    if any(extent < 1 for extent in arr.shape):
        raise ShapeError(f"{name} has an empty mode: dims {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"{name} contains NaN or infinite entries")
    return arr


def check_same_shape(a: np.ndarray, b: np.ndarray, what: str = 'operands') -> None:
    """Raise ShapeError unless both arrays have identical dims."""
    if a.shape != b.shape:
        raise ShapeError(f"{what} dims differ: {a.shape} vs {b.shape}")


def inner(a: Tensor, b: Tensor) -> float:
    """Sum over all multi-indices of a*b."""
    check_same_shape(a, b, 'inner product')
    return float(np.dot(a.ravel(), b.ravel()))


def frobenius_norm(a: Tensor) -> float:
    return math.sqrt(inner(a, a))


def elementwise(a: Tensor, b: Union[Tensor, float], op: ElementwiseOp) -> Tensor:
    """
    Entrywise arithmetic producing a new tensor.

    Args:
        a: Left operand
        b: Right operand; a tensor of the same dims, or a scalar for SCALE
        op: Operation to apply

    Returns:
        Tensor: Result with the dims of ``a``

    Raises:
        ShapeError: If a binary operand has different dims
        NumericError: If DIV meets a zero divisor
    """
    op = ElementwiseOp(op)
    if op is ElementwiseOp.SCALE:
        return a * float(b)

    b = np.asarray(b, dtype=np.float64)
    check_same_shape(a, b, f"elementwise {op.value}")
    if op is ElementwiseOp.ADD:
        return a + b
    if op is ElementwiseOp.SUB:
        return a - b
    if op is ElementwiseOp.MUL:
        return a * b

    zeros = np.count_nonzero(b == 0)
    if zeros:
        raise NumericError(f"division by zero at {zeros} entries")
    return a / b


def fftn(a: Union[Tensor, ComplexTensor]) -> ComplexTensor:
    """Unnormalized forward N-D DFT over every mode."""
    return scipy.fft.fftn(a, workers=settings.FFT_WORKERS)


def ifftn(a: ComplexTensor) -> ComplexTensor:
    """Inverse N-D DFT, divides by product(dims)."""
    return scipy.fft.ifftn(a, workers=settings.FFT_WORKERS)


def relative_change(x: Tensor, x_prev: Tensor) -> float:
    """||x - x_prev||_F / max(||x_prev||_F, 1e-12)."""
    return frobenius_norm(x - x_prev) / max(frobenius_norm(x_prev), 1e-12)
