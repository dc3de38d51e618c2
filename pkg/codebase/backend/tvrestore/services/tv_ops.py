"""
Discrete total variation operators on N-order tensors.

Handles:
- TV seminorms (isotropic and anisotropic)
- the divergence-like operator (div) assembling dual parts into a primal tensor
- its adjoint, the per-mode forward difference operator (grad)
- projection onto the dual feasible set
- a power-iteration estimate of the squared norm of grad

One dual tensor is kept per mode. Part m has the primal dims with mode m
shortened by one; entry idx of part m is co-located with voxel idx.
Singleton modes give empty parts and contribute nothing.
"""

import logging
import math
from enum import Enum
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np

from ..errors import ShapeError
from .tensor_core import Shape, Tensor

logger = logging.getLogger(__name__)


class TvFlavor(str, Enum):
    ISO = 'iso'
    ANISO = 'aniso'


def _mode_slice(order: int, mode: int, sl: slice) -> Tuple[slice, ...]:
    index = [slice(None)] * order
    index[mode] = sl
    return tuple(index)


def dual_shape(primal_shape: Shape, mode: int) -> Shape:
    shape = list(primal_shape)
    shape[mode] -= 1
    return tuple(shape)


class DualVars:
    """
    Dual variable of the TV problem: one difference-shaped tensor per mode.

    Attributes:
        parts (tuple): Per-mode float64 arrays
        primal_shape (tuple): Dims of the primal tensor the parts belong to
    """

    __slots__ = ('parts', 'primal_shape')

    def __init__(self, parts: Sequence[np.ndarray], primal_shape: Shape):
        primal_shape = tuple(int(n) for n in primal_shape)
        if len(parts) != len(primal_shape):
            raise ShapeError(
                f"expected {len(primal_shape)} dual parts for dims {primal_shape}, got {len(parts)}"
            )
        checked = []
        for mode, part in enumerate(parts):
            part = np.asarray(part, dtype=np.float64)
            expected = dual_shape(primal_shape, mode)
            if part.shape != expected:
                raise ShapeError(f"dual part {mode} has dims {part.shape}, expected {expected}")
            checked.append(part)
        self.parts = tuple(checked)
        self.primal_shape = primal_shape

    @classmethod
    def zeros(cls, primal_shape: Shape) -> 'DualVars':
        return cls([np.zeros(dual_shape(primal_shape, m)) for m in range(len(primal_shape))],
                   primal_shape)

    def __iter__(self) -> Iterator[np.ndarray]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def copy(self) -> 'DualVars':
        return DualVars([p.copy() for p in self.parts], self.primal_shape)

    def check_primal(self, primal_shape: Shape) -> None:
        if tuple(primal_shape) != self.primal_shape:
            raise ShapeError(f"dual variables belong to dims {self.primal_shape}, not {tuple(primal_shape)}")

    def axpy(self, alpha: float, other: 'DualVars') -> 'DualVars':
        """Return self + alpha * other."""
        other.check_primal(self.primal_shape)
        return DualVars([p + alpha * q for p, q in zip(self.parts, other.parts)], self.primal_shape)

    def extrapolate(self, previous: 'DualVars', coef: float) -> 'DualVars':
        """Momentum step self + coef * (self - previous)."""
        previous.check_primal(self.primal_shape)
        return DualVars([p + coef * (p - q) for p, q in zip(self.parts, previous.parts)],
                        self.primal_shape)

    def inner(self, other: 'DualVars') -> float:
        other.check_primal(self.primal_shape)
        return float(sum(np.dot(p.ravel(), q.ravel()) for p, q in zip(self.parts, other.parts)))

    def norm(self) -> float:
        return math.sqrt(self.inner(self))

    def max_abs_diff(self, other: 'DualVars') -> float:
        other.check_primal(self.primal_shape)
        return max((float(np.max(np.abs(p - q))) for p, q in zip(self.parts, other.parts) if p.size),
                   default=0.0)


def grad(t: Tensor) -> DualVars:
    """Per-mode differences t(idx) - t(idx + e_m)."""
    return DualVars([-np.diff(t, axis=m) for m in range(t.ndim)], t.shape)


def div(d: DualVars, shape: Optional[Shape] = None) -> Tensor:
    """
    Assemble dual parts into a primal tensor.

    out(idx) = sum_m d_m(idx) - d_m(idx - e_m), with out-of-range dual
    entries read as zero. This is the adjoint of grad.

    Args:
        d: Dual variables
        shape: Target primal dims; checked against d when given

    Returns:
        Tensor: Primal-shaped result

    Raises:
        ShapeError: If ``shape`` disagrees with the dual parts
    """
    if shape is not None:
        d.check_primal(shape)
    order = len(d.primal_shape)
    out = np.zeros(d.primal_shape)
    for mode, part in enumerate(d.parts):
        if part.size == 0:
            continue
        out[_mode_slice(order, mode, slice(0, -1))] += part
        out[_mode_slice(order, mode, slice(1, None))] -= part
    return out


def _pad_to_primal(part: np.ndarray, mode: int) -> np.ndarray:
    pad = [(0, 0)] * part.ndim
    pad[mode] = (0, 1)
    return np.pad(part, pad)


def voxel_norms(d: DualVars) -> Tensor:
    """Euclidean norm of the co-located dual entries at every voxel."""
    sq = np.zeros(d.primal_shape)
    for mode, part in enumerate(d.parts):
        sq += _pad_to_primal(part, mode) ** 2
    return np.sqrt(sq)


def tv(t: Tensor, flavor: TvFlavor) -> float:
    """
    Discrete total variation of a tensor.

    Anisotropic TV sums |forward difference| over all modes and positions.
    Isotropic TV sums, over voxels, the Euclidean norm of the co-located
    forward differences; differences past the end of a mode count as zero.
    """
    flavor = TvFlavor(flavor)
    diffs = grad(t)
    if flavor is TvFlavor.ANISO:
        return float(sum(np.abs(p).sum() for p in diffs))
    return float(voxel_norms(diffs).sum())


def project_dual(d: DualVars, flavor: TvFlavor) -> DualVars:
    """
    Orthogonal projection onto the dual feasible set.

    Aniso clamps each entry to [-1, 1]. Iso divides the co-located entries
    of each voxel by max(1, their Euclidean norm).
    """
    flavor = TvFlavor(flavor)
    if flavor is TvFlavor.ANISO:
        return DualVars([np.clip(p, -1.0, 1.0) for p in d.parts], d.primal_shape)

    scale = np.maximum(voxel_norms(d), 1.0)
    order = len(d.primal_shape)
    parts: List[np.ndarray] = []
    for mode, part in enumerate(d.parts):
        parts.append(part / scale[_mode_slice(order, mode, slice(0, -1))])
    return DualVars(parts, d.primal_shape)


def estimate_operator_norm(shape: Shape, iters: int = 100, seed: int = 0) -> float:
    """
    Power-iteration estimate of ||grad||^2 on tensors of the given dims.

    Iterates v <- div(grad(v)) and returns the final Rayleigh quotient
    ||grad v||^2 / ||v||^2, which never exceeds the true value (bounded by
    4N for N modes).
    """
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(shape)
    v /= np.linalg.norm(v)
    estimate = 0.0
    for _ in range(iters):
        w = div(grad(v))
        norm_w = np.linalg.norm(w)
        if norm_w == 0:
            break
        v = w / norm_w
        estimate = grad(v).norm() ** 2
    logger.debug(f"Operator norm estimate for dims {tuple(shape)}: {estimate:.6f}")
    return float(estimate)
