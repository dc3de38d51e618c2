"""
Binary tensor container (.tns) reading and writing.

Layout:
- magic bytes b"TNS1"
- one unsigned byte: order N
- N little-endian u64 extents
- product(dims) little-endian f64 values in C order

Round trips are bit exact.
"""

import math

import numpy as np

from ...errors import MediaError
from ...services.tensor_core import Tensor, as_tensor
from .base_manager import BaseManager, PathLike

MAGIC = b'TNS1'
HEADER_DTYPE = np.dtype('<u8')
VALUE_DTYPE = np.dtype('<f8')


class TensorManager(BaseManager):

    def write_tns(self, t: Tensor, path: PathLike) -> None:
        """
        Write a tensor to a .tns container.

        Args:
            t: Tensor of order 1..255
            path: Output file

        Raises:
            MediaError: If the order does not fit the header or the write fails
        """
        t = np.asarray(t, dtype=np.float64)
        if not 1 <= t.ndim <= 255:
            raise MediaError(f"cannot store a tensor of order {t.ndim} in a .tns container")
        target = self.prepare_output(path)
        payload = b''.join([
            MAGIC,
            bytes([t.ndim]),
            np.asarray(t.shape, dtype=HEADER_DTYPE).tobytes(),
            np.ascontiguousarray(t, dtype=VALUE_DTYPE).tobytes(order='C'),
        ])
        try:
            target.write_bytes(payload)
        except OSError as e:
            self.logger.error(f"Failed to write {target}: {str(e)}")
            raise MediaError(f"cannot write {target}: {e}") from e
        self.logger.info(f"Wrote tensor {t.shape} to {target}")

    def read_tns(self, path: PathLike) -> Tensor:
        """
        Read a tensor from a .tns container.

        Raises:
            MediaError: If the file is unreadable, truncated or not a container
        """
        source = self.resolve(path)
        try:
            data = source.read_bytes()
        except OSError as e:
            self.logger.error(f"Failed to read {source}: {str(e)}")
            raise MediaError(f"cannot read {source}: {e}") from e

        if len(data) < 5 or data[:4] != MAGIC:
            raise MediaError(f"{source} is not a .tns container (bad magic)")
        order = data[4]
        header_end = 5 + order * HEADER_DTYPE.itemsize
        if order < 1 or len(data) < header_end:
            raise MediaError(f"{source} has a truncated or invalid header")

        dims = tuple(int(n) for n in np.frombuffer(data, dtype=HEADER_DTYPE, count=order, offset=5))
        if 0 in dims:
            raise MediaError(f"{source} declares an empty mode: dims {dims}")
        # exact integer size; u64 extents can overflow numpy products
        count = math.prod(dims)
        expected = count * VALUE_DTYPE.itemsize
        if len(data) - header_end != expected:
            raise MediaError(f"{source} holds {len(data) - header_end} value bytes, expected {expected}")

        values = np.frombuffer(data, dtype=VALUE_DTYPE, count=count, offset=header_end)
        self.logger.info(f"Read tensor {dims} from {source}")
        return as_tensor(values.reshape(dims).copy(), str(source))
