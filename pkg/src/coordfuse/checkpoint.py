"""Named-tensor checkpoint archive.

Layout: 4-byte magic ``CFCK``, one version byte, then for each tensor a
uint32 name length, the UTF-8 name, a uint8 rank, uint32 dims, and the
row-major float64 payload. All integers and floats are little-endian.
"""

from __future__ import annotations

import struct

import numpy as np

from .exceptions import DataValidationError

MAGIC = b"CFCK"
VERSION = 1


def save_checkpoint(path, tensors):
    """Write a mapping of name -> ndarray (insertion order preserved)."""
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<B", VERSION))
        for name, values in tensors.items():
            arr = np.ascontiguousarray(values, dtype=np.float64)
            encoded = name.encode("utf-8")
            fh.write(struct.pack("<I", len(encoded)))
            fh.write(encoded)
            fh.write(struct.pack("<B", arr.ndim))
            for dim in arr.shape:
                fh.write(struct.pack("<I", dim))
            fh.write(arr.astype("<f8").tobytes())


def load_checkpoint(path):
    """Read a checkpoint back into an ordered dict of name -> ndarray."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if blob[:4] != MAGIC:
        raise DataValidationError(f"not a checkpoint file: {path}")
    version = blob[4]
    if version != VERSION:
        raise DataValidationError(f"unsupported checkpoint version {version}")
    out = {}
    pos = 5
    while pos < len(blob):
        (name_len,) = struct.unpack_from("<I", blob, pos)
        pos += 4
        name = blob[pos:pos + name_len].decode("utf-8")
        pos += name_len
        rank = blob[pos]
        pos += 1
        dims = struct.unpack_from(f"<{rank}I", blob, pos) if rank else ()
        pos += 4 * rank
        count = int(np.prod(dims)) if rank else 1
        values = np.frombuffer(blob, dtype="<f8", count=count, offset=pos)
        pos += 8 * count
        out[name] = values.reshape(dims).astype(np.float64)
    return out
