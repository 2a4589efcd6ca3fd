"""Binary snapshots of sampled lattices.

Layout (little-endian): 16-byte magic ``MODSCALE-SPECv1\\0``, u32 d, u32 a,
u32 b, then ``N**d`` complex values as (real, imag) float64 pairs, row-major
with axis 0 slowest.  STFT samples on the full product lattice add a u32 flag
equal to 2 after the header and store ``N**d`` rows of ``N**d`` values, the
spatial index outermost.  The two layouts are told apart by file size.
"""
from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from modscale.spectral import GridSpec

MAGIC = b"MODSCALE-SPECv1\x00"
HEADER = struct.Struct("<III")
PRODUCT_FLAG = 2
_VALUE = np.dtype("<c16")


@dataclass
class Snapshot:
    d: int
    a: int
    b: int
    values: np.ndarray
    product: bool = False

    @property
    def N(self) -> int:
        return 2 ** (self.a + self.b + 1)


def write_snapshot(path, values, grid: GridSpec) -> None:
    values = np.asarray(values, dtype=complex)
    if values.size != grid.N ** grid.d:
        raise ValueError(f"expected {grid.N ** grid.d} values, got {values.size}")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(HEADER.pack(grid.d, grid.a, grid.b))
        fh.write(np.ascontiguousarray(values, dtype=_VALUE).tobytes())


def write_stft_snapshot(path, sample) -> None:
    """Write a full product-lattice :class:`~modscale.stft.StftSample`."""
    grid = sample.grid
    total = grid.N ** grid.d
    if len(sample.x_index) != total or np.any(sample.x_index != np.arange(total)):
        raise ValueError("only full product-lattice samples can be exported")
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(HEADER.pack(grid.d, grid.a, grid.b))
        fh.write(struct.pack("<I", PRODUCT_FLAG))
        fh.write(np.ascontiguousarray(sample.values, dtype=_VALUE).tobytes())


def read_snapshot(path) -> Snapshot:
    raw = Path(path).read_bytes()
    if len(raw) < len(MAGIC) + HEADER.size or raw[: len(MAGIC)] != MAGIC:
        raise ValueError(f"{path}: not a modscale snapshot")
    d, a, b = HEADER.unpack_from(raw, len(MAGIC))
    n = 2 ** (a + b + 1)
    count = n ** d
    body = len(MAGIC) + HEADER.size
    plain = body + 16 * count
    product = body + 4 + 16 * count * count
    if len(raw) == plain:
        vals = np.frombuffer(raw, dtype=_VALUE, offset=body).astype(complex)
        return Snapshot(d, a, b, vals.reshape((n,) * d))
    if len(raw) == product:
        (flag,) = struct.unpack_from("<I", raw, body)
        if flag != PRODUCT_FLAG:
            raise ValueError(f"{path}: unknown header extension {flag}")
        vals = np.frombuffer(raw, dtype=_VALUE, offset=body + 4).astype(complex)
        return Snapshot(d, a, b, vals.reshape((n,) * (2 * d)), product=True)
    raise ValueError(f"{path}: size {len(raw)} does not match the header (d={d}, a={a}, b={b})")
