"""Binary field snapshots.

Layout (little endian): magic ``SQG1``, format version (u32), n (u32),
box length L (f64), time t (f64), gamma (f64), kappa (f64), then the
real-space field values as n*n f64, row major with the second axis fastest.
Snapshots store grid values rather than spectra so they stay inspectable
with generic tools; spectra are recomputed on load.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass

import numpy as np

from .errors import SnapshotFormatError
from .spectral import Grid, RealField

MAGIC = b"SQG1"
VERSION = 1
_HEADER = struct.Struct("<4sII4d")


@dataclass(frozen=True)
class Snapshot:
    field: RealField
    t: float
    gamma: float
    kappa: float


def write_snapshot(path, field: RealField, t: float, gamma: float, kappa: float):
    values = np.ascontiguousarray(field.values, dtype="<f8")
    header = _HEADER.pack(MAGIC, VERSION, field.grid.n, field.grid.length,
                          float(t), float(gamma), float(kappa))
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(values.tobytes())


def read_snapshot(path) -> Snapshot:
    with open(path, "rb") as fh:
        raw = fh.read(_HEADER.size)
        if len(raw) < _HEADER.size:
            raise SnapshotFormatError(f"{path}: truncated header")
        magic, version, n, length, t, gamma, kappa = _HEADER.unpack(raw)
        if magic != MAGIC:
            raise SnapshotFormatError(f"{path}: bad magic {magic!r}")
        if version != VERSION:
            raise SnapshotFormatError(f"{path}: unsupported version {version}")
        payload = fh.read(n * n * 8 + 1)
    if len(payload) != n * n * 8:
        raise SnapshotFormatError(
            f"{path}: payload has {len(payload)} bytes, expected {n * n * 8}")
    values = np.frombuffer(payload, dtype="<f8").reshape(n, n).copy()
    grid = Grid(n, length)
    return Snapshot(field=RealField(grid, values), t=t, gamma=gamma, kappa=kappa)
