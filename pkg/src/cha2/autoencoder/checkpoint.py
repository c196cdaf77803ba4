"""Binary checkpoint format, self-describing via the appended alphabet.

Layout (little-endian):

    magic    4 bytes  "CHA2"
    version  u32      currently 1
    n_dims   u32      length of the layer dimension list
    dims     u32 * n_dims
    per layer transition i -> i+1:
        weights  f64 * dims[i+1] * dims[i], row-major
        bias     f64 * dims[i+1]
    n_symbols  u32
    per symbol: u32 byte length + UTF-8 bytes

The bottleneck position is recovered as the first minimum of the interior
layer dimensions.
"""

from __future__ import annotations

import struct

import numpy as np

from ..errors import BadCheckpoint
from ..selfies_codec.alphabet import Alphabet
from .model import MlpModel

MAGIC = b"CHA2"
VERSION = 1


def save_checkpoint(model: MlpModel, alphabet: Alphabet, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(struct.pack("<I", len(model.layer_dims)))
        fh.write(struct.pack(f"<{len(model.layer_dims)}I", *model.layer_dims))
        for w, b in zip(model.weights, model.biases):
            fh.write(np.ascontiguousarray(w, dtype="<f8").tobytes())
            fh.write(np.ascontiguousarray(b, dtype="<f8").tobytes())
        fh.write(struct.pack("<I", len(alphabet.symbols)))
        for sym in alphabet.symbols:
            raw = sym.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)


def load_checkpoint(path) -> tuple[MlpModel, Alphabet]:
    with open(path, "rb") as fh:
        data = fh.read()
    pos = 0

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise BadCheckpoint("truncated checkpoint")
        chunk = data[pos:pos + n]
        pos += n
        return chunk

    if take(4) != MAGIC:
        raise BadCheckpoint("bad magic bytes")
    (version,) = struct.unpack("<I", take(4))
    if version != VERSION:
        raise BadCheckpoint(f"unsupported version {version}")
    (n_dims,) = struct.unpack("<I", take(4))
    dims = list(struct.unpack(f"<{n_dims}I", take(4 * n_dims)))
    weights, biases = [], []
    for d_in, d_out in zip(dims[:-1], dims[1:]):
        w = np.frombuffer(take(8 * d_out * d_in), dtype="<f8")
        weights.append(w.reshape(d_out, d_in).copy())
        b = np.frombuffer(take(8 * d_out), dtype="<f8")
        biases.append(b.copy())
    (n_symbols,) = struct.unpack("<I", take(4))
    symbols = []
    for _ in range(n_symbols):
        (length,) = struct.unpack("<I", take(4))
        symbols.append(take(length).decode("utf-8"))
    if pos != len(data):
        raise BadCheckpoint("trailing bytes after alphabet")

    interior = dims[1:-1]
    latent_index = 1 + min(range(len(interior)), key=lambda i: interior[i])
    model = MlpModel(dims, weights, biases, latent_index)
    return model, Alphabet.from_symbols(symbols)
