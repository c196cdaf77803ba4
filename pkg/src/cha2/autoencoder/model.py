"""Fully-connected autoencoder: explicit forward pass in numpy with the
fixed hidden stack (250, 120, 60, 30, 8, L, 8, 30, 60, 120, 250) between an
input and an output layer of the one-hot width. ReLU on hidden layers,
sigmoid on the output. 64-bit floats throughout so gradient checks can be
tight.
"""

from __future__ import annotations

import copy
import warnings
from dataclasses import dataclass, field

import numpy as np

from ..errors import InvalidDimension, ShapeMismatch

HIDDEN_STACK = (250, 120, 60, 30, 8)  # mirrored around the latent layer


@dataclass
class MlpModel:
    layer_dims: list[int]
    weights: list[np.ndarray]  # weights[i]: (layer_dims[i+1], layer_dims[i])
    biases: list[np.ndarray]
    latent_index: int          # position of the bottleneck in layer_dims

    @property
    def d_in(self) -> int:
        return self.layer_dims[0]

    @property
    def latent_dim(self) -> int:
        return self.layer_dims[self.latent_index]

    def copy(self) -> "MlpModel":
        return MlpModel(
            list(self.layer_dims),
            [w.copy() for w in self.weights],
            [b.copy() for b in self.biases],
            self.latent_index,
        )


def init_model(d_in: int, latent: int, seed: int) -> MlpModel:
    """Glorot-uniform weights, zero biases; deterministic under seed."""
    if d_in < 1 or latent < 1:
        raise InvalidDimension(f"d_in={d_in}, latent={latent}")
    if latent not in (3, 4, 5):
        warnings.warn(
            f"latent width {latent} outside the studied range 3..5",
            stacklevel=2,
        )
    dims = [d_in, *HIDDEN_STACK, latent, *HIDDEN_STACK[::-1], d_in]
    rng = np.random.default_rng(seed)
    weights, biases = [], []
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        limit = np.sqrt(6.0 / (fan_in + fan_out))
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out))
    return MlpModel(dims, weights, biases, latent_index=len(HIDDEN_STACK) + 1)


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def forward_batch(m: MlpModel, x: np.ndarray):
    """Activations for a (n, d_in) batch: returns (output, latent)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != m.d_in:
        raise ShapeMismatch(f"expected (n, {m.d_in}), got {x.shape}")
    a = x
    latent = None
    last = len(m.weights) - 1
    for i, (w, b) in enumerate(zip(m.weights, m.biases)):
        z = a @ w.T + b
        a = _sigmoid(z) if i == last else np.maximum(z, 0.0)
        if i == m.latent_index - 1:
            latent = a
    return a, latent


def forward(m: MlpModel, x: np.ndarray):
    """Single-vector forward pass: (output, latent)."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1:
        raise ShapeMismatch("forward expects a flat vector")
    out, lat = forward_batch(m, x[None, :])
    return out[0], lat[0]


def encode(m: MlpModel, x: np.ndarray) -> np.ndarray:
    """Input -> latent (activation at the bottleneck)."""
    x = np.asarray(x, dtype=np.float64)
    squeeze = x.ndim == 1
    if squeeze:
        x = x[None, :]
    if x.shape[1] != m.d_in:
        raise ShapeMismatch(f"expected width {m.d_in}, got {x.shape[1]}")
    a = x
    for i in range(m.latent_index):
        a = np.maximum(a @ m.weights[i].T + m.biases[i], 0.0)
    return a[0] if squeeze else a


def decode(m: MlpModel, z: np.ndarray) -> np.ndarray:
    """Latent -> output; accepts any real vector of the latent width."""
    z = np.asarray(z, dtype=np.float64)
    squeeze = z.ndim == 1
    if squeeze:
        z = z[None, :]
    if z.shape[1] != m.latent_dim:
        raise ShapeMismatch(
            f"expected latent width {m.latent_dim}, got {z.shape[1]}"
        )
    a = z
    last = len(m.weights) - 1
    for i in range(m.latent_index, len(m.weights)):
        pre = a @ m.weights[i].T + m.biases[i]
        a = _sigmoid(pre) if i == last else np.maximum(pre, 0.0)
    return a[0] if squeeze else a
