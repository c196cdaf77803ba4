"""MSE loss, exact backpropagation, and Adam training with early stopping.

Training is single-threaded and fully determined by the config seed: the
same seed reproduces the same shuffles, updates, and returned model bit
for bit.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ..errors import EmptyTrainingSet, ShapeMismatch
from .model import MlpModel, _sigmoid, forward_batch


@dataclass
class TrainConfig:
    learning_rate: float = 1e-3
    batch_size: int = 128
    max_epochs: int = 200
    adam_beta1: float = 0.9
    adam_beta2: float = 0.999
    adam_epsilon: float = 1e-8
    early_stop_patience: int = 20
    rng_seed: int = 0

    def __post_init__(self):
        if self.learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")


@dataclass
class TrainTrace:
    train_mse: list[float] = field(default_factory=list)
    val_mse: list[float] = field(default_factory=list)  # empty without val


def loss_and_gradients(m: MlpModel, batch: np.ndarray):
    """Mean squared reconstruction error over all batch elements and its
    exact gradients: returns (mse, [(dW, db), ...])."""
    x = np.asarray(batch, dtype=np.float64)
    if x.ndim != 2 or x.shape[1] != m.d_in:
        raise ShapeMismatch(f"expected (n, {m.d_in}), got {x.shape}")

    last = len(m.weights) - 1
    activations = [x]
    pre_acts = []
    a = x
    for i, (w, b) in enumerate(zip(m.weights, m.biases)):
        z = a @ w.T + b
        pre_acts.append(z)
        a = _sigmoid(z) if i == last else np.maximum(z, 0.0)
        activations.append(a)

    out = activations[-1]
    diff = out - x
    n_elems = diff.size
    mse = float(np.mean(diff * diff))

    grads = [None] * len(m.weights)
    delta = (2.0 / n_elems) * diff * out * (1.0 - out)  # sigmoid layer
    for i in range(last, -1, -1):
        grads[i] = (delta.T @ activations[i], delta.sum(axis=0))
        if i > 0:
            delta = (delta @ m.weights[i]) * (pre_acts[i - 1] > 0.0)
    return mse, grads


def train(m: MlpModel, train_set: np.ndarray, val_set: np.ndarray,
          cfg: TrainConfig):
    """Adam over seeded shuffled minibatches. With a validation set, early
    stopping tracks the best validation MSE and that model is returned;
    without one, early stopping is disabled and the final model is
    returned. The trace covers every executed epoch."""
    x_train = np.asarray(train_set, dtype=np.float64)
    if x_train.ndim != 2 or x_train.shape[0] == 0:
        raise EmptyTrainingSet("training set is empty")
    x_val = np.asarray(val_set, dtype=np.float64) if val_set is not None \
        else np.empty((0, m.d_in))
    have_val = x_val.shape[0] > 0

    model = m.copy()
    rng = np.random.default_rng(cfg.rng_seed)
    mom = [np.zeros_like(w) for w in model.weights]
    vel = [np.zeros_like(w) for w in model.weights]
    mom_b = [np.zeros_like(b) for b in model.biases]
    vel_b = [np.zeros_like(b) for b in model.biases]
    t = 0

    trace = TrainTrace()
    best_val = np.inf
    best_model = model.copy()
    stale = 0

    for _ in range(cfg.max_epochs):
        perm = rng.permutation(x_train.shape[0])
        epoch_sum = 0.0
        for start in range(0, len(perm), cfg.batch_size):
            batch = x_train[perm[start:start + cfg.batch_size]]
            mse, grads = loss_and_gradients(model, batch)
            epoch_sum += mse * batch.shape[0]
            t += 1
            b1c = 1.0 - cfg.adam_beta1 ** t
            b2c = 1.0 - cfg.adam_beta2 ** t
            for i, (dw, db) in enumerate(grads):
                mom[i] = cfg.adam_beta1 * mom[i] + (1 - cfg.adam_beta1) * dw
                vel[i] = cfg.adam_beta2 * vel[i] + (1 - cfg.adam_beta2) * dw ** 2
                model.weights[i] -= cfg.learning_rate * (mom[i] / b1c) / (
                    np.sqrt(vel[i] / b2c) + cfg.adam_epsilon
                )
                mom_b[i] = cfg.adam_beta1 * mom_b[i] + (1 - cfg.adam_beta1) * db
                vel_b[i] = cfg.adam_beta2 * vel_b[i] + (1 - cfg.adam_beta2) * db ** 2
                model.biases[i] -= cfg.learning_rate * (mom_b[i] / b1c) / (
                    np.sqrt(vel_b[i] / b2c) + cfg.adam_epsilon
                )
        trace.train_mse.append(epoch_sum / x_train.shape[0])

        if have_val:
            val_mse = evaluate_mse(model, x_val)
            trace.val_mse.append(val_mse)
            if val_mse < best_val:
                best_val = val_mse
                best_model = model.copy()
                stale = 0
            else:
                stale += 1
                if stale > cfg.early_stop_patience:
                    break

    return (best_model if have_val else model), trace


def evaluate_mse(m: MlpModel, data: np.ndarray, chunk: int = 4096) -> float:
    """Full-set reconstruction MSE, streamed in chunks."""
    data = np.asarray(data, dtype=np.float64)
    total = 0.0
    for start in range(0, data.shape[0], chunk):
        block = data[start:start + chunk]
        out, _ = forward_batch(m, block)
        total += float(np.sum((out - block) ** 2))
    return total / data.size
