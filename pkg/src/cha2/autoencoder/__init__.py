from .checkpoint import load_checkpoint, save_checkpoint
from .model import (
    MlpModel,
    decode,
    encode,
    forward,
    forward_batch,
    init_model,
)
from .train import TrainConfig, TrainTrace, evaluate_mse, loss_and_gradients, train

__all__ = [
    "MlpModel",
    "TrainConfig",
    "TrainTrace",
    "decode",
    "encode",
    "evaluate_mse",
    "forward",
    "forward_batch",
    "init_model",
    "load_checkpoint",
    "loss_and_gradients",
    "save_checkpoint",
    "train",
]
