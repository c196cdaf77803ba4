"""Pipeline configuration: JSON file with every generation-run default
pre-filled. Threshold boundaries are read strictly ("greater than"), and
the equality interpretation is echoed into every report.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields

from ..autoencoder.train import TrainConfig
from ..errors import UsageError

THRESHOLD_NOTE = (
    "score thresholds are strict: train requires score > train_min_score, "
    "the hull set requires score > hull_min_score, validation covers "
    "val_low <= score < val_high; equality with train_min_score goes to "
    "neither train nor validation"
)


@dataclass
class ScorerConfig:
    backend: str = "proxy"              # "proxy" | "external"
    command: list[str] | None = None    # argv for the external sidecar
    proxy_config: str | None = None     # path; None = bundled defaults

    def __post_init__(self):
        if self.backend not in ("proxy", "external"):
            raise UsageError(f"unknown scorer backend {self.backend!r}")
        if self.backend == "external" and not self.command:
            raise UsageError("external scorer needs a command")


@dataclass
class PipelineConfig:
    dataset: str | None = None
    corpus: str | None = None
    max_len: int = 19
    train_min_score: float = 0.5
    val_score_range: tuple[float, float] = (0.4, 0.5)
    hull_min_score: float = 0.65
    n_samples: int = 100000
    latent_dim: int = 3
    sample_mode: str = "interior"       # "interior" | "surface"
    highlight_threshold: float = 0.7
    rng_seed: int = 0
    scorer: ScorerConfig = field(default_factory=ScorerConfig)
    training: TrainConfig = field(default_factory=TrainConfig)

    def __post_init__(self):
        lo, hi = self.val_score_range
        if not (0.0 <= lo <= hi <= self.train_min_score
                <= self.hull_min_score <= 1.0):
            raise UsageError(
                "need 0 <= val range <= train_min_score "
                "<= hull_min_score <= 1"
            )
        if self.n_samples < 0:
            raise UsageError("n_samples must be >= 0")
        if self.sample_mode not in ("interior", "surface"):
            raise UsageError(f"unknown sample_mode {self.sample_mode!r}")
        if self.max_len != 19:
            raise UsageError("token length is fixed at 19")

    # deterministic sub-seeds for the run stages
    @property
    def model_seed(self) -> int:
        return self.rng_seed

    @property
    def shuffle_seed(self) -> int:
        return self.rng_seed + 1

    @property
    def sampling_seed(self) -> int:
        return self.rng_seed + 2


def load_config(path) -> PipelineConfig:
    with open(path, encoding="utf-8") as fh:
        try:
            raw = json.load(fh)
        except json.JSONDecodeError as err:
            raise UsageError(f"config is not valid JSON: {err}") from None
    return config_from_dict(raw)


def config_from_dict(raw: dict) -> PipelineConfig:
    known = {f.name for f in fields(PipelineConfig)}
    unknown = set(raw) - known
    if unknown:
        raise UsageError(f"unknown config keys: {sorted(unknown)}")
    kwargs = dict(raw)
    if "val_score_range" in kwargs:
        kwargs["val_score_range"] = tuple(kwargs["val_score_range"])
    if "scorer" in kwargs:
        kwargs["scorer"] = ScorerConfig(**kwargs["scorer"])
    if "training" in kwargs:
        kwargs["training"] = TrainConfig(**kwargs["training"])
    return PipelineConfig(**kwargs)


def config_to_dict(cfg: PipelineConfig) -> dict:
    return {
        "dataset": cfg.dataset,
        "corpus": cfg.corpus,
        "max_len": cfg.max_len,
        "train_min_score": cfg.train_min_score,
        "val_score_range": list(cfg.val_score_range),
        "hull_min_score": cfg.hull_min_score,
        "n_samples": cfg.n_samples,
        "latent_dim": cfg.latent_dim,
        "sample_mode": cfg.sample_mode,
        "highlight_threshold": cfg.highlight_threshold,
        "rng_seed": cfg.rng_seed,
        "scorer": {
            "backend": cfg.scorer.backend,
            "command": cfg.scorer.command,
            "proxy_config": cfg.scorer.proxy_config,
        },
        "training": {
            "learning_rate": cfg.training.learning_rate,
            "batch_size": cfg.training.batch_size,
            "max_epochs": cfg.training.max_epochs,
            "adam_beta1": cfg.training.adam_beta1,
            "adam_beta2": cfg.training.adam_beta2,
            "adam_epsilon": cfg.training.adam_epsilon,
            "early_stop_patience": cfg.training.early_stop_patience,
            "rng_seed": cfg.training.rng_seed,
        },
    }
