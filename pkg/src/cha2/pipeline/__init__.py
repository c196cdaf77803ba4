from .config import PipelineConfig, ScorerConfig, config_from_dict, load_config
from .corpus import load_corpus, save_corpus
from .ingest import IngestResult, MoleculeRecord, ingest
from .report import emit_report, render_summary
from .run import GenerationReport, run_generation, split, train_autoencoder

__all__ = [
    "GenerationReport",
    "IngestResult",
    "MoleculeRecord",
    "PipelineConfig",
    "ScorerConfig",
    "config_from_dict",
    "emit_report",
    "ingest",
    "load_config",
    "load_corpus",
    "render_summary",
    "run_generation",
    "save_corpus",
    "split",
    "train_autoencoder",
]
