"""End-to-end generation: ingest, threshold splits, training, hull
construction over the top-scoring latents, uniform sampling, decoding,
deduplication, scoring, and report assembly.

Every stage draws its randomness from seeds derived from the single
config seed, so a full run is reproducible byte for byte.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ..autoencoder import MlpModel, TrainConfig, init_model
from ..autoencoder.model import decode as ae_decode
from ..autoencoder.model import encode as ae_encode
from ..autoencoder.train import TrainTrace, train
from ..errors import EmptySplit
from ..hullspace import (
    ConvexHull,
    PointSet,
    build_hull,
    sample_surface,
    sample_uniform,
)
from ..molgraph import MolecularGraph, canonical_form, descriptors, emit_smiles
from ..scoring import ExternalScorer, load_proxy_config, proxy_score
from ..selfies_codec import (
    Alphabet,
    DialectTables,
    TokenSequence,
    argmax_decode_batch,
    derive_batch,
    detokenize,
    one_hot,
)
from .config import THRESHOLD_NOTE, PipelineConfig
from .ingest import IngestResult, MoleculeRecord, ingest

log = logging.getLogger(__name__)


@dataclass
class GeneratedMolecule:
    selfies: str
    smiles: str
    canonical: str
    score: float
    novel: bool
    cn_bonds: int
    co_bonds: int
    n_copies: int  # how many samples decoded to this molecule


@dataclass
class GenerationReport:
    molecules: list[GeneratedMolecule]
    summary: dict
    histogram: list[tuple[float, int, int]]  # bin_low, dataset, generated
    latent_rows: list[tuple[tuple[float, ...], float, str, int]]
    hull: ConvexHull | None
    trace: TrainTrace | None
    config: PipelineConfig


def split(records: list[MoleculeRecord], cfg: PipelineConfig):
    """Strict threshold split into (train, validation, hull_set); molecules
    scoring below the validation window are discarded."""
    scored = [r for r in records if r.score is not None]
    lo, hi = cfg.val_score_range
    train_set = [r for r in scored if r.score > cfg.train_min_score]
    val_set = [r for r in scored if lo <= r.score < hi]
    hull_set = [r for r in scored if r.score > cfg.hull_min_score]
    if not train_set:
        raise EmptySplit(f"no molecules score above {cfg.train_min_score}")
    if not hull_set:
        raise EmptySplit(f"no molecules score above {cfg.hull_min_score}")
    return train_set, val_set, hull_set


def _one_hot_matrix(records, alphabet: Alphabet) -> np.ndarray:
    if not records:
        return np.empty((0, 19 * len(alphabet)))
    return np.stack([one_hot(r.tokens, alphabet).ravel() for r in records])


def _encode_records(model: MlpModel, records, alphabet: Alphabet,
                    chunk: int = 4096) -> np.ndarray:
    """Latent coordinates of every record, one-hot encoded in chunks so
    large corpora never materialize a full input matrix."""
    out = np.empty((len(records), model.latent_dim))
    for start in range(0, len(records), chunk):
        block = records[start:start + chunk]
        out[start:start + len(block)] = ae_encode(
            model, _one_hot_matrix(block, alphabet)
        )
    return out


def train_autoencoder(data: IngestResult, cfg: PipelineConfig):
    """Split + train; returns (model, trace, splits)."""
    train_r, val_r, hull_r = split(data.records, cfg)
    x_train = _one_hot_matrix(train_r, data.alphabet)
    x_val = _one_hot_matrix(val_r, data.alphabet)
    model = init_model(x_train.shape[1], cfg.latent_dim, cfg.model_seed)
    tc = cfg.training
    train_cfg = TrainConfig(
        learning_rate=tc.learning_rate,
        batch_size=tc.batch_size,
        max_epochs=tc.max_epochs,
        adam_beta1=tc.adam_beta1,
        adam_beta2=tc.adam_beta2,
        adam_epsilon=tc.adam_epsilon,
        early_stop_patience=tc.early_stop_patience,
        rng_seed=cfg.shuffle_seed,
    )
    model, trace = train(model, x_train, x_val, train_cfg)
    log.info("training done: %d epochs, final train MSE %.5f",
             len(trace.train_mse), trace.train_mse[-1])
    return model, trace, (train_r, val_r, hull_r)


def _score_generated(mols: list[dict], cfg: PipelineConfig) -> int:
    """Fill scores in place; returns the number of scoring failures."""
    if not mols:
        return 0
    if cfg.scorer.backend == "proxy":
        proxy_cfg = load_proxy_config(cfg.scorer.proxy_config)
        for m in mols:
            m["score"] = proxy_score(m["desc"], proxy_cfg)
        return 0
    with ExternalScorer(cfg.scorer.command) as client:
        values = client.score_batch([m["smiles"] for m in mols])
    failed = 0
    for m, value in zip(mols, values):
        if math.isnan(value):
            m["score"] = None
            failed += 1
        else:
            m["score"] = value
    return failed


def run_generation(cfg: PipelineConfig, data: IngestResult | None = None,
                   model: MlpModel | None = None,
                   trace: TrainTrace | None = None) -> GenerationReport:
    """The full pipeline. ``data`` and ``model`` can be supplied to reuse
    an ingested corpus or a trained checkpoint; anything missing is built
    from the config."""
    if data is None:
        if not cfg.dataset:
            raise EmptySplit("config names no dataset")
        data = ingest(cfg.dataset, cfg)
    alphabet = data.alphabet
    train_r, val_r, hull_r = split(data.records, cfg)
    if model is None:
        model, trace, _ = train_autoencoder(data, cfg)

    # latent coordinates for the report (whole scored dataset)
    latents_all = _encode_records(model, data.records, alphabet)
    hull_ids = {id(r) for r in hull_r}
    hull_points = np.stack([
        z for r, z in zip(data.records, latents_all) if id(r) in hull_ids
    ])
    hull = build_hull(PointSet(hull_points))
    log.info("hull: %d vertices, %d facets, intrinsic dim %d",
             len(hull.vertices), len(hull.facets), hull.intrinsic_dim)

    sampler = sample_uniform if cfg.sample_mode == "interior" \
        else sample_surface
    samples = sampler(hull, cfg.n_samples, cfg.sampling_seed)

    # decode in chunks: latent -> one-hot-shaped output -> tokens -> graphs
    tables = DialectTables(alphabet)
    dataset_canon = data.canonical_set
    unique: dict[str, dict] = {}
    sample_mol_ids: list[int] = []  # per sample: unique-molecule id or -1
    order_of: dict[str, int] = {}
    n_empty = 0
    chunk = 4096
    for start in range(0, len(samples.points), chunk):
        z = samples.points[start:start + chunk]
        outs = ae_decode(model, z)
        token_mat = argmax_decode_batch(outs, alphabet)
        derived = derive_batch(token_mat, tables)
        for row_idx, (elements, bonds) in enumerate(derived):
            if not elements:
                n_empty += 1
                sample_mol_ids.append(-1)
                continue
            graph = MolecularGraph.from_heavy(elements, bonds)
            canon = canonical_form(graph)
            entry = unique.get(canon)
            if entry is None:
                tokens = TokenSequence(
                    tuple(int(t) for t in token_mat[row_idx])
                )
                entry = {
                    "selfies": detokenize(tokens, alphabet),
                    "smiles": emit_smiles(graph),
                    "canonical": canon,
                    "desc": descriptors(graph),
                    "cn_bonds": graph.count_bonds_between("C", "N"),
                    "co_bonds": graph.count_bonds_between("C", "O"),
                    "n_copies": 0,
                    "score": None,
                }
                order_of[canon] = len(unique)
                unique[canon] = entry
            entry["n_copies"] += 1
            sample_mol_ids.append(order_of[canon])

    mols = list(unique.values())
    n_score_failed = _score_generated(mols, cfg)

    generated = []
    for m in mols:
        if m["score"] is None:
            continue
        generated.append(GeneratedMolecule(
            selfies=m["selfies"],
            smiles=m["smiles"],
            canonical=m["canonical"],
            score=m["score"],
            novel=m["canonical"] not in dataset_canon,
            cn_bonds=m["cn_bonds"],
            co_bonds=m["co_bonds"],
            n_copies=m["n_copies"],
        ))
    generated.sort(key=lambda m: (-m.score, m.canonical))

    # per-sample latent rows carry the score of the decoded molecule
    score_of = {order_of[m["canonical"]]: m["score"] for m in mols}
    latent_rows = []
    for rec, z in zip(data.records, latents_all):
        label = "hull_vertex" if id(rec) in hull_ids else "dataset"
        latent_rows.append(
            (tuple(float(c) for c in z), float(rec.score), label, 0)
        )
    for mol_id, z in zip(sample_mol_ids, samples.points):
        score = score_of.get(mol_id)
        if score is None:
            continue
        flag = 1 if score > cfg.highlight_threshold else 0
        latent_rows.append(
            (tuple(float(c) for c in z), float(score), "generated", flag)
        )

    histogram = _histogram(
        [r.score for r in data.records if r.score is not None],
        [m.score for m in generated],
    )

    summary = {
        "n_sampled": int(cfg.n_samples),
        "n_decoded_empty": n_empty,
        "n_unique_pre_sanity": len(unique) + (1 if n_empty else 0),
        "n_unique": len(generated),
        "n_novel": sum(1 for m in generated if m.novel),
        "n_score_failed": n_score_failed,
        "n_duplicates": int(cfg.n_samples) - len(unique) - n_empty,
        "dataset_size": len(data.records),
        "train_size": len(train_r),
        "val_size": len(val_r),
        "hull_set_size": len(hull_r),
        "hull_vertices": int(len(hull.vertices)),
        "hull_intrinsic_dim": int(hull.intrinsic_dim),
        "hull_volume": float(hull.volume),
        "latent_dim": int(cfg.latent_dim),
        "notes": THRESHOLD_NOTE + "; sanity check = nonempty graph with "
                 "per-element valence satisfied (valence validity is "
                 "guaranteed by construction) followed by canonical-form "
                 "deduplication",
    }
    return GenerationReport(
        molecules=generated,
        summary=summary,
        histogram=histogram,
        latent_rows=latent_rows,
        hull=hull,
        trace=trace,
        config=cfg,
    )


def _histogram(dataset_scores, generated_scores, width: float = 0.02):
    n_bins = int(round(1.0 / width))
    counts_d = [0] * n_bins
    counts_g = [0] * n_bins
    for s in dataset_scores:
        counts_d[min(int(s / width), n_bins - 1)] += 1
    for s in generated_scores:
        counts_g[min(int(s / width), n_bins - 1)] += 1
    return [
        (round(i * width, 10), counts_d[i], counts_g[i])
        for i in range(n_bins)
    ]
