import csv
import json
import subprocess
import sys
from pathlib import Path

import pytest

from cha2.errors import EmptySplit, MalformedCsv, UsageError
from cha2.autoencoder.train import TrainConfig
from cha2.pipeline import (
    PipelineConfig,
    config_from_dict,
    emit_report,
    ingest,
    load_corpus,
    run_generation,
    save_corpus,
    split,
)
from cha2.pipeline.ingest import MoleculeRecord, verify_round_trip
from cha2.pipeline.report import render_summary


def smoke_config(corpus_path, **overrides) -> PipelineConfig:
    base = dict(
        dataset=str(corpus_path),
        n_samples=300,
        latent_dim=3,
        rng_seed=11,
        training=TrainConfig(batch_size=32, max_epochs=12,
                             early_stop_patience=4, rng_seed=0),
    )
    base.update(overrides)
    return PipelineConfig(**base)


def fake_records(scores):
    return [
        MoleculeRecord(smiles=f"m{i}", selfies="", tokens=None,
                       canonical=f"c{i}", score=s, desc=None)
        for i, s in enumerate(scores)
    ]


class TestSplit:
    def test_documented_example(self):
        cfg = PipelineConfig()
        train, val, hull = split(
            fake_records([0.3, 0.45, 0.6, 0.7]), cfg
        )
        assert [r.score for r in train] == [0.6, 0.7]
        assert [r.score for r in val] == [0.45]
        assert [r.score for r in hull] == [0.7]

    def test_boundary_equality_is_excluded(self):
        cfg = PipelineConfig()
        train, val, hull = split(
            fake_records([0.5, 0.51, 0.4, 0.66]), cfg
        )
        scores = [r.score for r in train]
        assert 0.5 not in scores and 0.51 in scores
        assert [r.score for r in val] == [0.4]

    def test_empty_validation_is_allowed(self):
        cfg = PipelineConfig()
        train, val, hull = split(fake_records([0.9, 0.9, 0.9]), cfg)
        assert val == [] and len(train) == 3

    def test_empty_train_or_hull_raises(self):
        cfg = PipelineConfig()
        with pytest.raises(EmptySplit):
            split(fake_records([0.1, 0.2]), cfg)
        with pytest.raises(EmptySplit):
            split(fake_records([0.55, 0.6]), cfg)

    def test_partition_covers_scored_input(self):
        cfg = PipelineConfig()
        scores = [i / 100 for i in range(100)]
        records = fake_records(scores)
        train, val, hull = split(records, cfg)
        discarded = [r for r in records
                     if r not in train and r not in val]
        assert len(train) + len(val) + len(discarded) == len(records)
        assert all(r in train for r in hull)


class TestConfig:
    def test_defaults_match_paper_values(self):
        cfg = PipelineConfig()
        assert cfg.max_len == 19
        assert cfg.train_min_score == 0.5
        assert cfg.val_score_range == (0.4, 0.5)
        assert cfg.hull_min_score == 0.65
        assert cfg.n_samples == 100000
        assert cfg.latent_dim == 3
        assert cfg.highlight_threshold == 0.7

    def test_invalid_threshold_order(self):
        with pytest.raises(UsageError):
            PipelineConfig(train_min_score=0.3)

    def test_unknown_keys_rejected(self):
        with pytest.raises(UsageError):
            config_from_dict({"n_sampels": 10})


class TestIngest:
    def test_reads_scores_and_tokens(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("smiles,qed\nCCO,0.41\nC1CC1,0.30\n")
        result = ingest(path)
        assert len(result.records) == 2
        assert result.records[0].score == 0.41
        assert verify_round_trip(result.records[0], result.alphabet)

    def test_too_long_rows_dropped_and_counted(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text(f"smiles,qed\nCCO,0.5\n{'C' * 25},0.5\n")
        result = ingest(path)
        assert len(result.records) == 1
        assert result.n_dropped_long == 1

    def test_missing_scores_filled_by_proxy(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("smiles\nCCO\nCCC\n")
        result = ingest(path)
        assert all(r.score is not None for r in result.records)
        assert all(0 < r.score <= 1 for r in result.records)

    def test_failure_ceiling(self, tmp_path):
        rows = ["smiles,qed"] + ["CS,0.5"] * 3 + ["CCO,0.5"]
        path = tmp_path / "d.csv"
        path.write_text("\n".join(rows) + "\n")
        with pytest.raises(MalformedCsv):
            ingest(path)

    def test_few_failures_tolerated(self, tmp_path):
        rows = ["smiles,qed"] + ["CCO,0.5"] * 20 + ["CS,0.5"]
        path = tmp_path / "d.csv"
        path.write_text("\n".join(rows) + "\n")
        result = ingest(path)
        assert result.n_failed == 1
        assert len(result.records) == 20

    def test_missing_header(self, tmp_path):
        path = tmp_path / "d.csv"
        path.write_text("structure\nCCO\n")
        with pytest.raises(MalformedCsv):
            ingest(path)

    def test_round_trip_oracle_on_corpus(self, corpus_path):
        result = ingest(corpus_path)
        assert result.n_failed == 0
        for rec in result.records[:500]:
            assert verify_round_trip(rec, result.alphabet)


class TestCorpusFile:
    def test_save_load_round_trip(self, tmp_path, corpus_path):
        result = ingest(corpus_path)
        path = tmp_path / "corpus.bin"
        save_corpus(result, path)
        loaded = load_corpus(path)
        assert loaded.alphabet == result.alphabet
        assert len(loaded.records) == len(result.records)
        for a, b in zip(result.records, loaded.records):
            assert a.tokens == b.tokens
            assert a.score == b.score
            assert a.canonical == b.canonical
            assert a.smiles == b.smiles


@pytest.fixture(scope="module")
def small_report(corpus_path):
    return run_generation(smoke_config(corpus_path))


class TestRunGeneration:
    def test_summary_counts_consistent(self, small_report):
        s = small_report.summary
        assert s["n_unique"] <= s["n_sampled"]
        assert s["n_novel"] <= s["n_unique"]
        assert s["n_unique"] == len(small_report.molecules)
        assert s["n_sampled"] == 300

    def test_every_molecule_valence_valid(self, small_report, alphabet):
        from cha2.selfies_codec import derive_molecule, tokenize

        for m in small_report.molecules:
            g = derive_molecule(
                tokenize(m.selfies, alphabet), alphabet
            )
            g.validate()
            assert not g.is_empty

    def test_novel_flags_match_dataset(self, small_report, corpus_path):
        dataset_canon = {
            r.canonical for r in ingest(corpus_path).records
        }
        for m in small_report.molecules:
            assert m.novel == (m.canonical not in dataset_canon)

    def test_histogram_sums_to_unique(self, small_report):
        total = sum(g for _, _, g in small_report.histogram)
        assert total == small_report.summary["n_unique"]

    def test_hull_discipline(self, small_report):
        from cha2.hullspace import contains_batch
        import numpy as np

        hull = small_report.hull
        generated = np.array([
            coords for coords, _, label, _ in small_report.latent_rows
            if label == "generated"
        ])
        assert contains_batch(
            hull, generated, tol=1e-9 * hull.scale
        ).all()

    def test_zero_samples(self, corpus_path):
        report = run_generation(
            smoke_config(corpus_path, n_samples=0)
        )
        assert report.summary["n_unique"] == 0
        assert report.molecules == []
        assert sum(g for _, _, g in report.histogram) == 0


class TestEmitReport:
    def test_files_written_and_consistent(self, small_report, tmp_path):
        emit_report(small_report, tmp_path / "out")
        out = tmp_path / "out"
        names = {p.name for p in out.iterdir()}
        assert names == {"molecules.csv", "histogram.csv", "latent.csv",
                         "hull.txt", "summary.json"}
        rows = list(csv.DictReader(open(out / "molecules.csv")))
        assert len(rows) == small_report.summary["n_unique"]
        hist = list(csv.DictReader(open(out / "histogram.csv")))
        assert sum(int(r["count_generated"]) for r in hist) == len(rows)
        summary = json.loads((out / "summary.json").read_text())
        assert summary["n_unique"] == len(rows)
        assert "config" in summary

    def test_highlight_flag(self, small_report, tmp_path):
        emit_report(small_report, tmp_path / "out")
        rows = list(csv.DictReader(open(tmp_path / "out" / "latent.csv")))
        for row in rows:
            if row["set"] == "generated":
                flagged = int(row["highlight"]) == 1
                assert flagged == (float(row["score"]) > 0.7)

    def test_empty_report_has_headers(self, corpus_path, tmp_path):
        report = run_generation(smoke_config(corpus_path, n_samples=0))
        emit_report(report, tmp_path / "out")
        rows = open(tmp_path / "out" / "molecules.csv").read().splitlines()
        assert rows[0].startswith("selfies,")
        assert len(rows) == 1

    def test_render_summary_round_trip(self, small_report, tmp_path):
        emit_report(small_report, tmp_path / "out")
        summary = render_summary(tmp_path / "out")
        assert summary["n_unique"] == small_report.summary["n_unique"]
        assert summary["n_novel"] == small_report.summary["n_novel"]


class TestCli:
    def run_cli(self, *args):
        return subprocess.run(
            [sys.executable, "-m", "cha2.pipeline.cli", *args],
            capture_output=True, text=True,
        )

    def test_usage_error_exit_code(self):
        proc = self.run_cli("generate")  # missing required flags
        assert proc.returncode == 1

    def test_data_error_exit_code(self, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"dataset": "/nonexistent.csv"}))
        proc = self.run_cli("train", "--config", str(cfg),
                            "--checkpoint", str(tmp_path / "m.cha2"))
        assert proc.returncode == 2

    def test_full_cli_flow(self, tmp_path, corpus_path):
        corpus = tmp_path / "corpus.bin"
        proc = self.run_cli("ingest", "--in", str(corpus_path),
                            "--out", str(corpus))
        assert proc.returncode == 0, proc.stderr
        cfg_path = tmp_path / "cfg.json"
        cfg_path.write_text(json.dumps({
            "corpus": str(corpus),
            "n_samples": 200,
            "rng_seed": 3,
            "training": {"batch_size": 32, "max_epochs": 6,
                         "early_stop_patience": 2},
        }))
        ckpt = tmp_path / "model.cha2"
        proc = self.run_cli("train", "--config", str(cfg_path),
                            "--checkpoint", str(ckpt))
        assert proc.returncode == 0, proc.stderr
        assert ckpt.exists()
        out_dir = tmp_path / "report"
        proc = self.run_cli("generate", "--config", str(cfg_path),
                            "--checkpoint", str(ckpt),
                            "--out", str(out_dir))
        assert proc.returncode == 0, proc.stderr
        assert (out_dir / "molecules.csv").exists()
        proc = self.run_cli("report", "--in", str(out_dir))
        assert proc.returncode == 0
        assert "n_unique" in proc.stdout
