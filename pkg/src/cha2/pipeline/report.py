"""Report serialization: the generation run as plain data files.

    molecules.csv   one row per unique generated molecule
    histogram.csv   score distribution, dataset vs generated, bin width 0.02
    latent.csv      latent coordinates for hull-projection plots
    hull.txt        hull geometry (vertices + facets)
    summary.json    counts, config echo, interpretation notes

Rendering plots is out of scope; these files carry everything a plotting
script needs.
"""

from __future__ import annotations

import csv
import json
import os

from ..hullspace import write_hull
from .config import config_to_dict
from .run import GenerationReport

MOLECULE_FIELDS = ("selfies", "smiles", "canonical", "score", "novel",
                   "cn_bonds", "co_bonds", "n_copies")


def emit_report(report: GenerationReport, out_dir) -> None:
    os.makedirs(out_dir, exist_ok=True)

    with open(os.path.join(out_dir, "molecules.csv"), "w", newline="",
              encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(MOLECULE_FIELDS)
        for m in report.molecules:
            writer.writerow([
                m.selfies, m.smiles, m.canonical, repr(float(m.score)),
                int(m.novel), m.cn_bonds, m.co_bonds, m.n_copies,
            ])

    with open(os.path.join(out_dir, "histogram.csv"), "w", newline="",
              encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["bin_low", "count_dataset", "count_generated"])
        for bin_low, n_d, n_g in report.histogram:
            writer.writerow([repr(float(bin_low)), n_d, n_g])

    n_coords = report.config.latent_dim
    coord_names = ["x", "y", "z", "w", "v"][:n_coords]
    with open(os.path.join(out_dir, "latent.csv"), "w", newline="",
              encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(coord_names + ["score", "set", "highlight"])
        for coords, score, label, flag in report.latent_rows:
            writer.writerow(
                [repr(float(c)) for c in coords]
                + [repr(float(score)), label, flag]
            )

    if report.hull is not None:
        write_hull(report.hull, os.path.join(out_dir, "hull.txt"))

    summary = dict(report.summary)
    summary["config"] = config_to_dict(report.config)
    if report.trace is not None:
        summary["train_mse"] = report.trace.train_mse
        summary["val_mse"] = report.trace.val_mse
    with open(os.path.join(out_dir, "summary.json"), "w",
              encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2, sort_keys=True)
        fh.write("\n")


def render_summary(report_dir) -> dict:
    """Re-derive headline counts from an emitted report directory."""
    path = os.path.join(report_dir, "molecules.csv")
    n_unique = n_novel = 0
    best: tuple[float, str] | None = None
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            n_unique += 1
            if row["novel"] == "1":
                n_novel += 1
            score = float(row["score"])
            if best is None or score > best[0]:
                best = (score, row["smiles"])
    out = {"n_unique": n_unique, "n_novel": n_novel}
    if best:
        out["best_score"], out["best_smiles"] = best
    summary_path = os.path.join(report_dir, "summary.json")
    if os.path.exists(summary_path):
        with open(summary_path, encoding="utf-8") as fh:
            stored = json.load(fh)
        out["n_sampled"] = stored.get("n_sampled")
        out["n_decoded_empty"] = stored.get("n_decoded_empty")
    return out
