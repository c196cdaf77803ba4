#!/usr/bin/env python3
"""Build the bundled mini corpus: a QM9-flavored SMILES+qed CSV.

Random token sequences are decoded into valence-valid graphs (validity by
construction), deduplicated, filtered to the fixed token budget, scored,
and stratified so every pipeline threshold keeps a healthy population.

Scoring backend:
  default            built-in descriptor proxy
  --scorer-cmd ...   external sidecar speaking the scorer wire protocol
                     (ground-truth QED); this is the recipe used for the
                     corpus shipped in src/cha2/data/

Usage:
  python tools/make_corpus.py --out src/cha2/data/mini_qm9.csv --n 2000
  python tools/make_corpus.py --out ... --scorer-cmd node sidecar/dist/main.js
"""

from __future__ import annotations

import argparse
import csv
import math
import sys

import numpy as np

from cha2.molgraph import canonical_form, descriptors, emit_smiles
from cha2.molgraph.graph import MolecularGraph
from cha2.scoring import ExternalScorer, load_proxy_config, proxy_score
from cha2.selfies_codec import (
    MAX_LEN,
    DialectTables,
    derive_batch,
    full_alphabet,
    graph_to_selfies,
)

# target score strata: (low, high, share of corpus)
STRATA = [
    (0.00, 0.40, 0.30),
    (0.40, 0.50, 0.25),
    (0.50, 0.65, 0.30),
    (0.65, 1.01, 0.15),
]


SCAFFOLDS = [
    "c1ccccc1", "c1ccncc1", "c1ccoc1", "c1cc[nH]c1", "c1ccc2ccccc2c1",
    "C1CCNCC1", "C1CCOCC1", "C1CCNC1", "C1CCCCC1", "c1cnco1", "c1cncn1",
]

SUBSTITUENTS = [
    ["C"], ["C", "C"], ["O"], ["N"], ["F"], ["C", "O"], ["C", "N"],
    ["C", "C", "O"], ["C", "C", "N"], ["C", "F"],
]


def _decorated(rng, scaffold_smiles: str) -> MolecularGraph | None:
    """Attach 1-3 short substituent chains to hydrogen-bearing positions
    of a ring core; drug-likeness mass concentrates around such shapes."""
    from cha2.molgraph import parse_smiles

    base = parse_smiles(scaffold_smiles)
    elements = [a.element for a in base.atoms]
    bonds = list(base.bonds)
    free = {
        i: a.implicit_h for i, a in enumerate(base.atoms) if a.implicit_h
    }
    for _ in range(int(rng.integers(1, 4))):
        sites = [i for i, h in free.items() if h > 0]
        if not sites:
            break
        site = int(sites[rng.integers(0, len(sites))])
        free[site] -= 1
        prev = site
        for el in SUBSTITUENTS[rng.integers(0, len(SUBSTITUENTS))]:
            idx = len(elements)
            elements.append(el)
            bonds.append((prev, idx, 1))
            prev = idx
    try:
        return MolecularGraph.from_heavy(elements, bonds)
    except Exception:
        return None


def random_molecules(seed: int, n_batches: int, batch: int = 4096):
    """Yield unique molecules: random token decodes plus ring scaffolds
    decorated with short substituents."""
    alphabet = full_alphabet()
    tables = DialectTables(alphabet)
    rng = np.random.default_rng(seed)
    seen: set[str] = set()

    def admit(graph):
        if not 4 <= len(graph) <= 15:
            return None
        canon = canonical_form(graph)
        if canon in seen:
            return None
        seen.add(canon)
        try:
            tokens = graph_to_selfies(graph)
        except Exception:
            return None
        if len(tokens) > MAX_LEN:
            return None
        return graph

    for _ in range(n_batches):
        lengths = rng.integers(5, MAX_LEN + 1, size=batch)
        mat = rng.integers(0, len(alphabet) - 1, size=(batch, MAX_LEN))
        for i, row in enumerate(mat):
            row[lengths[i]:] = alphabet.pad_index
        for elements, bonds in derive_batch(mat, tables):
            graph = admit(MolecularGraph.from_heavy(elements, bonds))
            if graph is not None:
                yield graph
        # one decorated-scaffold round per random round
        for _ in range(batch // 4):
            scaffold = SCAFFOLDS[rng.integers(0, len(SCAFFOLDS))]
            decorated = _decorated(rng, scaffold)
            if decorated is None:
                continue
            graph = admit(decorated)
            if graph is not None:
                yield graph


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--n", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=20240901)
    ap.add_argument("--batches", type=int, default=40)
    ap.add_argument("--scorer-cmd", nargs=argparse.REMAINDER, default=None)
    args = ap.parse_args()

    molecules = list(random_molecules(args.seed, args.batches))
    smiles = [emit_smiles(g) for g in molecules]
    print(f"candidate pool: {len(molecules)} unique molecules")

    if args.scorer_cmd:
        with ExternalScorer(args.scorer_cmd) as client:
            scores = client.score_batch(smiles)
    else:
        cfg = load_proxy_config()
        scores = [proxy_score(descriptors(g), cfg) for g in molecules]

    pool = [
        (smi, score) for smi, score in zip(smiles, scores)
        if not math.isnan(score)
    ]
    rng = np.random.default_rng(args.seed + 1)
    chosen: list[tuple[str, float]] = []
    for lo, hi, share in STRATA:
        want = int(round(args.n * share))
        members = [p for p in pool if lo <= p[1] < hi]
        if len(members) < want:
            print(f"stratum [{lo},{hi}): only {len(members)} of {want}",
                  file=sys.stderr)
            want = len(members)
        picks = rng.choice(len(members), size=want, replace=False)
        chosen.extend(members[i] for i in sorted(picks))

    if len(chosen) < args.n:  # top up from the mid-range strata
        used = set(chosen)
        extras = [p for p in pool if 0.40 <= p[1] < 0.65 and p not in used]
        picks = rng.choice(len(extras), size=min(args.n - len(chosen),
                                                 len(extras)), replace=False)
        chosen.extend(extras[i] for i in sorted(picks))

    chosen.sort()
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["smiles", "qed"])
        for smi, score in chosen:
            writer.writerow([smi, f"{score:.6f}"])
    print(f"wrote {len(chosen)} molecules -> {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
