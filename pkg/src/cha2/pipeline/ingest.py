"""Dataset ingestion: SMILES(+score) CSV -> token sequences + metadata.

The CSV needs a header with a ``smiles`` column; a ``qed`` column is
optional and holes are filled by the configured scorer. Each molecule is
parsed, re-emitted as a token string (round-trip checked against the
source graph), and dropped with a log entry when longer than the fixed
sequence length. A run aborts only when more than 10% of the rows fail
to parse or emit.
"""

from __future__ import annotations

import csv
import logging
import math
from dataclasses import dataclass

from ..errors import DataError, MalformedCsv
from ..molgraph import canonical_form, descriptors, emit_smiles, parse_smiles
from ..molgraph.descriptors import DescriptorVector
from ..scoring import ExternalScorer, load_proxy_config, proxy_score
from ..selfies_codec import (
    MAX_LEN,
    Alphabet,
    TokenSequence,
    build_alphabet,
    derive_molecule,
    graph_to_selfies,
    tokenize,
)
from .config import PipelineConfig, ScorerConfig

log = logging.getLogger(__name__)

FAILURE_CEILING = 0.10


@dataclass
class MoleculeRecord:
    smiles: str          # normalized (emitted) form
    selfies: str
    tokens: TokenSequence
    canonical: str
    score: float | None
    desc: DescriptorVector


@dataclass
class IngestResult:
    records: list[MoleculeRecord]
    alphabet: Alphabet
    n_rows: int
    n_dropped_long: int
    n_failed: int
    failures: list[tuple[int, str]]  # (row number, reason)

    @property
    def canonical_set(self) -> set[str]:
        return {r.canonical for r in self.records}


def ingest(path, cfg: PipelineConfig | None = None) -> IngestResult:
    """Read a dataset CSV; returns records with scores filled."""
    cfg = cfg or PipelineConfig()
    rows = _read_csv(path)

    records: list[MoleculeRecord] = []
    failures: list[tuple[int, str]] = []
    n_dropped_long = 0
    selfies_strings: list[str] = []

    for row_no, (smiles_in, score) in enumerate(rows, start=2):
        try:
            graph = parse_smiles(smiles_in)
            if graph.is_empty:
                raise DataError("empty molecule")
            symbols = graph_to_selfies(graph)
            if len(symbols) > MAX_LEN:
                n_dropped_long += 1
                continue
            selfies = "".join(symbols)
            canon = canonical_form(graph)
            records.append(MoleculeRecord(
                smiles=emit_smiles(graph),
                selfies=selfies,
                tokens=None,  # filled after the alphabet is built
                canonical=canon,
                score=score,
                desc=descriptors(graph),
            ))
            selfies_strings.append(selfies)
        except DataError as err:
            failures.append((row_no, f"{type(err).__name__}: {err}"))

    n_rows = len(rows)
    if n_rows and len(failures) / n_rows > FAILURE_CEILING:
        raise MalformedCsv(
            f"{len(failures)}/{n_rows} rows failed "
            f"(> {FAILURE_CEILING:.0%}); first: {failures[0]}"
        )
    if failures:
        log.warning("ingest: %d rows failed, first: %s",
                    len(failures), failures[0])
    if n_dropped_long:
        log.info("ingest: dropped %d molecules over %d tokens",
                 n_dropped_long, MAX_LEN)

    alphabet = build_alphabet(selfies_strings)
    for rec in records:
        rec.tokens = tokenize(rec.selfies, alphabet)

    result = IngestResult(
        records=records,
        alphabet=alphabet,
        n_rows=n_rows,
        n_dropped_long=n_dropped_long,
        n_failed=len(failures),
        failures=failures,
    )
    fill_scores(result.records, cfg.scorer)
    return result



def _read_csv(path) -> list[tuple[str, float | None]]:
    out: list[tuple[str, float | None]] = []
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None or "smiles" not in reader.fieldnames:
            raise MalformedCsv("CSV needs a header with a 'smiles' column")
        has_qed = "qed" in reader.fieldnames
        for row in reader:
            smiles = (row.get("smiles") or "").strip()
            if not smiles:
                raise MalformedCsv(f"blank smiles cell near line {len(out)+2}")
            score: float | None = None
            if has_qed:
                cell = (row.get("qed") or "").strip()
                if cell:
                    try:
                        score = float(cell)
                    except ValueError:
                        raise MalformedCsv(
                            f"bad qed value {cell!r} near line {len(out)+2}"
                        ) from None
            out.append((smiles, score))
    return out


def fill_scores(records: list[MoleculeRecord], scorer: ScorerConfig) -> None:
    """Fill in missing scores with the configured backend."""
    missing = [r for r in records if r.score is None]
    if not missing:
        return
    if scorer.backend == "proxy":
        cfg = load_proxy_config(scorer.proxy_config)
        for rec in missing:
            rec.score = proxy_score(rec.desc, cfg)
    else:
        with ExternalScorer(scorer.command) as client:
            values = client.score_batch([r.smiles for r in missing])
        kept = 0
        for rec, value in zip(missing, values):
            if math.isnan(value):
                rec.score = None
                kept += 1
            else:
                rec.score = value
        if kept:
            log.warning("scorer failed on %d molecules; they are dropped "
                        "from scored splits", kept)



def verify_round_trip(rec: MoleculeRecord, alphabet: Alphabet) -> bool:
    """True iff deriving the record's tokens reproduces its graph."""
    return canonical_form(
        derive_molecule(rec.tokens, alphabet)
    ) == rec.canonical
