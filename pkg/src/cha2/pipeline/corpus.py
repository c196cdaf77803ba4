"""Binary corpus: the ingested dataset frozen as token sequences plus
scores, so training runs skip CSV parsing and SMILES round-trips.

Layout (little-endian):

    magic     8 bytes  "CHA2CORP"
    version   u32      currently 1
    alphabet  u32 count, then per symbol u32 byte length + UTF-8 bytes
    n_records u32
    record:
        tokens    u16 * 19 (alphabet indices)
        score     f64
        smiles    u32 length + UTF-8 bytes
        canonical u32 length + UTF-8 bytes
"""

from __future__ import annotations

import struct

from ..errors import BadCheckpoint
from ..molgraph import descriptors
from ..selfies_codec import (
    MAX_LEN,
    Alphabet,
    TokenSequence,
    derive_molecule,
    detokenize,
)
from .ingest import IngestResult, MoleculeRecord

MAGIC = b"CHA2CORP"
VERSION = 1


def save_corpus(result: IngestResult, path) -> None:
    with open(path, "wb") as fh:
        fh.write(MAGIC)
        fh.write(struct.pack("<I", VERSION))
        fh.write(struct.pack("<I", len(result.alphabet.symbols)))
        for sym in result.alphabet.symbols:
            raw = sym.encode("utf-8")
            fh.write(struct.pack("<I", len(raw)))
            fh.write(raw)
        scored = [r for r in result.records if r.score is not None]
        fh.write(struct.pack("<I", len(scored)))
        for rec in scored:
            fh.write(struct.pack(f"<{MAX_LEN}H", *rec.tokens.indices))
            fh.write(struct.pack("<d", rec.score))
            for text in (rec.smiles, rec.canonical):
                raw = text.encode("utf-8")
                fh.write(struct.pack("<I", len(raw)))
                fh.write(raw)


def load_corpus(path) -> IngestResult:
    with open(path, "rb") as fh:
        data = fh.read()
    pos = 0

    def take(n: int) -> bytes:
        nonlocal pos
        if pos + n > len(data):
            raise BadCheckpoint("truncated corpus file")
        chunk = data[pos:pos + n]
        pos += n
        return chunk

    if take(8) != MAGIC:
        raise BadCheckpoint("not a corpus file")
    (version,) = struct.unpack("<I", take(4))
    if version != VERSION:
        raise BadCheckpoint(f"unsupported corpus version {version}")
    (n_symbols,) = struct.unpack("<I", take(4))
    symbols = []
    for _ in range(n_symbols):
        (length,) = struct.unpack("<I", take(4))
        symbols.append(take(length).decode("utf-8"))
    alphabet = Alphabet.from_symbols(symbols)
    (n_records,) = struct.unpack("<I", take(4))
    records = []
    for _ in range(n_records):
        idx = struct.unpack(f"<{MAX_LEN}H", take(2 * MAX_LEN))
        (score,) = struct.unpack("<d", take(8))
        (length,) = struct.unpack("<I", take(4))
        smiles = take(length).decode("utf-8")
        (length,) = struct.unpack("<I", take(4))
        canonical = take(length).decode("utf-8")
        tokens = TokenSequence(idx)
        graph = derive_molecule(tokens, alphabet)
        records.append(MoleculeRecord(
            smiles=smiles,
            selfies=detokenize(tokens, alphabet),
            tokens=tokens,
            canonical=canonical,
            score=score,
            desc=descriptors(graph),
        ))
    if pos != len(data):
        raise BadCheckpoint("trailing bytes in corpus file")
    return IngestResult(
        records=records,
        alphabet=alphabet,
        n_rows=n_records,
        n_dropped_long=0,
        n_failed=0,
        failures=[],
    )
