from .alphabet import (
    MAX_LEN,
    OVERLOAD_ORDER,
    PAD,
    Alphabet,
    TokenSequence,
    argmax_decode,
    argmax_decode_batch,
    build_alphabet,
    detokenize,
    full_alphabet,
    one_hot,
    overload_value,
    split_tokens,
    tokenize,
)
from .derive import DialectTables, derive_molecule
from .emit import graph_to_selfies
from .kernel import derive_batch, kernel_name

__all__ = [
    "MAX_LEN",
    "OVERLOAD_ORDER",
    "PAD",
    "Alphabet",
    "TokenSequence",
    "argmax_decode",
    "argmax_decode_batch",
    "build_alphabet",
    "detokenize",
    "derive_batch",
    "derive_molecule",
    "DialectTables",
    "full_alphabet",
    "graph_to_selfies",
    "kernel_name",
    "one_hot",
    "overload_value",
    "split_tokens",
    "tokenize",
]
