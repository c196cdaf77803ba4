"""Token alphabet, tokenizer, and one-hot codec for the molecular string
dialect.

Dialect (full token inventory):

    atom tokens     [C] [=C] [#C] [N] [=N] [#N] [O] [=O] [F]
    control tokens  [Ring1] [Branch1] [=Branch1] [#Branch1]
    padding         [nop]

An alphabet is the lexicographically sorted union of the tokens observed in
a dataset and the mandatory control/pad tokens, with [nop] forced last.

A token's *overload value* -- the number it encodes when it follows a
branch or ring token -- comes from the fixed dialect-wide index ordering
``OVERLOAD_ORDER`` below, NOT from the token's position in a particular
alphabet. Keeping the ordering fixed makes sequence semantics independent
of which data-derived sub-alphabet tokenized them, so emitted strings
round-trip under any alphabet containing their tokens. The ordering keeps
the relative order tokens have in the published string grammar, closes the
gaps left by unsupported tokens, and appends the dialect's remaining
tokens lexicographically, [nop] last.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from ..errors import MalformedToken, TooLong, UnknownToken

MAX_LEN = 19

PAD = "[nop]"
CONTROL_TOKENS = ("[Ring1]", "[Branch1]", "[=Branch1]", "[#Branch1]")

# fixed numeric overload table for branch lengths and ring distances
OVERLOAD_ORDER = (
    "[C]", "[Ring1]", "[Branch1]", "[=Branch1]", "[#Branch1]",
    "[O]", "[N]", "[=N]", "[=C]", "[#C]",
    "[#N]", "[=O]", "[F]", "[nop]",
)
OVERLOAD_VALUE = {s: i for i, s in enumerate(OVERLOAD_ORDER)}


def overload_value(symbol: str) -> int:
    """Numeric value a token carries in branch-length / ring-distance
    position; fixed per dialect, independent of the alphabet."""
    return OVERLOAD_VALUE[symbol]

_ATOM_TOKEN = re.compile(r"\[([=#]?)([CNOF])\]")
_TOKEN_SPLIT = re.compile(r"\[[^\[\]]*\]")

# derivation-time token classes
KIND_ATOM = 0
KIND_BRANCH = 1
KIND_RING = 2
KIND_NOP = 3

_BOND_PREFIX = {"": 1, "=": 2, "#": 3}


def token_kind(symbol: str) -> tuple[int, str | None, int]:
    """Classify a dialect token: (kind, element or None, bond order)."""
    if symbol == PAD:
        return KIND_NOP, None, 0
    if symbol == "[Ring1]":
        return KIND_RING, None, 1
    if symbol in ("[Branch1]", "[=Branch1]", "[#Branch1]"):
        prefix = symbol[1:-len("Branch1]")]
        return KIND_BRANCH, None, _BOND_PREFIX[prefix]
    m = _ATOM_TOKEN.fullmatch(symbol)
    if m:
        element, order = m.group(2), _BOND_PREFIX[m.group(1)]
        if order <= {"C": 4, "N": 3, "O": 2, "F": 1}[element]:
            return KIND_ATOM, element, order
    raise UnknownToken(f"token {symbol!r} is not part of the dialect")


def split_tokens(s: str) -> list[str]:
    """Split a molecule string into bracketed tokens.

    Raises MalformedToken if any character falls outside [...] groups.
    """
    tokens = _TOKEN_SPLIT.findall(s)
    if "".join(tokens) != s:
        raise MalformedToken(f"characters outside bracket groups in {s!r}")
    return tokens


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    index_map: dict[str, int] = field(compare=False, repr=False)

    def __len__(self) -> int:
        return len(self.symbols)

    @property
    def pad_index(self) -> int:
        return len(self.symbols) - 1

    def index(self, symbol: str) -> int:
        try:
            return self.index_map[symbol]
        except KeyError:
            raise UnknownToken(f"token {symbol!r} not in alphabet") from None

    @staticmethod
    def from_symbols(symbols) -> "Alphabet":
        symbols = tuple(symbols)
        if symbols.count(PAD) != 1 or symbols[-1] != PAD:
            raise MalformedToken(f"{PAD} must appear exactly once, last")
        if len(set(symbols)) != len(symbols):
            raise MalformedToken("alphabet symbols must be unique")
        for sym in symbols:
            token_kind(sym)  # validates dialect membership
        return Alphabet(symbols, {s: i for i, s in enumerate(symbols)})


def build_alphabet(dataset) -> Alphabet:
    """Alphabet over a dataset of molecule strings: sorted union of observed
    tokens and the mandatory control/pad set, [nop] last. Deterministic.
    Out-of-dialect tokens in the data are a hard error."""
    observed: set[str] = set(CONTROL_TOKENS)
    for s in dataset:
        for tok in split_tokens(s):
            token_kind(tok)
            observed.add(tok)
    observed.discard(PAD)
    ordered = sorted(observed) + [PAD]
    return Alphabet.from_symbols(ordered)


def full_alphabet() -> Alphabet:
    """Alphabet containing the entire dialect (9 atoms, 4 controls, pad)."""
    atoms = [f"[{p}{el}]" for el in "CNOF" for p in ("", "=", "#")
             if not (el == "O" and p == "#") and not (el == "F" and p)]
    return build_alphabet(["".join(atoms)])


@dataclass(frozen=True)
class TokenSequence:
    """Fixed-length sequence of alphabet indices, right-padded with [nop]."""

    indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.indices)


def tokenize(s: str, alphabet: Alphabet) -> TokenSequence:
    """Indices of each token of ``s``, right-padded with [nop] to MAX_LEN."""
    tokens = split_tokens(s)
    if len(tokens) > MAX_LEN:
        raise TooLong(f"{len(tokens)} tokens exceed the maximum {MAX_LEN}")
    idx = [alphabet.index(t) for t in tokens]
    idx.extend([alphabet.pad_index] * (MAX_LEN - len(idx)))
    return TokenSequence(tuple(idx))


def detokenize(t: TokenSequence, alphabet: Alphabet) -> str:
    """Molecule string for a sequence, with trailing padding dropped."""
    symbols = [alphabet.symbols[i] for i in t.indices]
    while symbols and symbols[-1] == PAD:
        symbols.pop()
    return "".join(symbols)


def one_hot(t: TokenSequence, alphabet: Alphabet) -> np.ndarray:
    """Binary MAX_LEN x len(alphabet) matrix; row-major flattening is the
    network input ordering."""
    m = np.zeros((MAX_LEN, len(alphabet)), dtype=np.float64)
    m[np.arange(MAX_LEN), t.indices] = 1.0
    return m


def argmax_decode(m: np.ndarray, alphabet: Alphabet) -> TokenSequence:
    """Per-row argmax (ties to the lowest column); everything after the
    first [nop] is forced to [nop] so decoder outputs are well-formed."""
    if m.shape != (MAX_LEN, len(alphabet)):
        raise ValueError(
            f"expected shape {(MAX_LEN, len(alphabet))}, got {m.shape}"
        )
    idx = np.argmax(m, axis=1)
    pad = alphabet.pad_index
    hits = np.flatnonzero(idx == pad)
    if hits.size:
        idx[hits[0]:] = pad
    return TokenSequence(tuple(int(i) for i in idx))


def argmax_decode_batch(batch: np.ndarray, alphabet: Alphabet) -> np.ndarray:
    """Vectorized argmax decoding of (n, MAX_LEN, |alphabet|) or flattened
    (n, MAX_LEN * |alphabet|) arrays: returns (n, MAX_LEN) int32 indices with
    the [nop] tail rule applied."""
    n = batch.shape[0]
    mats = batch.reshape(n, MAX_LEN, len(alphabet))
    idx = np.argmax(mats, axis=2).astype(np.int32)
    pad = alphabet.pad_index
    is_pad = idx == pad
    seen_pad = np.cumsum(is_pad, axis=1) > 0
    idx[seen_pad] = pad
    return idx
