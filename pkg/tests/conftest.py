import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))  # test-local helpers

from cha2.selfies_codec import full_alphabet

CORPUS = Path(__file__).parent.parent / "src" / "cha2" / "data" / "mini_qm9.csv"
SIDECAR = Path(__file__).parent.parent / "sidecar"


@pytest.fixture(scope="session")
def alphabet():
    return full_alphabet()


@pytest.fixture(scope="session")
def corpus_path():
    assert CORPUS.exists(), "bundled mini corpus missing"
    return CORPUS


def random_token_matrix(rng: np.random.Generator, n: int, alphabet,
                        include_pad=True) -> np.ndarray:
    """Random (n, 19) matrix of well-formed sequences: non-pad body of
    random length followed by the [nop] tail."""
    high = len(alphabet) - 1  # body never contains [nop]
    mat = rng.integers(0, high, size=(n, 19)).astype(np.int32)
    if include_pad:
        lengths = rng.integers(1, 20, size=n)
        for i in range(n):
            mat[i, lengths[i]:] = alphabet.pad_index
    return mat


def raw_token_matrix(rng: np.random.Generator, n: int, alphabet) -> np.ndarray:
    """Uniformly random indices with no well-formedness constraint
    ([nop] can appear anywhere); exercises the robustness contract."""
    return rng.integers(0, len(alphabet), size=(n, 19)).astype(np.int32)


def sidecar_command() -> list[str] | None:
    """argv for the scorer sidecar when it has been built, else None."""
    entry = SIDECAR / "dist" / "main.js"
    if entry.exists():
        return ["node", str(entry)]
    return None
