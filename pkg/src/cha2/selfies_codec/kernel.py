"""Batch derivation with an optional compiled fast path.

The compiled kernel (``_derive_cy``) implements the same automaton as
:mod:`.derive` over int32 token matrices. Selection happens at import:
the extension is used when it built successfully and the environment
variable ``CHA2_PURE_PYTHON`` is unset. Both paths are exercised against
each other in the test suite and the benchmark under ``benchmarks/``.
"""

from __future__ import annotations

import os

import numpy as np

from .alphabet import Alphabet
from .derive import DialectTables, derive_heavy

_ELEMENT_CODES = ("C", "N", "O", "F")

try:
    if os.environ.get("CHA2_PURE_PYTHON"):
        _derive_cy = None
    else:
        from . import _derive_cy  # type: ignore[attr-defined]
except ImportError:
    _derive_cy = None


def kernel_name() -> str:
    return "compiled" if _derive_cy is not None else "pure-python"


def _tables_arrays(tables: DialectTables):
    kinds = np.asarray(tables.kinds, dtype=np.int32)
    valences = np.asarray(tables.valences, dtype=np.int32)
    orders = np.asarray(tables.orders, dtype=np.int32)
    codes = np.asarray(
        [_ELEMENT_CODES.index(e) if e else -1 for e in tables.elements],
        dtype=np.int32,
    )
    overloads = np.asarray(tables.overloads, dtype=np.int32)
    return kinds, valences, orders, codes, overloads


def derive_batch_pure(token_matrix: np.ndarray, tables: DialectTables):
    """Reference path: one automaton run per row via :func:`derive_heavy`."""
    out = []
    for row in np.asarray(token_matrix, dtype=np.int32):
        out.append(derive_heavy([int(t) for t in row], tables))
    return out


def derive_batch(token_matrix: np.ndarray, alphabet_or_tables):
    """Derive every row of an (n, max_len) index matrix.

    Returns a list of (elements, bonds) pairs matching
    :func:`cha2.selfies_codec.derive.derive_heavy`.
    """
    tables = (
        alphabet_or_tables
        if isinstance(alphabet_or_tables, DialectTables)
        else DialectTables(alphabet_or_tables)
    )
    token_matrix = np.ascontiguousarray(token_matrix, dtype=np.int32)
    if token_matrix.size and not (
        0 <= token_matrix.min() and token_matrix.max() < len(tables.kinds)
    ):
        raise ValueError("token index outside the alphabet")
    if _derive_cy is None or token_matrix.shape[1] > 19:
        return derive_batch_pure(token_matrix, tables)
    kinds, valences, orders, codes, overloads = _tables_arrays(tables)
    atom_els, atom_counts, bond_arr, bond_counts = _derive_cy.derive_batch(
        token_matrix, kinds, valences, orders, codes, overloads
    )
    els_rows = atom_els.tolist()
    out = []
    for r, (n_atoms, n_bonds) in enumerate(
        zip(atom_counts.tolist(), bond_counts.tolist())
    ):
        elements = [_ELEMENT_CODES[c] for c in els_rows[r][:n_atoms]]
        bonds = [tuple(b) for b in bond_arr[r, :n_bonds].tolist()] \
            if n_bonds else []
        out.append((elements, bonds))
    return out
