# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled batch derivation automaton.

Mirrors cha2.selfies_codec.derive.derive_heavy exactly; the pure path is
the behavioural reference and the two are cross-checked in the tests.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF MAX_STACK = 24
DEF MAX_ATOMS = 20
DEF MAX_BONDS = 40

KIND_ATOM = 0
KIND_BRANCH = 1
KIND_RING = 2
KIND_NOP = 3


def derive_batch(cnp.int32_t[:, ::1] tokens,
                 cnp.int32_t[::1] kinds,
                 cnp.int32_t[::1] valences,
                 cnp.int32_t[::1] orders,
                 cnp.int32_t[::1] codes,
                 cnp.int32_t[::1] overloads):
    cdef Py_ssize_t n_rows = tokens.shape[0]
    cdef Py_ssize_t n_cols = tokens.shape[1]
    if n_cols >= MAX_ATOMS:
        raise ValueError("token rows longer than the supported maximum")

    atom_els_np = np.zeros((n_rows, MAX_ATOMS), dtype=np.int32)
    atom_counts_np = np.zeros(n_rows, dtype=np.int32)
    bonds_np = np.zeros((n_rows, MAX_BONDS, 3), dtype=np.int32)
    bond_counts_np = np.zeros(n_rows, dtype=np.int32)

    cdef cnp.int32_t[:, ::1] atom_els = atom_els_np
    cdef cnp.int32_t[::1] atom_counts = atom_counts_np
    cdef cnp.int32_t[:, :, ::1] bonds = bonds_np
    cdef cnp.int32_t[::1] bond_counts = bond_counts_np

    cdef int free[MAX_ATOMS]
    cdef int ring_a[MAX_ATOMS]
    cdef int ring_b[MAX_ATOMS]
    cdef int stack_end[MAX_STACK]
    cdef int stack_cur[MAX_STACK]

    cdef Py_ssize_t r
    cdef int pos, depth, tok, kind, cur, new
    cdef int q, span_end, order, n_atoms, n_bonds, n_rings
    cdef int i, j, k, dup

    for r in range(n_rows):
        n_atoms = 0
        n_bonds = 0
        n_rings = 0
        depth = 0
        stack_end[0] = <int>n_cols
        stack_cur[0] = -1
        pos = 0
        while depth >= 0:
            if pos >= stack_end[depth]:
                pos = stack_end[depth]
                depth -= 1
                continue
            tok = tokens[r, pos]
            pos += 1
            kind = kinds[tok]
            if kind == 3:  # nop: terminate scope
                pos = stack_end[depth]
                depth -= 1
            elif kind == 0:  # atom
                cur = stack_cur[depth]
                if cur < 0:
                    atom_els[r, n_atoms] = codes[tok]
                    free[n_atoms] = valences[tok]
                    stack_cur[depth] = n_atoms
                    n_atoms += 1
                    continue
                if free[cur] == 0:
                    pos = stack_end[depth]
                    depth -= 1
                    continue
                order = orders[tok]
                if free[cur] < order:
                    order = free[cur]
                if valences[tok] < order:
                    order = valences[tok]
                new = n_atoms
                atom_els[r, new] = codes[tok]
                free[new] = valences[tok] - order
                free[cur] -= order
                bonds[r, n_bonds, 0] = cur
                bonds[r, n_bonds, 1] = new
                bonds[r, n_bonds, 2] = order
                n_bonds += 1
                n_atoms += 1
                stack_cur[depth] = new
            elif kind == 1:  # branch
                cur = stack_cur[depth]
                if cur < 0:
                    continue
                if pos >= stack_end[depth]:
                    pos = stack_end[depth]
                    depth -= 1
                    continue
                if kinds[tokens[r, pos]] == 3:  # nop terminates scope
                    pos = stack_end[depth]
                    depth -= 1
                    continue
                q = overloads[tokens[r, pos]]
                pos += 1
                span_end = pos + q + 1
                if span_end > stack_end[depth]:
                    span_end = stack_end[depth]
                if free[cur] >= 2:
                    depth += 1
                    stack_end[depth] = span_end
                    stack_cur[depth] = cur
                else:
                    pos = span_end
            else:  # ring
                cur = stack_cur[depth]
                if cur < 0:
                    continue
                if pos >= stack_end[depth]:
                    pos = stack_end[depth]
                    depth -= 1
                    continue
                if kinds[tokens[r, pos]] == 3:
                    pos = stack_end[depth]
                    depth -= 1
                    continue
                q = overloads[tokens[r, pos]]
                pos += 1
                j = cur - (q + 1)
                if j < 0:
                    j = 0
                ring_a[n_rings] = j
                ring_b[n_rings] = cur
                n_rings += 1

        for k in range(n_rings):
            i = ring_a[k]
            j = ring_b[k]
            if i == j:
                continue
            if free[i] < 1 or free[j] < 1:
                continue
            dup = 0
            for q in range(n_bonds):
                if (bonds[r, q, 0] == i and bonds[r, q, 1] == j) or \
                   (bonds[r, q, 0] == j and bonds[r, q, 1] == i):
                    dup = 1
                    break
            if dup:
                continue
            bonds[r, n_bonds, 0] = i
            bonds[r, n_bonds, 1] = j
            bonds[r, n_bonds, 2] = 1
            n_bonds += 1
            free[i] -= 1
            free[j] -= 1

        atom_counts[r] = n_atoms
        bond_counts[r] = n_bonds

    return atom_els_np, atom_counts_np, bonds_np, bond_counts_np
