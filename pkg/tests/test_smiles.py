import numpy as np
import pytest

from cha2.errors import (
    KekulizationFailure,
    UnbalancedParenthesis,
    UnclosedRing,
    UnsupportedElement,
    ValenceViolation,
)
from cha2.molgraph import canonical_form, descriptors, emit_smiles, parse_smiles

from test_molgraph import random_graph


class TestParse:
    def test_ethanol(self):
        g = parse_smiles("CCO")
        assert [a.element for a in g.atoms] == ["C", "C", "O"]
        assert g.bonds == ((0, 1, 1), (1, 2, 1))

    def test_cyclopropane_ring(self):
        g = parse_smiles("C1CC1")
        assert descriptors(g).rings == 1
        assert len(g.bonds) == 3

    def test_bond_symbols(self):
        assert parse_smiles("C=C").bonds == ((0, 1, 2),)
        assert parse_smiles("C#N").bonds == ((0, 1, 2 + 1),)
        assert parse_smiles("C-C").bonds == ((0, 1, 1),)

    def test_branches(self):
        g = parse_smiles("CC(C)(C)C")  # neopentane
        assert g.heavy_degree(1) == 4
        assert descriptors(g).rings == 0

    def test_benzene_kekulized_alternating(self):
        g = parse_smiles("c1ccccc1")
        orders = sorted(o for _, _, o in g.bonds)
        assert orders == [1, 1, 1, 2, 2, 2]
        assert canonical_form(g) == canonical_form(
            parse_smiles("C1=CC=CC=C1")
        )

    def test_pyrrole_and_furan(self):
        pyrrole = parse_smiles("c1cc[nH]c1")
        n = next(a for a in pyrrole.atoms if a.element == "N")
        assert n.implicit_h == 1
        furan = parse_smiles("c1ccoc1")
        o_bonds = [o for i, j, o in furan.bonds
                   if "O" in (furan.atoms[i].element, furan.atoms[j].element)]
        assert o_bonds == [1, 1]

    def test_pyridine(self):
        g = parse_smiles("c1ccncc1")
        n_idx = next(i for i, a in enumerate(g.atoms) if a.element == "N")
        assert g.bond_order_sum(n_idx) == 3  # one double into the ring
        assert g.atoms[n_idx].implicit_h == 0

    def test_stereo_and_h_counts_are_stripped(self):
        assert canonical_form(parse_smiles("C/C=C\\C")) == \
            canonical_form(parse_smiles("CC=CC"))
        assert canonical_form(parse_smiles("[CH3]C")) == \
            canonical_form(parse_smiles("CC"))
        assert canonical_form(parse_smiles("F[C@H](F)C")) == \
            canonical_form(parse_smiles("FC(F)C"))

    def test_errors(self):
        with pytest.raises(UnsupportedElement):
            parse_smiles("CS")
        with pytest.raises(UnsupportedElement):
            parse_smiles("C[N+]")
        with pytest.raises(UnbalancedParenthesis):
            parse_smiles("C(C")
        with pytest.raises(UnbalancedParenthesis):
            parse_smiles("CC)C")
        with pytest.raises(UnclosedRing):
            parse_smiles("C1CC")
        with pytest.raises(ValenceViolation):
            parse_smiles("C(=O)(=O)(=O)")  # carbon over-valence
        with pytest.raises(KekulizationFailure):
            parse_smiles("c1cccc1")  # odd aromatic carbon ring

    def test_ring_bond_order_conflict(self):
        with pytest.raises(UnclosedRing):
            parse_smiles("C=1CC#1")


class TestEmit:
    def test_empty(self):
        from cha2.molgraph.graph import MolecularGraph

        assert emit_smiles(MolecularGraph.empty()) == ""

    def test_ethanol_round_trip(self):
        g = parse_smiles("CCO")
        assert canonical_form(parse_smiles(emit_smiles(g))) == \
            canonical_form(g)

    def test_round_trip_fuzz(self):
        rng = np.random.default_rng(21)
        for _ in range(400):
            g = random_graph(rng)
            back = parse_smiles(emit_smiles(g))
            assert canonical_form(back) == canonical_form(g)

    def test_round_trip_corpus(self, corpus_path):
        import csv

        rows = list(csv.DictReader(open(corpus_path)))
        for row in rows:
            g = parse_smiles(row["smiles"])
            assert canonical_form(parse_smiles(emit_smiles(g))) == \
                canonical_form(g)
