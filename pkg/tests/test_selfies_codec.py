import numpy as np
import pytest

from cha2.errors import MalformedToken, TooLong, UnknownToken
from cha2.molgraph import MAX_VALENCE, canonical_form
from cha2.molgraph.graph import MolecularGraph
from cha2.selfies_codec import (
    MAX_LEN,
    PAD,
    TokenSequence,
    argmax_decode,
    argmax_decode_batch,
    build_alphabet,
    derive_batch,
    derive_molecule,
    detokenize,
    full_alphabet,
    one_hot,
    split_tokens,
    tokenize,
)
from cha2.selfies_codec.kernel import derive_batch_pure
from cha2.selfies_codec.derive import DialectTables

from conftest import random_token_matrix, raw_token_matrix
from selfies_oracle import oracle_decode


class TestBuildAlphabet:
    def test_union_with_mandatory_tokens(self):
        a = build_alphabet(["[C][C][O]"])
        assert "[C]" in a.symbols and "[O]" in a.symbols
        assert "[Ring1]" in a.symbols and "[Branch1]" in a.symbols
        assert a.symbols[-1] == PAD

    def test_empty_dataset_gives_control_set_only(self):
        a = build_alphabet([])
        assert set(a.symbols) == {
            "[Ring1]", "[Branch1]", "[=Branch1]", "[#Branch1]", PAD
        }

    def test_deterministic_across_runs(self, corpus_path):
        import csv

        from cha2.molgraph import parse_smiles
        from cha2.selfies_codec import graph_to_selfies

        smiles = [r["smiles"] for r in csv.DictReader(open(corpus_path))]
        strings = ["".join(graph_to_selfies(parse_smiles(s)))
                   for s in smiles[:300]]
        assert build_alphabet(strings) == build_alphabet(strings[::-1])

    def test_malformed_token(self):
        with pytest.raises(MalformedToken):
            build_alphabet(["[C]junk[O]"])

    def test_out_of_dialect_token_is_rejected(self):
        with pytest.raises(UnknownToken):
            build_alphabet(["[S]"])
        with pytest.raises(UnknownToken):
            build_alphabet(["[#O]"])


class TestTokenize:
    def test_direct_lookup_with_padding(self, alphabet):
        t = tokenize("[C][C][O]", alphabet)
        i_c, i_o = alphabet.index("[C]"), alphabet.index("[O]")
        assert t.indices[:3] == (i_c, i_c, i_o)
        assert all(i == alphabet.pad_index for i in t.indices[3:])
        assert len(t) == MAX_LEN

    def test_empty_string_is_all_padding(self, alphabet):
        t = tokenize("", alphabet)
        assert all(i == alphabet.pad_index for i in t.indices)

    def test_too_long(self, alphabet):
        with pytest.raises(TooLong):
            tokenize("[C]" * 20, alphabet)

    def test_unknown_symbol(self):
        a = build_alphabet(["[C]"])
        with pytest.raises(UnknownToken):
            tokenize("[N]", a)

    def test_split_tokens_rejects_stray_chars(self):
        with pytest.raises(MalformedToken):
            split_tokens("[C] [O]")


class TestOneHot:
    def test_all_pad_column(self, alphabet):
        m = one_hot(tokenize("", alphabet), alphabet)
        assert m.shape == (MAX_LEN, len(alphabet))
        assert (m[:, alphabet.pad_index] == 1.0).all()
        assert m.sum() == MAX_LEN

    def test_single_atom_rows(self, alphabet):
        m = one_hot(tokenize("[C]", alphabet), alphabet)
        assert m[0, alphabet.index("[C]")] == 1.0
        assert (m[1:, alphabet.pad_index] == 1.0).all()

    def test_each_row_one_hot(self, alphabet):
        rng = np.random.default_rng(0)
        for row in random_token_matrix(rng, 50, alphabet):
            m = one_hot(TokenSequence(tuple(int(i) for i in row)), alphabet)
            assert (m.sum(axis=1) == 1.0).all()


class TestArgmaxDecode:
    def test_round_trip_binary(self, alphabet):
        t = tokenize("[C][O]", alphabet)
        assert argmax_decode(one_hot(t, alphabet), alphabet) == t

    def test_uniform_row_breaks_tie_to_column_zero(self, alphabet):
        m = np.full((MAX_LEN, len(alphabet)), 0.5)
        t = argmax_decode(m, alphabet)
        assert t.indices[0] == 0

    def test_row_argmax(self, alphabet):
        m = np.zeros((MAX_LEN, len(alphabet)))
        m[:, alphabet.pad_index] = 0.6
        m[0, :3] = [0.1, 0.9, 0.3]
        assert argmax_decode(m, alphabet).indices[0] == 1

    def test_everything_after_first_nop_is_nop(self, alphabet):
        m = np.zeros((MAX_LEN, len(alphabet)))
        i_c = alphabet.index("[C]")
        m[:, i_c] = 1.0
        m[4, :] = 0.0
        m[4, alphabet.pad_index] = 1.0  # pad mid-sequence
        t = argmax_decode(m, alphabet)
        assert t.indices[3] == i_c
        assert all(i == alphabet.pad_index for i in t.indices[4:])

    def test_round_trip_fuzz(self, alphabet):
        rng = np.random.default_rng(1)
        mat = random_token_matrix(rng, 500, alphabet)
        for row in mat:
            t = TokenSequence(tuple(int(i) for i in row))
            assert argmax_decode(one_hot(t, alphabet), alphabet) == t

    def test_batch_matches_single(self, alphabet):
        rng = np.random.default_rng(2)
        mat = random_token_matrix(rng, 64, alphabet)
        stack = np.stack([
            one_hot(TokenSequence(tuple(int(i) for i in row)), alphabet)
            for row in mat
        ])
        batch = argmax_decode_batch(stack, alphabet)
        for row, got in zip(mat, batch):
            t = TokenSequence(tuple(int(i) for i in row))
            single = argmax_decode(
                one_hot(t, alphabet), alphabet
            )
            assert tuple(int(i) for i in got) == single.indices


def _graph_from_oracle(symbols):
    elements, bonds, _ = oracle_decode(symbols)
    return MolecularGraph.from_heavy(
        elements, [(i, j, o) for (i, j), o in bonds.items()]
    )


class TestDeriveMolecule:
    def test_ethanol(self, alphabet):
        g = derive_molecule(tokenize("[C][C][O]", alphabet), alphabet)
        assert g == _graph_from_oracle(["[C]", "[C]", "[O]"])
        assert canonical_form(g) == "C3,C2,O1|0-1-1,1-2-1"

    def test_formaldehyde(self, alphabet):
        g = derive_molecule(tokenize("[C][=O]", alphabet), alphabet)
        assert g == _graph_from_oracle(["[C]", "[=O]"])
        assert [a.element for a in g.atoms] == ["C", "O"]
        assert g.bonds == ((0, 1, 2),)

    def test_fluorine_caps_bond_order(self, alphabet):
        g = derive_molecule(tokenize("[F][=C]", alphabet), alphabet)
        assert g.bonds == ((0, 1, 1),)  # capped by F valence 1

    def test_all_nop_gives_empty_graph(self, alphabet):
        g = derive_molecule(tokenize("", alphabet), alphabet)
        assert g.is_empty

    def test_prefix_stability(self, alphabet):
        from cha2.selfies_codec.derive import derive_heavy

        tables = DialectTables(alphabet)
        rng = np.random.default_rng(3)
        for row in random_token_matrix(rng, 200, alphabet,
                                       include_pad=False):
            prefix = [int(i) for i in row[:10]]
            bare = derive_heavy(prefix, tables)
            padded = derive_heavy(
                prefix + [alphabet.pad_index] * 9, tables
            )
            assert bare == padded

    def test_valence_validity_fuzz(self, alphabet):
        rng = np.random.default_rng(4)
        mat = raw_token_matrix(rng, 2000, alphabet)
        for elements, bonds in derive_batch(mat, alphabet):
            g = MolecularGraph.from_heavy(elements, bonds)
            g.validate()

    def test_oracle_agreement_fuzz(self, alphabet):
        rng = np.random.default_rng(5)
        mat = raw_token_matrix(rng, 2000, alphabet)
        for row in mat:
            t = TokenSequence(tuple(int(i) for i in row))
            mine = derive_molecule(t, alphabet)
            ref = _graph_from_oracle(
                [alphabet.symbols[i] for i in row]
            )
            assert canonical_form(mine) == canonical_form(ref)

    def test_oracle_agreement_on_corpus(self, alphabet, corpus_path):
        import csv

        from cha2.molgraph import parse_smiles
        from cha2.selfies_codec import graph_to_selfies

        rows = list(csv.DictReader(open(corpus_path)))[:400]
        for row in rows:
            g = parse_smiles(row["smiles"])
            symbols = graph_to_selfies(g)
            t = tokenize("".join(symbols), alphabet)
            mine = derive_molecule(t, alphabet)
            ref = _graph_from_oracle(symbols)
            assert canonical_form(mine) == canonical_form(ref) \
                == canonical_form(g)


class TestCompiledKernel:
    def test_matches_pure_python(self, alphabet):
        rng = np.random.default_rng(6)
        mat = raw_token_matrix(rng, 3000, alphabet)
        tables = DialectTables(alphabet)
        fast = derive_batch(mat, tables)
        pure = derive_batch_pure(mat, tables)
        assert fast == pure

    def test_rejects_out_of_range_indices(self, alphabet):
        bad = np.full((1, MAX_LEN), len(alphabet), dtype=np.int32)
        with pytest.raises(ValueError):
            derive_batch(bad, alphabet)


class TestDetokenize:
    def test_round_trip_string(self, alphabet):
        s = "[C][Branch1][C][F][=O]"
        assert detokenize(tokenize(s, alphabet), alphabet) == s
