from .canon import canonical_form
from .descriptors import DescriptorVector, descriptors
from .graph import ATOMIC_MASS, MAX_VALENCE, Atom, MolecularGraph
from .smiles import emit_smiles, parse_smiles

__all__ = [
    "ATOMIC_MASS",
    "MAX_VALENCE",
    "Atom",
    "MolecularGraph",
    "DescriptorVector",
    "canonical_form",
    "descriptors",
    "emit_smiles",
    "parse_smiles",
]
