"""CHA2: convex-hull guided sampling of an autoencoder latent space
for generating novel, valence-valid molecules.

Subpackages
-----------
selfies_codec
    Robust molecular string dialect: alphabet, one-hot codec, derivation.
molgraph
    Molecular graphs, canonical forms, descriptors, SMILES subset.
autoencoder
    Fully-connected autoencoder trained with Adam on one-hot strings.
hullspace
    d-dimensional convex hulls with uniform interior/surface sampling.
scoring
    Drug-likeness proxy scorer and the external ground-truth scorer client.
pipeline
    End-to-end generation runs, reports, and the ``cha2`` CLI.
"""

__version__ = "0.1.0"
