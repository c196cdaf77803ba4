"""Uniform sampling from hull interiors and surfaces.

Interior: pick a fan simplex with probability proportional to its volume,
then a uniform point inside it from sorted-uniform (flat Dirichlet)
barycentric weights. Surface: same scheme over facets weighted by their
(k-1)-volume.

Samples are produced in fixed-size blocks, each driven by an independent
substream seeded with (seed, block index), so a run parallelized over any
number of workers reproduces the sequential output bit for bit.
"""

from __future__ import annotations

import numpy as np

from ..errors import ZeroVolume
from .hull import ConvexHull, Facet, PointSet, facet_area

BLOCK = 8192


def _block_rng(seed: int, block: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, block)))


def _dirichlet_weights(rng: np.random.Generator, n: int, k: int) -> np.ndarray:
    """(n, k+1) flat-Dirichlet weights via sorted uniform spacings."""
    u = np.sort(rng.random((n, k)), axis=1)
    return np.diff(u, axis=1, prepend=0.0, append=1.0)


def _sample_simplices(hull: ConvexHull, corners: np.ndarray,
                      weights: np.ndarray, count: int, seed: int):
    """Draw ``count`` points from the union of simplices given by
    ``corners`` (s, k+1, k) with selection ``weights``."""
    k = hull.intrinsic_dim
    total = weights.sum()
    cdf = np.cumsum(weights) / total
    out = np.empty((count, hull.dim), dtype=np.float64)
    for block_idx, start in enumerate(range(0, count, BLOCK)):
        m = min(BLOCK, count - start)
        rng = _block_rng(seed, block_idx)
        # full-block draws keep sample i independent of the total count
        picks = np.searchsorted(cdf, rng.random(BLOCK)[:m], side="right")
        picks = np.minimum(picks, len(weights) - 1)
        bary = _dirichlet_weights(rng, BLOCK, k)[:m]  # (m, k+1)
        pts_k = np.einsum("mj,mjk->mk", bary, corners[picks])
        out[start:start + m] = hull.to_ambient(pts_k)
    return out


def sample_uniform(hull: ConvexHull, count: int, seed: int) -> PointSet:
    """``count`` i.i.d. uniform points over the hull interior."""
    if count == 0:
        return PointSet(np.empty((0, hull.dim), dtype=np.float64))
    if hull.volume <= 0.0:
        raise ZeroVolume("hull has no interior in its intrinsic space")
    k = hull.intrinsic_dim
    centroid = hull.vertex_coords.mean(axis=0)
    corners = np.empty((len(hull.simplex_volumes), k + 1, k))
    for s, row in enumerate(hull.simplex_vertex_ids):
        for j, vid in enumerate(row):
            corners[s, j] = centroid if vid < 0 else hull.vertex_coords[vid]
    keep = hull.simplex_volumes > 0
    return PointSet(_sample_simplices(
        hull, corners[keep], hull.simplex_volumes[keep], count, seed
    ))


def sample_surface(hull: ConvexHull, count: int, seed: int) -> PointSet:
    """``count`` points uniform over the facet area measure."""
    if count == 0:
        return PointSet(np.empty((0, hull.dim), dtype=np.float64))
    k = hull.intrinsic_dim
    areas = np.asarray([facet_area(hull, f) for f in hull.facets])
    corners = np.empty((len(hull.facets), k, k))
    for s, f in enumerate(hull.facets):
        corners[s] = hull.vertex_coords[list(f.vertex_ids)]
    keep = areas > 0
    if not keep.any():
        raise ZeroVolume("every facet has zero area")

    # same machinery one dimension down: k corners, k-1 sorted uniforms
    total = areas[keep].sum()
    cdf = np.cumsum(areas[keep]) / total
    kept_corners = corners[keep]
    out = np.empty((count, hull.dim), dtype=np.float64)
    for block_idx, start in enumerate(range(0, count, BLOCK)):
        m = min(BLOCK, count - start)
        rng = _block_rng(seed, block_idx)
        picks = np.searchsorted(cdf, rng.random(m), side="right")
        picks = np.minimum(picks, int(keep.sum()) - 1)
        bary = _dirichlet_weights(rng, m, k - 1) if k > 1 else \
            np.ones((m, 1))
        pts_k = np.einsum("mj,mjk->mk", bary, kept_corners[picks])
        out[start:start + m] = hull.to_ambient(pts_k)
    return PointSet(out)
