"""Convex hulls in up to 8 dimensions: quickhull over the affine span of
the input points, half-space membership tests, and exact volumes via a
centroid fan of simplicial facets.

Degenerate inputs are projected onto their intrinsic subspace (SVD rank
detection) instead of erroring, so a hull built from collapsed latent
vectors still works; its "volume" is then measured in the intrinsic space.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import DegeneratePointSet, DimensionTooHigh

MAX_DIM = 8
_EPS_FACTOR = 1e-9  # facet-visibility epsilon per unit of cloud diameter


@dataclass(frozen=True)
class PointSet:
    points: np.ndarray  # (n, dim)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim != 2:
            raise ValueError("point set must be an (n, d) array")
        if not np.isfinite(pts).all():
            raise ValueError("point coordinates must be finite")
        object.__setattr__(self, "points", pts)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return self.points.shape[0]


@dataclass(frozen=True)
class Facet:
    vertex_ids: tuple[int, ...]  # indices into ConvexHull.vertices
    normal: np.ndarray           # unit outward normal, intrinsic space
    offset: float                # n . x <= offset for hull points


@dataclass(frozen=True)
class ConvexHull:
    dim: int                 # ambient dimension
    intrinsic_dim: int       # k <= dim
    origin: np.ndarray       # (dim,) base point of the intrinsic frame
    basis: np.ndarray        # (dim, k) orthonormal columns
    vertices: np.ndarray     # indices into the original input points
    vertex_points: np.ndarray    # (m, dim) ambient coordinates
    vertex_coords: np.ndarray    # (m, k) intrinsic coordinates
    facets: tuple[Facet, ...]
    simplex_vertex_ids: np.ndarray  # (s, k+1) rows: fan simplices
    simplex_volumes: np.ndarray     # (s,)
    volume: float
    scale: float             # cloud diameter estimate used for tolerances

    def to_intrinsic(self, x: np.ndarray) -> tuple[np.ndarray, float]:
        """Project ambient point(s) onto the intrinsic frame; returns the
        intrinsic coordinates and the off-subspace residual norm."""
        x = np.asarray(x, dtype=np.float64)
        diff = x - self.origin
        y = diff @ self.basis
        residual = diff - y @ self.basis.T
        if x.ndim == 1:
            return y, float(np.linalg.norm(residual))
        return y, np.linalg.norm(residual, axis=-1)

    def to_ambient(self, y: np.ndarray) -> np.ndarray:
        return self.origin + np.asarray(y, dtype=np.float64) @ self.basis.T


def _unique_rows(pts: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    seen: dict[bytes, int] = {}
    keep: list[int] = []
    for i, row in enumerate(pts):
        key = row.tobytes()
        if key not in seen:
            seen[key] = i
            keep.append(i)
    idx = np.asarray(keep, dtype=np.intp)
    return pts[idx], idx


def build_hull(ps: PointSet) -> ConvexHull:
    """Quickhull over the affine span of the deduplicated points."""
    pts_all = ps.points
    if len(pts_all) < 1:
        raise DegeneratePointSet("empty point set")
    pts, orig_idx = _unique_rows(pts_all)
    if len(pts) < 2:
        raise DegeneratePointSet("all points coincide")

    origin = pts.mean(axis=0)
    centered = pts - origin
    svals = np.linalg.svd(centered, compute_uv=False)
    rank = int(np.sum(svals > 1e-9 * svals[0]))
    if rank > MAX_DIM:
        raise DimensionTooHigh(f"intrinsic dimension {rank} > {MAX_DIM}")
    assert rank >= 1
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    basis = vt[:rank].T  # (dim, rank), orthonormal columns
    coords = centered @ basis  # (n, rank)

    spread = coords.max(axis=0) - coords.min(axis=0)
    scale = float(np.linalg.norm(spread))
    eps = _EPS_FACTOR * scale

    if rank == 1:
        vert_local = [int(np.argmin(coords[:, 0])),
                      int(np.argmax(coords[:, 0]))]
        facets_local = [
            (tuple([0]), np.array([-1.0]), -float(coords[vert_local[0], 0])),
            (tuple([1]), np.array([1.0]), float(coords[vert_local[1], 0])),
        ]
    else:
        vert_local, facets_local = _quickhull(coords, eps)

    vertices = orig_idx[vert_local]
    vertex_points = pts_all[vertices]
    vertex_coords = coords[vert_local]

    facets = tuple(
        Facet(tuple(v_ids), normal, float(offset))
        for v_ids, normal, offset in facets_local
    )

    simplex_ids, simplex_vols = _fan_decomposition(
        vertex_coords, facets, rank
    )
    volume = float(simplex_vols.sum())

    return ConvexHull(
        dim=ps.dim,
        intrinsic_dim=rank,
        origin=origin,
        basis=basis,
        vertices=vertices,
        vertex_points=vertex_points,
        vertex_coords=vertex_coords,
        facets=facets,
        simplex_vertex_ids=simplex_ids,
        simplex_volumes=simplex_vols,
        volume=volume,
        scale=scale,
    )


def _facet_plane(points: np.ndarray, interior: np.ndarray):
    """Hyperplane through k points in k-space, oriented away from
    ``interior``: returns (unit normal, offset)."""
    edges = points[1:] - points[0]
    _, _, vt = np.linalg.svd(edges)
    normal = vt[-1]
    offset = float(normal @ points[0])
    if normal @ interior > offset:
        normal = -normal
        offset = -offset
    return normal, offset


def _quickhull(coords: np.ndarray, eps: float):
    """Quickhull with simplicial facets for k >= 2.

    Returns (vertex ids into coords, [(facet vertex ids into the vertex
    list, unit normal, offset), ...]).
    """
    n, k = coords.shape
    simplex = _initial_simplex(coords, eps)
    interior = coords[simplex].mean(axis=0)

    facets: dict[int, dict] = {}
    ridge_map: dict[frozenset, list[int]] = {}
    next_id = 0

    def add_facet(vertex_ids: tuple[int, ...], candidates: np.ndarray):
        nonlocal next_id
        normal, offset = _facet_plane(coords[list(vertex_ids)], interior)
        dists = coords[candidates] @ normal - offset
        outside_mask = dists > eps
        outside = candidates[outside_mask]
        facet = {
            "id": next_id,
            "vertices": vertex_ids,
            "normal": normal,
            "offset": offset,
            "outside": outside,
            "outside_dist": dists[outside_mask],
        }
        facets[next_id] = facet
        for drop in range(len(vertex_ids)):
            ridge = frozenset(
                vertex_ids[:drop] + vertex_ids[drop + 1:]
            )
            ridge_map.setdefault(ridge, []).append(next_id)
        next_id += 1

    all_ids = np.arange(n)
    rest = np.setdiff1d(all_ids, np.asarray(simplex, dtype=np.intp))
    for drop in range(k + 1):
        face = tuple(simplex[:drop] + simplex[drop + 1:])
        add_facet(face, rest)

    while True:
        live = [f for f in facets.values() if len(f["outside"])]
        if not live:
            break
        facet = min(live, key=lambda f: f["id"])
        far_pos = int(np.argmax(facet["outside_dist"]))
        apex = int(facet["outside"][far_pos])

        # find all facets visible from the apex (BFS over ridge adjacency)
        visible = {facet["id"]}
        queue = [facet["id"]]
        while queue:
            fid = queue.pop()
            f = facets[fid]
            for drop in range(len(f["vertices"])):
                ridge = frozenset(
                    f["vertices"][:drop] + f["vertices"][drop + 1:]
                )
                for nid in ridge_map.get(ridge, ()):
                    if nid in visible or nid not in facets:
                        continue
                    g = facets[nid]
                    if coords[apex] @ g["normal"] - g["offset"] > eps:
                        visible.add(nid)
                        queue.append(nid)

        # horizon: ridges shared by exactly one visible facet
        horizon: list[tuple] = []
        candidate_ids: set[int] = set()
        for fid in visible:
            f = facets[fid]
            candidate_ids.update(int(i) for i in f["outside"])
            for drop in range(len(f["vertices"])):
                ridge = tuple(sorted(
                    f["vertices"][:drop] + f["vertices"][drop + 1:]
                ))
                members = ridge_map.get(frozenset(ridge), ())
                n_visible = sum(1 for m in members if m in visible)
                if n_visible == 1:
                    horizon.append(ridge)
        candidate_ids.discard(apex)

        for fid in visible:
            f = facets.pop(fid)
            for drop in range(len(f["vertices"])):
                ridge = frozenset(
                    f["vertices"][:drop] + f["vertices"][drop + 1:]
                )
                members = ridge_map[ridge]
                members.remove(fid)
                if not members:
                    del ridge_map[ridge]

        candidates = np.asarray(sorted(candidate_ids), dtype=np.intp)
        for ridge in sorted(set(horizon)):
            add_facet(tuple(ridge) + (apex,), candidates)

    vertex_ids = sorted({v for f in facets.values() for v in f["vertices"]})
    local = {v: i for i, v in enumerate(vertex_ids)}
    out_facets = [
        (tuple(local[v] for v in f["vertices"]), f["normal"], f["offset"])
        for f in sorted(facets.values(), key=lambda f: f["id"])
    ]
    return vertex_ids, out_facets


def _initial_simplex(coords: np.ndarray, eps: float) -> list[int]:
    """Greedy affinely-independent k+1 points: start at the lexicographic
    minimum, then repeatedly take the point farthest from the current
    affine span."""
    n, k = coords.shape
    start = int(np.lexsort(coords.T[::-1])[0])
    chosen = [start]
    basis: list[np.ndarray] = []
    for _ in range(k):
        diffs = coords - coords[chosen[0]]
        residual = diffs.copy()
        for b in basis:
            residual -= np.outer(residual @ b, b)
        norms = np.linalg.norm(residual, axis=1)
        far = int(np.argmax(norms))
        if norms[far] <= eps:
            raise DegeneratePointSet(
                "rank detection and span disagree; degenerate input"
            )
        chosen.append(far)
        newb = residual[far] / norms[far]
        basis.append(newb)
    return chosen


def _fan_decomposition(vertex_coords: np.ndarray, facets, k: int):
    """Cone the vertex centroid over every facet; returns (s, k+1) vertex
    id rows (-1 marks the centroid) and simplex volumes."""
    centroid = vertex_coords.mean(axis=0)
    rows = []
    vols = []
    fact = math.factorial(k)
    for f in facets:
        ids = f.vertex_ids
        mat = vertex_coords[list(ids)] - centroid
        vol = abs(float(np.linalg.det(mat))) / fact
        rows.append((-1,) + ids)
        vols.append(vol)
    return (np.asarray(rows, dtype=np.intp),
            np.asarray(vols, dtype=np.float64))


def facet_area(hull: ConvexHull, f: Facet) -> float:
    """(k-1)-dimensional volume of a simplicial facet; 1.0 for point
    facets of 1-dimensional hulls (counting measure)."""
    k = hull.intrinsic_dim
    if k == 1:
        return 1.0
    verts = hull.vertex_coords[list(f.vertex_ids)]
    edges = verts[1:] - verts[0]
    gram = edges @ edges.T
    det = float(np.linalg.det(gram))
    return math.sqrt(max(det, 0.0)) / math.factorial(k - 1)


def volume(hull: ConvexHull) -> float:
    """Hull k-volume (sum of fan simplex volumes)."""
    return hull.volume


def volume_divergence(hull: ConvexHull) -> float:
    """Independent volume via the divergence theorem over facets:
    V = (1/k) * sum over facets of (n . x0) * area."""
    k = hull.intrinsic_dim
    total = 0.0
    for f in hull.facets:
        x0 = hull.vertex_coords[f.vertex_ids[0]]
        total += float(f.normal @ x0) * facet_area(hull, f)
    return total / k


def contains(hull: ConvexHull, x: np.ndarray, tol: float = None) -> bool:
    """Half-space membership; points off the intrinsic subspace by more
    than tol are outside."""
    if tol is None:
        tol = _EPS_FACTOR * hull.scale
    y, residual = hull.to_intrinsic(np.asarray(x, dtype=np.float64))
    if residual > tol:
        return False
    for f in hull.facets:
        if float(f.normal @ y) - f.offset > tol:
            return False
    return True


def contains_batch(hull: ConvexHull, xs: np.ndarray,
                   tol: float = None) -> np.ndarray:
    if tol is None:
        tol = _EPS_FACTOR * hull.scale
    ys, residual = hull.to_intrinsic(np.asarray(xs, dtype=np.float64))
    normals = np.stack([f.normal for f in hull.facets])
    offsets = np.asarray([f.offset for f in hull.facets])
    slack = ys @ normals.T - offsets
    ok = (slack <= tol).all(axis=1)
    if hull.intrinsic_dim < hull.dim:
        ok &= residual <= tol
    return ok
