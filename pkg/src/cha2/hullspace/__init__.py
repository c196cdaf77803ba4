from .export import export_hull, write_hull
from .hull import (
    ConvexHull,
    Facet,
    PointSet,
    build_hull,
    contains,
    contains_batch,
    facet_area,
    volume,
    volume_divergence,
)
from .sampling import sample_surface, sample_uniform

__all__ = [
    "ConvexHull",
    "Facet",
    "PointSet",
    "build_hull",
    "contains",
    "contains_batch",
    "export_hull",
    "facet_area",
    "sample_surface",
    "sample_uniform",
    "volume",
    "volume_divergence",
    "write_hull",
]
