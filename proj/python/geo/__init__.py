"""Geometry on manifolds: exp/log maps, distances and learning on curved spaces."""

import json as _json

from ._geo import (
    ContractError,
    ConvergenceError,
    CutLocusError,
    DomainError,
    GeometryError,
    ShapeError,
    frechet_mean,
    kmeans,
    run_cli,
    tangent_pca,
)
from ._geo import Space as _Space

__all__ = [
    "ContractError",
    "ConvergenceError",
    "CutLocusError",
    "DomainError",
    "GeometryError",
    "ShapeError",
    "Space",
    "frechet_mean",
    "kmeans",
    "run_cli",
    "tangent_pca",
]


class Space(_Space):
    """A manifold with its connection and metric, built from a spec.

    The spec is a dict such as ``{"name": "hypersphere", "n": 2}``, its JSON
    text, or a bare manifold name.
    """

    def __init__(self, spec):
        super().__init__(spec if isinstance(spec, str) and spec.lstrip().startswith("{") else _json.dumps(spec))

    def __repr__(self):
        return f"Space({self.spec})"
