"""Tropical eigenvalue theory of weighted planar networks."""

from .errors import TropnetError
from .network import (
    Edge,
    PlanarNetwork,
    Vertex,
    Weighting,
    build_network,
    concatenate,
    delta0,
    gamma0,
    gamma0_delta0,
    simplify,
    tau_line,
    truncate,
)
from .tropical import NEG_INF

__all__ = [
    "NEG_INF",
    "Edge",
    "PlanarNetwork",
    "TropnetError",
    "Vertex",
    "Weighting",
    "build_network",
    "concatenate",
    "delta0",
    "gamma0",
    "gamma0_delta0",
    "simplify",
    "tau_line",
    "truncate",
]

__version__ = "0.1.0"
