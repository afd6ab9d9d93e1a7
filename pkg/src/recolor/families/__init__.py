"""Concrete bad-event families for the recoloring engine.

Each constructor returns an immutable family object satisfying the engine's
`BadEventFamily` protocol: acyclicity over a cycle-count budget or over a
special-pair structure, non-repetitive vertex and edge colorings, and their
facial restrictions on plane graphs.
"""

from .acyclic import acyclic_gamma_family, acyclic_v1_family, acyclic_v2_family
from .facial import (
    MedialConnectivityError,
    facial_thue_edge_family,
    facial_thue_vertex_family,
)
from .nonrepetitive import nonrepetitive_edge_family, nonrepetitive_vertex_family

__all__ = [
    "MedialConnectivityError",
    "acyclic_gamma_family",
    "acyclic_v1_family",
    "acyclic_v2_family",
    "facial_thue_edge_family",
    "facial_thue_vertex_family",
    "nonrepetitive_edge_family",
    "nonrepetitive_vertex_family",
]
