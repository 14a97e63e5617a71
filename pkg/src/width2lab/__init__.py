"""Width-two posets, bichains and bipartite permutation graphs."""
from ._accel import USE_NUMBA
from .structures import (Bichain, Embedding, Graph, LabelledStructure, Poset,
                         StructureError, comp, dual, embeds, inc, o, transpose)

__version__ = "0.1.0"

__all__ = [
    "USE_NUMBA", "Bichain", "Embedding", "Graph", "LabelledStructure", "Poset",
    "StructureError", "comp", "dual", "embeds", "inc", "o", "transpose",
]
