"""crossbound: certified lower bounds on crossing numbers of generalized
periodic graphs, with an exact small-graph oracle."""

__version__ = "0.1.0"

from .config import DEFAULT_CONFIG, RunConfig
from .drawing import Drawing, HalfInt
from .graphs import (
    Graph,
    TransitiveDecomposition,
    WindowRef,
    automorphisms,
    verify_transitive_decomposition,
    window_union,
)

__all__ = [
    "DEFAULT_CONFIG",
    "RunConfig",
    "Drawing",
    "HalfInt",
    "Graph",
    "TransitiveDecomposition",
    "WindowRef",
    "automorphisms",
    "verify_transitive_decomposition",
    "window_union",
    "__version__",
]
