"""Free finite-index subgroups of free products of cyclic groups with a
prescribed normalizer quotient, built and certified as Schreier graphs."""

__version__ = "0.1.0"

from .assembly import CertificationError, Realization, realize_base  # noqa: E402
from .factors import plan_reduction, realize  # noqa: E402
from .graph import (  # noqa: E402
    FreeProductSignature,
    GraphError,
    LabelledDigraph,
    automorphisms,
    isomorphic,
    validate,
)
from .groups import FiniteGroup, cayley_graph, groups_isomorphic, preset  # noqa: E402

__all__ = [
    "CertificationError",
    "FiniteGroup",
    "FreeProductSignature",
    "GraphError",
    "LabelledDigraph",
    "Realization",
    "automorphisms",
    "cayley_graph",
    "groups_isomorphic",
    "isomorphic",
    "plan_reduction",
    "preset",
    "realize",
    "realize_base",
    "validate",
]
