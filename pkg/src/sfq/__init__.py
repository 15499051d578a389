"""Exact construction of rational stable formality quasi-isomorphisms up to a cutoff."""
from .graph import BLACK, WHITE, Graph, GraphError, GraphVector, canonicalize
from .induction import run_induction
from .oc import AlphaTable, Corolla, mc_evaluate, mc_verify
from .weights import estimate_weight

__version__ = "0.1.0"

__all__ = [
    "AlphaTable", "BLACK", "Corolla", "Graph", "GraphError", "GraphVector", "WHITE",
    "canonicalize", "estimate_weight", "mc_evaluate", "mc_verify", "run_induction",
]
