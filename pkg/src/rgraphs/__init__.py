"""Multigraph toolkit for r-graphs on the projective plane: cuts, swaps,
edge colorings, minors, embeddings, and discharging verification."""

from rgraphs.multigraph import Multigraph

__all__ = ["Multigraph"]
__version__ = "0.1.0"
