"""Exact geometric incidence graphs, decompositions and certified graph extraction."""

__version__ = "0.1.0"
