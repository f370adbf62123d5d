"""Combinatorial lab for edge-pancyclic graphs: family generators, exact
cycle verification, constructive witnesses, exhaustive minimum-size
search, and exact-arithmetic bound certification."""

__version__ = "0.1.0"
