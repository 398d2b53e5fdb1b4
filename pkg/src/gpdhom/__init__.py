"""Exact (co)homology of finite discrete groupoids with cup and cap products,
plus calculators for shift-of-finite-type groupoids, Z^N transformation
groupoids and 2-dimensional tiling complexes."""

__version__ = "0.1.0"
