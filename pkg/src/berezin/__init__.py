"""Exact computer algebra for finite-rank supergeometry."""
