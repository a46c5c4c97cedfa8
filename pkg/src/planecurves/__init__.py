"""Exact-arithmetic toolkit for plane algebraic curves and their embeddings."""

from .polynomials import BiPoly, MultiPoly, TriangularForm, UniPoly

__all__ = ["BiPoly", "MultiPoly", "TriangularForm", "UniPoly"]
