"""Exact finite-weight comparison of Kähler and Sullivan forms on simplicial complexes.

The two cochain algebras of a finite simplicial complex are built as
truncated, exactly computable vector spaces over Q, and their cohomology is
compared against the simplicial cohomology of the complex.
"""
from ._kernels import BACKEND, RATIONAL_BACKEND
from .simplicial import SimplicialComplex, build_complex, parse_complex, simplicial_betti, star
from .corpus import builtin, corpus

__version__ = "0.1.0"

__all__ = ["BACKEND", "RATIONAL_BACKEND", "SimplicialComplex", "build_complex", "parse_complex",
           "simplicial_betti", "star", "builtin", "corpus", "__version__"]
