"""q-matroids on finite vector spaces, their axiom systems, and rank-metric codes."""

from __future__ import annotations

from .errors import AxiomViolation, QMatroidError
from .gf import GF, FieldSpec, field_make
from .space import Lattice, Subspace, enumerate_subspaces, lattice, span

__version__ = "0.1.0"

__all__ = [
    "AxiomViolation",
    "FieldSpec",
    "GF",
    "Lattice",
    "QMatroidError",
    "Subspace",
    "enumerate_subspaces",
    "field_make",
    "lattice",
    "span",
    "__version__",
]
