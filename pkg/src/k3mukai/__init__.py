"""Decide when the Mukai moduli space ``Y`` of a polarized K3 surface is isomorphic to ``X``.

The surface enters only through its rank-2 Picard lattice invariants
``(a, d, +-mu)``; see :mod:`k3mukai.oracle` for the decision procedures and
:mod:`k3mukai.enumeration` for the divisorial-condition tables.
"""
from .lattice_core import GramLattice, LatticeError
from .oracle import Decision, decide, decide_lattice_only, verify_sufficient
from .picard2 import PolarizedRank2, VectorXY, gram_of, invariants_from, make

__all__ = [
    "GramLattice",
    "LatticeError",
    "Decision",
    "decide",
    "decide_lattice_only",
    "verify_sufficient",
    "PolarizedRank2",
    "VectorXY",
    "gram_of",
    "invariants_from",
    "make",
]

__version__ = "0.1.0"
