"""Real right-eigenvalue problem for 2x2 and 3x3 octonionic Hermitian matrices."""

from .eigensolve import (
    EigenPair2,
    Family,
    SolverDefect,
    Spectrum3,
    decompose2,
    decompose3,
    eigenspace_basis3,
    eigenvalues2,
    family_eigenvalues,
    r_roots,
    spectrum3,
)
from .hermitian import Herm2, Herm3, OctMatrix, OctVec
from .octonion import Octonion

__version__ = "0.1.0"

__all__ = [
    "EigenPair2",
    "Family",
    "Herm2",
    "Herm3",
    "OctMatrix",
    "OctVec",
    "Octonion",
    "SolverDefect",
    "Spectrum3",
    "decompose2",
    "decompose3",
    "eigenspace_basis3",
    "eigenvalues2",
    "family_eigenvalues",
    "r_roots",
    "spectrum3",
]
