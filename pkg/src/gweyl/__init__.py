"""Generalized chiral-projector mass terms for first-order relativistic wave equations.

Exact 4x4 Clifford algebra, the generalized operators and Hamiltonians, their
spectra, chiral-helicity dynamics and a replay of the two-spinor construction.
"""

from .clifford_core import GammaBasis, Representation, build_basis, change_representation
from .errors import (
    EigenFailure,
    GweylError,
    MasslessLimit,
    NonDiagonalizable,
    NonPositiveSeedMass,
    OffShell,
    ShapeError,
    ZeroMomentumDirection,
)
from .operators import FourMomentum, MassParameters, SeedChirality, Units, generalized_operator, hamiltonian

__all__ = [
    "EigenFailure",
    "FourMomentum",
    "GammaBasis",
    "GweylError",
    "MassParameters",
    "MasslessLimit",
    "NonDiagonalizable",
    "NonPositiveSeedMass",
    "OffShell",
    "Representation",
    "SeedChirality",
    "ShapeError",
    "Units",
    "ZeroMomentumDirection",
    "build_basis",
    "change_representation",
    "generalized_operator",
    "hamiltonian",
]
