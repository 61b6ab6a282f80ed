"""Momentum-space wave operators of the generalized massless spin-1/2 equations.

Plane waves are taken as ``Psi ~ exp(-i (E t - p.x) / hbar)``, so
``i hbar d/dt -> E``, ``-i hbar grad -> p`` and ``i hbar d/dx0 -> E / c``.
Operators are stored multiplied by ``hbar``, i.e. in momentum units:

    D(p) = gamma^mu p_mu - (m_b^2 c / m_a) P_L - m_a c P_R      (right-seeded)
    D(p) = gamma^mu p_mu - (m_b^2 c / m_a) P_R - m_a c P_L      (left-seeded)

with ``p_mu = (E / c, -p)``.  The Hamiltonian obeys ``c gamma^0 D(p) = E - H``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .clifford_core import GammaBasis, I2, I4, build_basis, max_abs, sigma_dot
from .errors import NonPositiveSeedMass


class SeedChirality(enum.Enum):
    RIGHT = "right"
    LEFT = "left"


@dataclass(frozen=True)
class Units:
    hbar: float = 1.0
    c: float = 1.0

    def __post_init__(self):
        if not (self.hbar > 0 and self.c > 0):
            raise ValueError("hbar and c must be positive")


NATURAL = Units()


@dataclass(frozen=True)
class MassParameters:
    """Seed mass ``m_a`` (m1 or m3), physical mass ``m_b`` (m2 or m4), and units."""

    m_a: float
    m_b: float = 0.0
    seed_chirality: SeedChirality = SeedChirality.RIGHT
    units: Units = field(default=NATURAL)

    def __post_init__(self):
        object.__setattr__(self, "seed_chirality", SeedChirality(self.seed_chirality))
        if not self.m_a > 0:
            raise NonPositiveSeedMass(f"NonPositiveSeedMass: seed mass must be > 0, got {self.m_a!r}")
        if not self.m_b >= 0:
            raise ValueError(f"physical mass must be >= 0, got {self.m_b!r}")

    @property
    def hbar(self):
        return self.units.hbar

    @property
    def c(self):
        return self.units.c


def flip_sign(masses: MassParameters) -> MassParameters:
    """Copy of ``masses`` with ``m_a -> -m_a``, bypassing validation.

    Only for the gamma5 / PT symmetry checks; nothing else should build a
    negative seed mass.
    """
    out = object.__new__(MassParameters)
    object.__setattr__(out, "m_a", -masses.m_a)
    object.__setattr__(out, "m_b", masses.m_b)
    object.__setattr__(out, "seed_chirality", masses.seed_chirality)
    object.__setattr__(out, "units", masses.units)
    return out


@dataclass(frozen=True)
class FourMomentum:
    E: float
    p: tuple

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if len(p) != 3:
            raise ValueError("3-momentum must have three components")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "E", float(self.E))

    @property
    def pvec(self) -> np.ndarray:
        return np.array(self.p)

    @property
    def p_abs(self) -> float:
        return float(np.linalg.norm(self.p))

    def lower(self, units: Units = NATURAL) -> np.ndarray:
        """Covariant components ``p_mu = (E/c, -p)``."""
        return np.array([self.E / units.c, -self.p[0], -self.p[1], -self.p[2]])

    def shell_violation(self, m: float, units: Units = NATURAL) -> float:
        c = units.c
        return self.E**2 - c**2 * self.p_abs**2 - m**2 * c**4

    def is_on_shell(self, m: float = 0.0, tol: float = 1e-9, units: Units = NATURAL) -> bool:
        return abs(self.shell_violation(m, units)) < tol

    @classmethod
    def on_shell(cls, p, m: float = 0.0, sign: int = 1, units: Units = NATURAL) -> "FourMomentum":
        p = np.asarray(p, dtype=float)
        c = units.c
        E = sign * np.sqrt(c**2 * float(p @ p) + m**2 * c**4)
        return cls(E, tuple(p))


@dataclass(frozen=True, eq=False)
class WaveOperator:
    matrix: np.ndarray
    momentum: FourMomentum
    masses: MassParameters | None
    basis: GammaBasis

    def kinetic(self) -> np.ndarray:
        units = self.masses.units if self.masses is not None else NATURAL
        return self.basis.slash(self.momentum.lower(units))

    def mass_term(self) -> np.ndarray:
        if self.masses is None:
            return np.zeros((4, 4), dtype=np.complex128)
        return mass_matrix(self.masses, self.basis)

    def to_json(self) -> list:
        return matrix_to_json(self.matrix)


def matrix_to_json(m) -> list:
    """Row-major nested lists of ``[re, im]`` pairs."""
    return [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(m)]


def matrix_from_json(rows) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in rows], dtype=np.complex128)


def mass_matrix(masses: MassParameters, basis: GammaBasis) -> np.ndarray:
    """Mass part of the operator in momentum units (``hbar`` times the coefficient)."""
    c = masses.c
    seed = masses.m_a * c
    physical = masses.m_b**2 * c / masses.m_a
    if masses.seed_chirality is SeedChirality.RIGHT:
        return physical * basis.P_L + seed * basis.P_R
    return physical * basis.P_R + seed * basis.P_L


def two_component_factors(mom: FourMomentum, units: Units = NATURAL):
    """``(E - c sigma.p, E + c sigma.p)``; their product is ``(E^2 - c^2 p^2) I``."""
    sp = units.c * sigma_dot(mom.p)
    return mom.E * I2 - sp, mom.E * I2 + sp


def _default_basis(basis):
    return build_basis() if basis is None else basis


def generalized_operator(mom: FourMomentum, masses: MassParameters, basis: GammaBasis | None = None) -> WaveOperator:
    basis = _default_basis(basis)
    # negative m_a only arrives via flip_sign(); zero would divide below
    if masses.m_a == 0:
        raise NonPositiveSeedMass("NonPositiveSeedMass: seed mass must be > 0")
    kin = basis.slash(mom.lower(masses.units))
    return WaveOperator(kin - mass_matrix(masses, basis), mom, masses, basis)


def weyl_operator(mom: FourMomentum, basis: GammaBasis | None = None, units: Units = NATURAL) -> WaveOperator:
    """Pure kinetic operator ``gamma^mu p_mu``."""
    basis = _default_basis(basis)
    return WaveOperator(basis.slash(mom.lower(units)), mom, None, basis)


def massless_operator(
    mom: FourMomentum,
    m_seed: float,
    chirality=SeedChirality.RIGHT,
    basis: GammaBasis | None = None,
    units: Units = NATURAL,
) -> WaveOperator:
    """Operator with the physical mass set to zero: ``gamma^mu p_mu - m c P_R`` (or ``P_L``)."""
    masses = MassParameters(m_seed, 0.0, SeedChirality(chirality), units)
    return generalized_operator(mom, masses, basis)


def hamiltonian(mom: FourMomentum, masses: MassParameters, basis: GammaBasis | None = None) -> np.ndarray:
    """``H = c alpha.p + c gamma^0 M`` in energy units, ``M`` the mass part of the operator."""
    basis = _default_basis(basis)
    c = masses.c
    return c * basis.alpha_dot(mom.p) + c * basis.gamma[0] @ mass_matrix(masses, basis)


def weyl_hamiltonian(mom: FourMomentum, basis: GammaBasis | None = None, units: Units = NATURAL) -> np.ndarray:
    basis = _default_basis(basis)
    return units.c * basis.alpha_dot(mom.p)


def massless_hamiltonian(
    mom: FourMomentum,
    m_seed: float,
    chirality=SeedChirality.RIGHT,
    basis: GammaBasis | None = None,
    units: Units = NATURAL,
) -> np.ndarray:
    """Hamiltonian of the physical-mass-zero family; ``m_seed = 0`` gives the Weyl case."""
    if m_seed == 0:
        return weyl_hamiltonian(mom, basis, units)
    masses = MassParameters(abs(m_seed), 0.0, SeedChirality(chirality), units)
    if m_seed < 0:
        masses = flip_sign(masses)
    return hamiltonian(mom, masses, basis)


def chiral_invariance_check(masses: MassParameters | None, sample_momenta, basis: GammaBasis | None = None, atol: float = 1e-12) -> bool:
    """True iff ``gamma5 D(p) gamma5 = -D(p)`` for every sample; ``masses=None`` means pure kinetic."""
    basis = _default_basis(basis)
    sample_momenta = list(sample_momenta)
    if not sample_momenta:
        raise ValueError("at least one sample momentum is required")
    g5 = basis.gamma5
    for mom in sample_momenta:
        if masses is None:
            D = weyl_operator(mom, basis).matrix
        else:
            D = generalized_operator(mom, masses, basis).matrix
        if max_abs(g5 @ D @ g5 + D) > atol:
            return False
    return True


def dirac_operator(mom: FourMomentum, m: float, basis: GammaBasis | None = None, units: Units = NATURAL) -> np.ndarray:
    """Textbook ``gamma^mu p_mu - m c`` in momentum units."""
    basis = _default_basis(basis)
    return basis.slash(mom.lower(units)) - m * units.c * I4
