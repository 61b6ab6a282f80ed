"""Dispersion, Hamiltonian eigenstructure, and the chiral-scaling map to the Dirac operator."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .clifford_core import GammaBasis, Representation, build_basis, max_abs
from .errors import MasslessLimit
from .operators import (
    FourMomentum,
    MassParameters,
    SeedChirality,
    WaveOperator,
    dirac_operator,
    generalized_operator,
    hamiltonian,
    mass_matrix,
)
from .states import SpinorState


def determinant(op) -> complex:
    """Cofactor-expansion determinant of a wave operator (or a bare matrix)."""
    m = op.matrix if isinstance(op, WaveOperator) else op
    return linalg.det_cofactor(m)


def conjugate_factor(mom: FourMomentum, masses: MassParameters, basis: GammaBasis | None = None) -> np.ndarray:
    """``D~ = gamma^mu p_mu + gamma^0 M gamma^0`` so that ``D D~ = (p^2 - m_b^2 c^2) I``."""
    basis = basis or build_basis()
    M = mass_matrix(masses, basis)
    return basis.slash(mom.lower(masses.units)) + basis.gamma[0] @ M @ basis.gamma[0]


def invariant_mass_gap(mom: FourMomentum, masses: MassParameters) -> float:
    """``p_mu p^mu - (m_b c)^2`` in momentum units squared."""
    c = masses.c
    return (mom.E / c) ** 2 - mom.p_abs**2 - (masses.m_b * c) ** 2


def det_closed_form(mom: FourMomentum, masses: MassParameters) -> float:
    return invariant_mass_gap(mom, masses) ** 2


def dispersion_roots(pvec, masses: MassParameters) -> list:
    """Real energies solving ``det D(E, p) = 0``, with multiplicity, largest first."""
    pvec = np.asarray(pvec, dtype=float)
    c = masses.c
    E = float(np.sqrt(c**2 * float(pvec @ pvec) + masses.m_b**2 * c**4))
    roots = [E, E, -E, -E]
    basis = build_basis()
    for r in (E, -E):
        D = generalized_operator(FourMomentum(r, tuple(pvec)), masses, basis).matrix
        d = determinant(D)
        if abs(d) > 1e-10 * max(1.0, max_abs(D)) ** 4:
            raise ArithmeticError(f"dispersion root {r} does not annihilate the determinant ({d})")
    return roots


@dataclass(frozen=True, eq=False)
class SpectrumResult:
    eigenvalues: np.ndarray
    eigenvectors: tuple
    diagonalizable: bool
    max_residual: float
    condition: float
    hermitian: bool

    @property
    def vector_matrix(self) -> np.ndarray:
        return np.column_stack([v.components for v in self.eigenvectors])


def spectrum_of(H, momentum: FourMomentum | None = None, basis: GammaBasis | None = None) -> SpectrumResult:
    dec = linalg.eig(H)
    vecs = tuple(SpinorState(dec.vectors[:, i], momentum, basis) for i in range(dec.vectors.shape[1]))
    herm = bool(max_abs(np.asarray(H) - np.asarray(H).conj().T) <= 1e-12 * max(1.0, max_abs(H)))
    return SpectrumResult(dec.values, vecs, dec.diagonalizable, dec.max_residual, dec.condition, herm)


def hamiltonian_spectrum(pvec, masses: MassParameters, basis: GammaBasis | None = None) -> SpectrumResult:
    basis = basis or build_basis()
    mom = FourMomentum(0.0, tuple(pvec))
    return spectrum_of(hamiltonian(mom, masses, basis), mom, basis)


@dataclass(frozen=True, eq=False)
class EquivalencePair:
    left: np.ndarray
    right: np.ndarray
    residual: float

    @property
    def right_max(self) -> float:
        return max_abs(self.right)


def _equivalence_residual(L, R, masses, basis, momenta) -> float:
    worst = 0.0
    for mom in momenta:
        D = generalized_operator(mom, masses, basis).matrix
        target = dirac_operator(mom, masses.m_b, basis, masses.units)
        worst = max(worst, max_abs(L @ D @ R - target))
    return worst


def random_momenta(rng, n, span=10.0):
    return [FourMomentum(rng.uniform(-span, span), tuple(rng.uniform(-span, span, 3))) for _ in range(n)]


def equivalence_transform(
    masses: MassParameters,
    basis: GammaBasis | None = None,
    samples: int = 10,
    seed: int = 0,
    tol: float = 1e-10,
) -> EquivalencePair:
    """Chiral scalings ``L, R`` with ``L D_gen R = gamma^mu p_mu - m_b c``.

    Right-seeded: ``L = P_L + (m_b/m_a) P_R``, ``R = P_R + (m_a/m_b) P_L``;
    left-seeded mirrors ``P_L <-> P_R``.  The default basis is spinorial, where
    both matrices are diagonal and ``max|R_ij| = max(1, m_a/m_b)``.
    """
    if not masses.m_b > 0:
        raise MasslessLimit(
            "MasslessLimit: no chiral scaling reaches the Dirac operator at zero physical mass "
            "(the transform's elements diverge as m_b -> 0)"
        )
    basis = basis or build_basis(Representation.SPINORIAL)
    ratio = masses.m_b / masses.m_a
    if masses.seed_chirality is SeedChirality.RIGHT:
        L = basis.P_L + ratio * basis.P_R
        R = basis.P_R + basis.P_L / ratio
    else:
        L = basis.P_R + ratio * basis.P_L
        R = basis.P_L + basis.P_R / ratio
    rng = np.random.default_rng(seed)
    residual = _equivalence_residual(L, R, masses, basis, random_momenta(rng, samples))
    if residual > tol:
        raise ArithmeticError(f"equivalence residual {residual:.3e} exceeds {tol:.1e}")
    return EquivalencePair(L, R, residual)


def check_equivalence(pair: EquivalencePair, masses: MassParameters, momenta, basis: GammaBasis | None = None) -> float:
    """Residual of ``L D_gen R - D_Dirac`` on caller-supplied momenta."""
    basis = basis or build_basis(Representation.SPINORIAL)
    return _equivalence_residual(pair.left, pair.right, masses, basis, momenta)
