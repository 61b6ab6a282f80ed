"""Replay of the two-component construction that produces the generalized equations.

Starting from a two-spinor ``psi`` on the ``m_b`` mass shell, the right-seeded
route sets ``phi_L = psi`` and ``phi_R = (E/c + sigma.p) psi / (m_a c)``; the
left-seeded route sets ``phi_R = psi`` and ``phi_L = (E/c - sigma.p) psi / (m_a c)``.
Both assemble ``Psi = (phi_R + phi_L, phi_R - phi_L)`` in the standard
representation, which the corresponding 4x4 operator must annihilate.

The construction is tied to the standard representation with the default
``gamma5`` sign; it does not take a basis argument.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .clifford_core import I2, Representation, build_basis, max_abs, sigma_dot
from .errors import NonPositiveSeedMass, OffShell
from .operators import NATURAL, FourMomentum, MassParameters, SeedChirality, Units, generalized_operator, two_component_factors
from .states import SpinorState

SHELL_RTOL = 1e-9


@dataclass(frozen=True, eq=False)
class TwoSpinor:
    components: np.ndarray
    momentum: FourMomentum

    def __post_init__(self):
        v = np.array(self.components, dtype=np.complex128).reshape(-1)
        if v.shape != (2,) or not np.all(np.isfinite(v)):
            raise ValueError("a two-spinor needs two finite components")
        v.setflags(write=False)
        object.__setattr__(self, "components", v)


def verify_factorization(E: float, pvec, units: Units = NATURAL) -> float:
    """``max|(E - c sigma.p)(E + c sigma.p) - (E^2 - c^2 p^2) I|``."""
    mom = FourMomentum(E, tuple(pvec))
    a, b = two_component_factors(mom, units)
    return max_abs(a @ b - (E**2 - units.c**2 * mom.p_abs**2) * I2)


def shell_violation(psi: TwoSpinor, masses: MassParameters) -> float:
    return psi.momentum.shell_violation(masses.m_b, masses.units)


def _check(psi: TwoSpinor, masses: MassParameters, strict: bool = True):
    if masses.m_a <= 0:
        raise NonPositiveSeedMass(f"NonPositiveSeedMass: seed mass must be > 0, got {masses.m_a!r}")
    if strict:
        v = shell_violation(psi, masses)
        if abs(v) > SHELL_RTOL * max(1.0, psi.momentum.E**2):
            raise OffShell(f"OffShell: seed violates the m_b shell by {v!r}", v)


def chiral_pair(psi: TwoSpinor, masses: MassParameters):
    """``(phi_R, phi_L)`` produced from the seed."""
    mom = psi.momentum
    c = masses.c
    sp = sigma_dot(mom.p)
    k = mom.E / c
    x = psi.components
    if masses.seed_chirality is SeedChirality.RIGHT:
        return (k * I2 + sp) @ x / (masses.m_a * c), x.copy()
    return x.copy(), (k * I2 - sp) @ x / (masses.m_a * c)


def assemble(phi_R, phi_L) -> np.ndarray:
    return np.concatenate([phi_R + phi_L, phi_R - phi_L])


def split(Psi):
    """Inverse of :func:`assemble`: ``(phi_R, phi_L)``."""
    Psi = np.asarray(Psi)
    return (Psi[:2] + Psi[2:]) / 2, (Psi[:2] - Psi[2:]) / 2


def _build(psi, masses, want):
    if masses.seed_chirality is not want:
        raise ValueError(f"expected {want.value}-seeded masses, got {masses.seed_chirality.value}")
    _check(psi, masses)
    phi_R, phi_L = chiral_pair(psi, masses)
    return SpinorState(assemble(phi_R, phi_L), psi.momentum, build_basis(Representation.STANDARD))


def build_four_spinor_right(psi: TwoSpinor, masses: MassParameters) -> SpinorState:
    return _build(psi, masses, SeedChirality.RIGHT)


def build_four_spinor_left(psi: TwoSpinor, masses: MassParameters) -> SpinorState:
    return _build(psi, masses, SeedChirality.LEFT)


def build_four_spinor(psi: TwoSpinor, masses: MassParameters) -> SpinorState:
    return _build(psi, masses, masses.seed_chirality)


def operator_residual(state: SpinorState, masses: MassParameters) -> float:
    """``|D(p) Psi| / |Psi|`` (0 for the zero spinor)."""
    D = generalized_operator(state.momentum, masses, build_basis(Representation.STANDARD)).matrix
    n = state.norm
    if n == 0:
        return 0.0
    return float(np.linalg.norm(D @ state.components) / n)


def first_order_residuals(psi: TwoSpinor, masses: MassParameters, strict: bool = True):
    """Residuals of the two coupled two-component equations, checked separately.

    Right-seeded:  ``(E/c - sigma.p) phi_R = (m_b^2 c / m_a) phi_L`` and
    ``(E/c + sigma.p) phi_L = m_a c phi_R``; left-seeded swaps ``R <-> L``
    and the sign of ``sigma.p``.
    """
    _check(psi, masses, strict)
    mom = psi.momentum
    c = masses.c
    k = mom.E / c
    sp = sigma_dot(mom.p)
    phi_R, phi_L = chiral_pair(psi, masses)
    coupling = masses.m_b**2 * c / masses.m_a
    seed = masses.m_a * c
    if masses.seed_chirality is SeedChirality.RIGHT:
        first = (k * I2 - sp) @ phi_R - coupling * phi_L
        second = (k * I2 + sp) @ phi_L - seed * phi_R
    else:
        first = (k * I2 + sp) @ phi_L - coupling * phi_R
        second = (k * I2 - sp) @ phi_R - seed * phi_L
    return float(np.linalg.norm(first)), float(np.linalg.norm(second))


def roundtrip_check(psi: TwoSpinor, masses: MassParameters, strict: bool = True) -> float:
    """Max residual of the two first-order equations; ``strict=False`` admits off-shell seeds."""
    return max(first_order_residuals(psi, masses, strict))
