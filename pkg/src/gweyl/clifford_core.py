"""Pauli and Dirac gamma matrices in the standard and spinorial representations.

Conventions
-----------
Metric ``g = diag(+1, -1, -1, -1)`` and ``gamma5 = s * i g0 g1 g2 g3`` with the
sign ``s = +1`` by default (``GAMMA5_SIGN``).  With ``s = +1``:

* Standard (Dirac):  ``g0 = diag(I, -I)``, ``gk = [[0, sk], [-sk, 0]]``,
  ``gamma5 = [[0, I], [I, 0]]``.
* Spinorial (chiral): ``g0 = [[0, I], [I, 0]]``, ``gk = [[0, sk], [-sk, 0]]``,
  ``gamma5 = diag(-I, I)``, so ``P_L`` keeps the upper two-spinor and ``P_R``
  the lower one.

A 4-spinor ``(phi_R + phi_L, phi_R - phi_L)`` in the standard representation
maps to ``(phi_L, phi_R)`` in the spinorial one (up to ``sqrt(2)``) under the
fixed unitary intertwiner ``U = [[I, -I], [I, I]] / sqrt(2)``.

Every entry of every basis matrix lies in ``{0, +-1, +-i}``, so the algebraic
identities hold exactly in floating point.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ShapeError

DEFAULT_ATOL = 1e-12
GAMMA5_SIGN = 1

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_ALLOWED_SHAPES = ((2, 2), (4, 4))


class Representation(enum.Enum):
    STANDARD = "standard"
    SPINORIAL = "spinorial"


def complex_matrix(data) -> np.ndarray:
    """Return ``data`` as a read-only complex 2x2 or 4x4 array."""
    m = np.array(data, dtype=np.complex128)
    if m.shape not in _ALLOWED_SHAPES:
        raise ShapeError(f"only 2x2 and 4x4 matrices are supported, got {m.shape}")
    m.setflags(write=False)
    return m


def matrices_equal(a, b, atol: float = DEFAULT_ATOL) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return bool(np.max(np.abs(a - b), initial=0.0) <= atol)


def max_abs(m) -> float:
    return float(np.max(np.abs(m), initial=0.0))


def _check_pair(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ShapeError(f"shape mismatch {a.shape} vs {b.shape}")
    return a, b


def anticommutator(a, b) -> np.ndarray:
    a, b = _check_pair(a, b)
    return a @ b + b @ a


def commutator(a, b) -> np.ndarray:
    a, b = _check_pair(a, b)
    return a @ b - b @ a


def _frozen(m):
    m = np.array(m, dtype=np.complex128)
    m.setflags(write=False)
    return m


I2 = _frozen(np.eye(2))
I4 = _frozen(np.eye(4))
SIGMA = (
    _frozen([[0, 1], [1, 0]]),
    _frozen([[0, -1j], [1j, 0]]),
    _frozen([[1, 0], [0, -1]]),
)


def sigma_dot(v) -> np.ndarray:
    """Return ``sigma . v`` for a real or complex 3-vector."""
    return v[0] * SIGMA[0] + v[1] * SIGMA[1] + v[2] * SIGMA[2]


def _blocks(a, b, c, d):
    return np.block([[a, b], [c, d]])


@dataclass(frozen=True, eq=False)
class GammaBasis:
    """A concrete Dirac algebra: gamma^0..gamma^3, gamma^5, alpha^k, chiral projectors."""

    representation: Representation
    gamma: tuple
    gamma5: np.ndarray
    alpha: tuple
    P_R: np.ndarray
    P_L: np.ndarray
    sigma: tuple = SIGMA
    gamma5_sign: int = GAMMA5_SIGN

    def slash(self, p_lower) -> np.ndarray:
        """``gamma^mu p_mu`` for a covariant 4-vector ``(p_0, p_1, p_2, p_3)``."""
        return sum(p_lower[mu] * self.gamma[mu] for mu in range(4))

    def alpha_dot(self, v) -> np.ndarray:
        return v[0] * self.alpha[0] + v[1] * self.alpha[1] + v[2] * self.alpha[2]

    def gamma_dot(self, v) -> np.ndarray:
        """Spatial ``gamma^k v^k`` (no metric sign)."""
        return v[0] * self.gamma[1] + v[1] * self.gamma[2] + v[2] * self.gamma[3]


def _gammas(rep: Representation):
    Z = np.zeros((2, 2))
    if rep is Representation.STANDARD:
        g0 = _blocks(I2, Z, Z, -I2)
    elif rep is Representation.SPINORIAL:
        g0 = _blocks(Z, I2, I2, Z)
    else:
        raise ValueError(f"unknown representation {rep!r}")
    gk = [_blocks(Z, s, -s, Z) for s in SIGMA]
    return [g0] + gk


@lru_cache(maxsize=None)
def build_basis(representation=Representation.STANDARD, gamma5_sign: int = GAMMA5_SIGN) -> GammaBasis:
    rep = Representation(representation)
    if gamma5_sign not in (1, -1):
        raise ValueError("gamma5_sign must be +1 or -1")
    g = [_frozen(x) for x in _gammas(rep)]
    g5 = _frozen(gamma5_sign * 1j * g[0] @ g[1] @ g[2] @ g[3])
    alpha = tuple(_frozen(g[0] @ g[k]) for k in (1, 2, 3))
    return GammaBasis(
        representation=rep,
        gamma=tuple(g),
        gamma5=g5,
        alpha=alpha,
        P_R=_frozen((I4 + g5) / 2),
        P_L=_frozen((I4 - g5) / 2),
        gamma5_sign=gamma5_sign,
    )


_U_STD_TO_SPIN = _frozen(np.block([[I2, -I2], [I2, I2]]) / np.sqrt(2.0))


def intertwiner(src: GammaBasis, dst: GammaBasis) -> np.ndarray:
    """Unitary ``U`` with ``U gamma^mu_src U^-1 = gamma^mu_dst``."""
    if src.representation is dst.representation:
        return I4
    if src.representation is Representation.STANDARD:
        return _U_STD_TO_SPIN
    return _frozen(_U_STD_TO_SPIN.conj().T)


def change_representation(m, src: GammaBasis, dst: GammaBasis) -> np.ndarray:
    if src.gamma5_sign != dst.gamma5_sign:
        raise ValueError("bases use different gamma5 sign conventions")
    U = intertwiner(src, dst)
    return U @ np.asarray(m) @ U.conj().T


def change_spinor_representation(v, src: GammaBasis, dst: GammaBasis) -> np.ndarray:
    return intertwiner(src, dst) @ np.asarray(v)


def _validate_intertwiner():
    for sign in (1, -1):
        std = build_basis(Representation.STANDARD, sign)
        spin = build_basis(Representation.SPINORIAL, sign)
        U = intertwiner(std, spin)
        if not matrices_equal(U @ U.conj().T, I4, 1e-15):
            raise RuntimeError("intertwiner is not unitary")
        for a, b in zip(std.gamma + (std.gamma5,), spin.gamma + (spin.gamma5,)):
            if not matrices_equal(U @ a @ U.conj().T, b, 1e-15):
                raise RuntimeError("intertwiner does not map standard gammas onto spinorial ones")


_validate_intertwiner()


def clifford_residuals(basis: GammaBasis) -> dict:
    """Max-abs residuals of every algebraic identity a basis must satisfy."""
    g = basis.gamma
    out = {}
    out["anticommutators"] = max(
        max_abs(anticommutator(g[mu], g[nu]) - 2 * METRIC[mu, nu] * I4)
        for mu in range(4)
        for nu in range(mu, 4)
    )
    out["gamma5_square"] = max_abs(basis.gamma5 @ basis.gamma5 - I4)
    out["gamma5_anticommutes"] = max(max_abs(anticommutator(basis.gamma5, gm)) for gm in g)
    out["gamma5_product"] = max_abs(
        basis.gamma5 - basis.gamma5_sign * 1j * g[0] @ g[1] @ g[2] @ g[3]
    )
    out["projector_idempotent"] = max(
        max_abs(basis.P_R @ basis.P_R - basis.P_R), max_abs(basis.P_L @ basis.P_L - basis.P_L)
    )
    out["projector_orthogonal"] = max(max_abs(basis.P_R @ basis.P_L), max_abs(basis.P_L @ basis.P_R))
    out["projector_complete"] = max_abs(basis.P_R + basis.P_L - I4)
    eps = np.zeros((3, 3, 3))
    eps[0, 1, 2] = eps[1, 2, 0] = eps[2, 0, 1] = 1
    eps[0, 2, 1] = eps[2, 1, 0] = eps[1, 0, 2] = -1
    pauli = 0.0
    for i in range(3):
        for j in range(3):
            rhs = (i == j) * I2 + 1j * sum(eps[i, j, k] * SIGMA[k] for k in range(3))
            pauli = max(pauli, max_abs(SIGMA[i] @ SIGMA[j] - rhs))
    out["pauli_algebra"] = pauli
    return out
