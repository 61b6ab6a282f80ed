"""Chiral helicity ``eta = alpha . p_hat`` and the oscillations it undergoes.

For the physical-mass-zero family ``H = c alpha.p + m1 c^2 gamma^0 P_R`` the
chiral helicity is not conserved, while ``H^2 = c^2 p^2`` still holds exactly.
Starting from a normalized ``eta = +1`` state ``Psi0``:

    Psi(t) = exp(-i c|p| t / hbar) Psi0  -  i (m1 c / |p|) sin(c|p| t / hbar) gamma^0 P_R Psi0

so the ``eta = -1`` weight oscillates at ``2 c|p| / hbar`` and the raw norm is
not conserved (``H`` is not hermitian unless ``m1 = m2``).  Probabilities here
are projections renormalized by the instantaneous raw norm; the raw norm is
kept separately in the trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .clifford_core import GammaBasis, I4, Representation, build_basis, change_spinor_representation, commutator, max_abs
from .errors import NonDiagonalizable, OffShell, ZeroMomentumDirection
from .operators import NATURAL, FourMomentum, SeedChirality, Units, massless_hamiltonian
from .serialize import csv_text, json_text
from .states import SpinorState

UNIT_TOL = 1e-12
DEFAULT_SAMPLES = 4096
DEFAULT_PERIODS = 20
DEFAULT_PAD = 8


def unit_direction(pvec) -> np.ndarray:
    p = np.asarray(pvec, dtype=float)
    n = float(np.linalg.norm(p))
    if n == 0:
        raise ZeroMomentumDirection("ZeroMomentumDirection: helicity is undefined for p = 0")
    return p / n


def _check_unit(p_hat):
    p_hat = np.asarray(p_hat, dtype=float)
    n = float(np.linalg.norm(p_hat))
    if n == 0:
        raise ZeroMomentumDirection("ZeroMomentumDirection: helicity is undefined for p = 0")
    if abs(n - 1) > UNIT_TOL:
        raise ValueError(f"direction must be a unit vector, |p_hat| = {n!r}")
    return p_hat


def chiral_helicity_operator(p_hat, basis: GammaBasis | None = None) -> np.ndarray:
    basis = basis or build_basis(Representation.SPINORIAL)
    return basis.alpha_dot(_check_unit(p_hat))


def helicity_two_spinors(p_hat):
    """Eigenvectors ``(h+, h-)`` of ``sigma . p_hat``.

    For ``p_hat = (sin t cos f, sin t sin f, cos t)`` the main chart gives
    ``h+ = (cos(t/2), e^{if} sin(t/2))``; on the southern hemisphere the
    chart multiplied by ``e^{-if}`` is used instead, which stays regular at ``-z``.
    """
    p_hat = _check_unit(p_hat)
    theta = float(np.arctan2(np.hypot(p_hat[0], p_hat[1]), p_hat[2]))
    phi = float(np.arctan2(p_hat[1], p_hat[0]))
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    if p_hat[2] >= 0:
        hp = np.array([c, e * s])
        hm = np.array([-np.conj(e) * s, c])
    else:
        hp = np.array([np.conj(e) * c, s])
        hm = np.array([-s, e * c])
    return hp.astype(np.complex128), hm.astype(np.complex128)


@dataclass(frozen=True, eq=False)
class ChiralHelicityBasis:
    """Orthonormal ``eta = +-1`` states; index 0 is the upper (left-chiral) spinorial block."""

    p_hat: np.ndarray
    eta_op: np.ndarray
    up_states: tuple
    down_states: tuple
    basis: GammaBasis

    @property
    def projector_up(self) -> np.ndarray:
        return (I4 + self.eta_op) / 2

    @property
    def projector_down(self) -> np.ndarray:
        return (I4 - self.eta_op) / 2

    def up_matrix(self) -> np.ndarray:
        return np.column_stack([s.components for s in self.up_states])

    def down_matrix(self) -> np.ndarray:
        return np.column_stack([s.components for s in self.down_states])

    def decompose(self, state):
        """``(Psi_up, Psi_down)`` with ``Psi = Psi_up + Psi_down``."""
        v = np.asarray(state, dtype=np.complex128)
        return self.projector_up @ v, self.projector_down @ v


def build_chiral_helicity_basis(pvec, basis: GammaBasis | None = None) -> ChiralHelicityBasis:
    basis = basis or build_basis(Representation.SPINORIAL)
    p_hat = unit_direction(pvec)
    hp, hm = helicity_two_spinors(p_hat)
    z = np.zeros(2, dtype=np.complex128)
    # spinorial eta = diag(-sigma.p_hat, sigma.p_hat)
    up = [np.concatenate([hm, z]), np.concatenate([z, hp])]
    down = [np.concatenate([hp, z]), np.concatenate([z, hm])]
    spin = build_basis(Representation.SPINORIAL, basis.gamma5_sign)
    if basis.representation is not Representation.SPINORIAL:
        up = [change_spinor_representation(v, spin, basis) for v in up]
        down = [change_spinor_representation(v, spin, basis) for v in down]
    mom = FourMomentum(0.0, tuple(pvec))
    return ChiralHelicityBasis(
        p_hat=p_hat,
        eta_op=basis.alpha_dot(p_hat),
        up_states=tuple(SpinorState(v, mom, basis) for v in up),
        down_states=tuple(SpinorState(v, mom, basis) for v in down),
        basis=basis,
    )


def commutator_check(pvec, m1: float, basis: GammaBasis | None = None, units: Units = NATURAL) -> float:
    """``max|[K, alpha.p_hat] - 2 (m1 c / hbar) P_L (gamma . p_hat)|``.

    ``K = H / (hbar c)`` generates translations in ``x0 = c t``; this is the
    normalization under which the commutator carries the ``m1 c / hbar`` factor.
    ``m1 = 0`` is the Weyl case, where the commutator vanishes.
    """
    basis = basis or build_basis(Representation.SPINORIAL)
    p_hat = unit_direction(pvec)
    mom = FourMomentum(0.0, tuple(pvec))
    K = massless_hamiltonian(mom, m1, SeedChirality.RIGHT, basis, units) / (units.hbar * units.c)
    lhs = commutator(K, basis.alpha_dot(p_hat))
    rhs = 2 * (m1 * units.c / units.hbar) * basis.P_L @ basis.gamma_dot(p_hat)
    return max_abs(lhs - rhs)


def _shell_guard(mom: FourMomentum, units: Units, rtol=1e-9):
    v = mom.shell_violation(0.0, units)
    if abs(v) > rtol * max(1.0, mom.E**2):
        raise OffShell(f"OffShell: E^2 - c^2 p^2 = {v!r} on the massless shell", v)


def coupled_system_residual(
    state_up,
    state_down,
    mom: FourMomentum,
    m1: float,
    basis: GammaBasis | None = None,
    units: Units = NATURAL,
) -> float:
    """Max over ``eta`` of ``|gamma^mu p_mu Psi_eta - m1 c P_R Psi_{-eta}|`` (momentum units)."""
    basis = basis or build_basis(Representation.SPINORIAL)
    _shell_guard(mom, units)
    up = np.asarray(state_up, dtype=np.complex128)
    down = np.asarray(state_down, dtype=np.complex128)
    slash = basis.slash(mom.lower(units))
    mass = m1 * units.c * basis.P_R
    r_up = np.linalg.norm(slash @ up - mass @ down)
    r_down = np.linalg.norm(slash @ down - mass @ up)
    return float(max(r_up, r_down))


def add_chiral_interaction(H, V: float, chbasis: ChiralHelicityBasis) -> np.ndarray:
    """``H + V Pi_-`` with ``Pi_- = (1 - eta)/2``: only ``eta = -1`` states feel ``V``.

    The coupling form is a modelling choice; nothing beyond "acts on one
    helicity only" is implied by the physics being simulated.
    """
    V = float(V)
    return np.asarray(H) + V * chbasis.projector_down


def default_time_grid(p_abs: float, units: Units = NATURAL, samples: int = DEFAULT_SAMPLES, periods: int = DEFAULT_PERIODS):
    """``samples`` points spanning ``periods`` cycles of ``2 c|p|/hbar`` (endpoint excluded)."""
    omega = 2 * units.c * p_abs / units.hbar
    tmax = periods * 2 * np.pi / omega
    return np.arange(samples) * (tmax / samples)


def _hann(n):
    k = np.arange(n)
    return 0.5 - 0.5 * np.cos(2 * np.pi * k / n)


def _interp(mag, k):
    a, b, c = mag[k - 1], mag[k], mag[(k + 1) % len(mag)]
    if min(a, b, c) <= 0:
        return 0.0
    la, lb, lc = np.log(a), np.log(b), np.log(c)
    den = la - 2 * lb + lc
    return 0.0 if den == 0 else 0.5 * (la - lc) / den


def dominant_frequency(signal, dt: float, pad: int = DEFAULT_PAD):
    """Angular frequency of the strongest spectral line and the padded bin width.

    Hann window, zero padding by ``pad``, log-parabolic peak interpolation.
    Real signals have their mean removed first; a flat signal returns 0.
    """
    x = np.asarray(signal)
    n = len(x)
    npad = pad * n
    width = 2 * np.pi / (npad * dt)
    if np.isrealobj(x):
        x = x - x.mean()
        spec = np.abs(np.fft.rfft(x * _hann(n), npad))
        spec[0] = 0.0
        if spec.max() <= 1e-12 * n:
            return 0.0, width
        k = int(np.argmax(spec))
        if k == len(spec) - 1:
            return k * width, width
        return (k + _interp(spec, k)) * width, width
    spec = np.abs(np.fft.fft(x * _hann(n), npad))
    if spec.max() <= 1e-12 * n:
        return 0.0, width
    k = int(np.argmax(spec))
    f = k + _interp(spec, k)
    if f > npad / 2:
        f -= npad
    return abs(f) * width, width


@dataclass(frozen=True, eq=False)
class OscillationTrace:
    times: np.ndarray
    prob_up: np.ndarray
    prob_down: np.ndarray
    norm: np.ndarray
    amplitude_frequency: float
    probability_frequency: float
    bin_width: float
    parameters: dict = field(default_factory=dict)

    @property
    def fitted_frequency(self) -> float:
        return self.probability_frequency

    @property
    def norm_drift_max(self) -> float:
        return float(np.max(np.abs(self.norm - self.norm[0])))

    def to_csv(self) -> str:
        rows = zip(*(map(float, col) for col in (self.times, self.prob_up, self.prob_down, self.norm)))
        return csv_text(["t", "prob_up", "prob_down", "norm"], rows)

    def summary(self) -> dict:
        return {
            "amplitude_frequency": float(self.amplitude_frequency),
            "probability_frequency": float(self.probability_frequency),
            "fitted_frequency": float(self.fitted_frequency),
            "frequency_bin_width": float(self.bin_width),
            "norm_drift_max": self.norm_drift_max,
            "samples": int(len(self.times)),
            "parameters": self.parameters,
        }

    def to_json(self, include_series: bool = True) -> str:
        out = self.summary()
        if include_series:
            out["t"] = [float(x) for x in self.times]
            out["prob_up"] = [float(x) for x in self.prob_up]
            out["prob_down"] = [float(x) for x in self.prob_down]
            out["norm"] = [float(x) for x in self.norm]
        return json_text(out)


def propagate(H, initial, t_grid, hbar: float = 1.0) -> np.ndarray:
    """``Psi(t) = V exp(-i Lambda t / hbar) V^-1 Psi(0)``; rows of the result are times."""
    dec = linalg.eig(H)
    if not dec.diagonalizable:
        raise NonDiagonalizable(f"NonDiagonalizable: eigenvector condition {dec.condition:.3e}")
    c0 = np.linalg.solve(dec.vectors, np.asarray(initial, dtype=np.complex128))
    t = np.asarray(t_grid, dtype=float)
    phases = np.exp(-1j * np.outer(t, dec.values) / hbar)
    return (phases * c0) @ dec.vectors.T


def evolve(
    initial,
    H,
    t_grid,
    chbasis: ChiralHelicityBasis,
    hbar: float = 1.0,
    pad: int = DEFAULT_PAD,
    parameters: dict | None = None,
) -> OscillationTrace:
    t = np.asarray(t_grid, dtype=float)
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly ascending")
    psi = propagate(H, initial, t, hbar)
    U = chbasis.up_matrix()
    D = chbasis.down_matrix()
    amp_up = psi @ U.conj()
    amp_down = psi @ D.conj()
    w_up = np.sum(np.abs(amp_up) ** 2, axis=1)
    w_down = np.sum(np.abs(amp_down) ** 2, axis=1)
    norm = np.sqrt(np.sum(np.abs(psi) ** 2, axis=1))
    total = w_up + w_down
    with np.errstate(invalid="ignore", divide="ignore"):
        prob_up = np.where(total > 0, w_up / total, 0.0)
        prob_down = np.where(total > 0, w_down / total, 0.0)
    dt = t[1] - t[0]
    p_freq, width = dominant_frequency(prob_up, dt, pad)
    lead = int(np.argmax(np.abs(amp_up[0])))
    a_freq, _ = dominant_frequency(amp_up[:, lead], dt, pad)
    return OscillationTrace(t, prob_up, prob_down, norm, a_freq, p_freq, width, dict(parameters or {}))


def massless_prob_up(t, p_abs: float, m1: float, units: Units = NATURAL, flip_weight: float = 1.0):
    """Closed form ``1 / (1 + (m1 c/|p|)^2 w sin^2(c|p| t / hbar))`` for a normalized
    ``eta = +1`` start, ``w = |gamma^0 P_R Psi0|^2``."""
    s = np.sin(units.c * p_abs * np.asarray(t) / units.hbar)
    return 1.0 / (1.0 + (m1 * units.c / p_abs) ** 2 * flip_weight * s**2)


def simulate_oscillation(
    pvec,
    m1: float,
    V: float = 0.0,
    t_grid=None,
    units: Units = NATURAL,
    basis: GammaBasis | None = None,
    start: int = 1,
    pad: int = DEFAULT_PAD,
) -> OscillationTrace:
    """Evolve the ``eta = +1`` state ``up_states[start]`` under the physical-mass-zero Hamiltonian.

    ``start=1`` (right-chiral block) is the state that actually oscillates;
    ``start=0`` is already a stationary state of ``H``.
    """
    basis = basis or build_basis(Representation.SPINORIAL)
    chb = build_chiral_helicity_basis(pvec, basis)
    mom = FourMomentum(0.0, tuple(pvec))
    H = massless_hamiltonian(mom, m1, SeedChirality.RIGHT, basis, units)
    if V:
        H = add_chiral_interaction(H, V, chb)
    if t_grid is None:
        t_grid = default_time_grid(mom.p_abs, units)
    params = {
        "p": [float(x) for x in mom.p],
        "m1": float(m1),
        "V": float(V),
        "hbar": float(units.hbar),
        "c": float(units.c),
        "representation": basis.representation.value,
        "initial_state": f"up_states[{start}]",
    }
    return evolve(chb.up_states[start].components, H, t_grid, chb, units.hbar, pad, params)


def gamma5_partner_residual(pvec, m1: float, basis: GammaBasis | None = None, units: Units = NATURAL) -> float:
    """Check that ``eta`` maps eigenstates of ``H(m1)`` onto eigenstates of ``H(-m1)`` at the same energy.

    Returns ``max |H(-m1) w - E w|`` over the normalized images ``w = eta v``.
    """
    basis = basis or build_basis(Representation.SPINORIAL)
    mom = FourMomentum(0.0, tuple(pvec))
    eta = basis.alpha_dot(unit_direction(pvec))
    Hp = massless_hamiltonian(mom, m1, SeedChirality.RIGHT, basis, units)
    Hm = massless_hamiltonian(mom, -m1, SeedChirality.RIGHT, basis, units)
    dec = linalg.eig(Hp)
    worst = 0.0
    for i, E in enumerate(dec.values):
        w = eta @ dec.vectors[:, i]
        w = w / np.linalg.norm(w)
        worst = max(worst, float(np.linalg.norm(Hm @ w - E * w)))
    return worst


def opposite_energy_overlap(pvec, m1: float, basis: GammaBasis | None = None, units: Units = NATURAL) -> float:
    """Smallest overlap of ``eta v`` (``v`` a ``+|p|`` eigenstate of ``H(m1)``) with the ``-|p|`` eigenspace of the same ``H``."""
    basis = basis or build_basis(Representation.SPINORIAL)
    mom = FourMomentum(0.0, tuple(pvec))
    eta = basis.alpha_dot(unit_direction(pvec))
    H = massless_hamiltonian(mom, m1, SeedChirality.RIGHT, basis, units)
    dec = linalg.eig(H)
    pos = dec.vectors[:, dec.values.real > 0]
    neg, _ = np.linalg.qr(dec.vectors[:, dec.values.real < 0])
    worst = 1.0
    for v in pos.T:
        w = eta @ v
        w = w / np.linalg.norm(w)
        worst = min(worst, float(np.linalg.norm(neg.conj().T @ w)))
    return worst
