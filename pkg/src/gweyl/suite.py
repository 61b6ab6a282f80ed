"""Named invariant checks run by ``gweyl verify``."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import derivation, helicity_dynamics as hd, linalg, spectral
from .clifford_core import I4, Representation, build_basis, change_representation, clifford_residuals, max_abs
from .operators import (
    FourMomentum,
    MassParameters,
    SeedChirality,
    Units,
    chiral_invariance_check,
    dirac_operator,
    flip_sign,
    generalized_operator,
    hamiltonian,
    mass_matrix,
    massless_hamiltonian,
)


@dataclass(frozen=True)
class Check:
    name: str
    value: float
    threshold: float
    kind: str = "max"  # "max": value < threshold; "min": value > threshold

    @property
    def passed(self) -> bool:
        if not np.isfinite(self.value):
            return False
        if self.kind == "max":
            return self.value < self.threshold
        return self.value > self.threshold

    def row(self):
        return [self.name, float(self.value), float(self.threshold), self.kind, "pass" if self.passed else "FAIL"]


def _rand_mom(rng, span=10.0):
    return FourMomentum(rng.uniform(-span, span), tuple(rng.uniform(-span, span, 3)))


def _rand_dir(rng):
    v = rng.standard_normal(3)
    return v / np.linalg.norm(v)


def run_verification(
    m1: float = 1.0,
    m2: float = 0.5,
    units: Units = Units(),
    representation=Representation.SPINORIAL,
    gamma5_sign: int = 1,
    seed: int = 0,
    samples: int = 1000,
    tolerance: float | None = None,
) -> list:
    """Run every suite and return the list of :class:`Check` records.

    ``tolerance`` replaces the threshold of every upper-bound check.
    """
    masses = MassParameters(m1, m2, SeedChirality.RIGHT, units)
    rng = np.random.default_rng(seed)
    basis = build_basis(representation, gamma5_sign)
    spectral_samples = max(1, min(samples, 100))
    out = []

    def add(name, value, threshold, kind="max"):
        if tolerance is not None and kind == "max":
            threshold = tolerance
        out.append(Check(name, float(value), float(threshold), kind))

    # Clifford algebra
    bases = {r: build_basis(r, gamma5_sign) for r in Representation}
    pauli = 0.0
    for rep, b in bases.items():
        res = clifford_residuals(b)
        pauli = max(pauli, res.pop("pauli_algebra"))
        for key, val in res.items():
            add(f"clifford.{rep.value}.{key}", val, 1e-14)
    add("clifford.pauli_algebra", pauli, 1e-14)
    std, spin = bases[Representation.STANDARD], bases[Representation.SPINORIAL]
    A = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
    add("intertwiner.roundtrip", max_abs(change_representation(change_representation(A, std, spin), spin, std) - A), 1e-14)
    add(
        "intertwiner.gammas",
        max(max_abs(change_representation(a, std, spin) - b) for a, b in zip(std.gamma, spin.gamma)),
        1e-14,
    )

    # two-component factorization
    worst = 0.0
    for _ in range(samples):
        E, *p = rng.uniform(-10, 10, 4)
        worst = max(worst, derivation.verify_factorization(E, p, units))
    add("factorization.two_component", worst, 1e-10)

    # operators
    dirac_masses = MassParameters(m1, m1, SeedChirality.RIGHT, units)
    worst_dirac = worst_h = worst_duality = 0.0
    moms = [_rand_mom(rng) for _ in range(samples)]
    for mom in moms:
        D = generalized_operator(mom, dirac_masses, basis).matrix
        worst_dirac = max(worst_dirac, max_abs(D - dirac_operator(mom, m1, basis, units)))
        Dg = generalized_operator(mom, masses, basis).matrix
        H = hamiltonian(mom, masses, basis)
        worst_h = max(worst_h, max_abs(units.c * basis.gamma[0] @ Dg + H - mom.E * I4) / max(1.0, abs(mom.E)))
    left = MassParameters(m1, m2, SeedChirality.LEFT, units)
    worst_duality = max_abs(basis.gamma[0] @ mass_matrix(masses, basis) @ basis.gamma[0] - mass_matrix(left, basis))
    add("operators.dirac_recovery", worst_dirac, 1e-14)
    add("operators.hamiltonian_consistency", worst_h, 1e-12)
    add("operators.seed_duality", worst_duality, 1e-14)
    g5 = basis.gamma5
    breaking = min(max_abs(g5 @ generalized_operator(m, masses, basis).matrix @ g5 + generalized_operator(m, masses, basis).matrix) for m in moms[:10])
    add("operators.chiral_symmetry_breaking", breaking, 1e-6, kind="min")
    add(
        "operators.weyl_chiral_invariance",
        0.0 if chiral_invariance_check(None, moms[:10], basis) else 1.0,
        0.5,
    )
    rest = spectral.hamiltonian_spectrum((0.0, 0.0, 0.0), dirac_masses, basis)
    mc2 = m1 * units.c**2
    add("spectral.dirac_rest_energies", linalg.multiset_distance(rest.eigenvalues, [mc2, mc2, -mc2, -mc2]), 1e-10)

    # dispersion
    worst = 0.0
    for mom in moms:
        det = spectral.determinant(generalized_operator(mom, masses, basis))
        ref = spectral.det_closed_form(mom, masses)
        worst = max(worst, abs(det - ref) / max(abs(ref), 1e-300))
    add("spectral.determinant_closed_form", worst, 1e-8)
    massless = MassParameters(m1, 0.0, SeedChirality.RIGHT, units)
    worst_four = worst_disp = worst_rep = 0.0
    for _ in range(spectral_samples):
        p = rng.uniform(-10, 10, 3)
        e = units.c * np.linalg.norm(p)
        s0 = spectral.hamiltonian_spectrum(p, massless, basis)
        worst_four = max(worst_four, linalg.multiset_distance(s0.eigenvalues, [e, e, -e, -e]))
        s = spectral.hamiltonian_spectrum(p, masses, basis)
        worst_disp = max(worst_disp, linalg.multiset_distance(s.eigenvalues, spectral.dispersion_roots(p, masses)))
        other = bases[Representation.STANDARD if basis.representation is Representation.SPINORIAL else Representation.SPINORIAL]
        worst_rep = max(worst_rep, linalg.multiset_distance(s.eigenvalues, spectral.hamiltonian_spectrum(p, masses, other).eigenvalues))
    add("spectral.massless_four_states", worst_four, 1e-9)
    add("spectral.eigen_vs_dispersion", worst_disp, 1e-9)
    add("spectral.representation_independence", worst_rep, 1e-9)
    add("spectral.mass_sign_flip", _flip_distance((0.4, -1.1, 0.7), m1, basis, units), 1e-9)

    # chiral helicity
    worst_c = worst_11 = 0.0
    for _ in range(spectral_samples):
        p = _rand_dir(rng) * rng.uniform(0.1, 10)
        m = rng.uniform(0.01, 10)
        worst_c = max(worst_c, hd.commutator_check(p, m, basis, units))
        chb = hd.build_chiral_helicity_basis(p, basis)
        H = massless_hamiltonian(FourMomentum(0.0, tuple(p)), m, SeedChirality.RIGHT, basis, units)
        dec = linalg.eig(H)
        for i, E in enumerate(dec.values):
            up, down = chb.decompose(dec.vectors[:, i])
            mom = FourMomentum(E.real, tuple(p))
            worst_11 = max(worst_11, hd.coupled_system_residual(up, down, mom, m, basis, units))
    add("helicity.commutator", worst_c, 1e-12)
    # exact zero expected in the Weyl limit
    add("helicity.commutator_weyl", hd.commutator_check((0.3, -0.4, 1.2), 0.0, basis, units), 1e-300)
    add("helicity.coupled_system", worst_11, 1e-10)
    add("helicity.gamma5_partner", hd.gamma5_partner_residual((0.2, 0.5, -1.0), m1, basis, units), 1e-10)

    # equivalence divergence
    m2s = [m1 * 10.0**-k for k in range(4)]
    pairs = [spectral.equivalence_transform(MassParameters(m1, x, SeedChirality.RIGHT, units), seed=seed) for x in m2s]
    fresh = [_rand_mom(rng) for _ in range(10)]
    add(
        "equivalence.residual",
        max(spectral.check_equivalence(pr, MassParameters(m1, x, SeedChirality.RIGHT, units), fresh) for pr, x in zip(pairs, m2s)),
        1e-10,
    )
    ratios = [pairs[i + 1].right_max / pairs[i].right_max for i in range(len(pairs) - 1)]
    add("equivalence.divergence_ratio", max(abs(r - 10.0) for r in ratios), 1e-9)

    # derivation
    worst_r = worst_l = worst_fo = 0.0
    for i in range(samples):
        ma, mb = rng.uniform(0.1, 5), rng.uniform(0, 5)
        mom = FourMomentum.on_shell(rng.uniform(-10, 10, 3), mb, sign=1 if i % 2 else -1, units=units)
        psi = derivation.TwoSpinor(rng.standard_normal(2) + 1j * rng.standard_normal(2), mom)
        right = MassParameters(ma, mb, SeedChirality.RIGHT, units)
        leftm = MassParameters(ma, mb, SeedChirality.LEFT, units)
        worst_r = max(worst_r, derivation.operator_residual(derivation.build_four_spinor_right(psi, right), right))
        worst_l = max(worst_l, derivation.operator_residual(derivation.build_four_spinor_left(psi, leftm), leftm))
        worst_fo = max(worst_fo, derivation.roundtrip_check(psi, right) / max(1.0, np.linalg.norm(psi.components)))
    add("derivation.right_seeded", worst_r, 1e-10)
    add("derivation.left_seeded", worst_l, 1e-10)
    add("derivation.first_order_pair", worst_fo, 1e-10)

    # oscillation
    trace = hd.simulate_oscillation((0.0, 0.0, 1.0), m1, units=units, basis=basis)
    closed = hd.massless_prob_up(trace.times, 1.0, m1, units)
    add("oscillation.closed_form", np.max(np.abs(trace.prob_up - closed)), 1e-8)
    add("oscillation.probability_frequency", abs(trace.probability_frequency - 2 * units.c / units.hbar) / trace.bin_width, 1.0)
    add("oscillation.amplitude_frequency", abs(trace.amplitude_frequency - units.c / units.hbar) / trace.bin_width, 1.0)
    return out


def _flip_distance(pvec, m1, basis, units):
    """Spectrum distance between ``H(m1)`` and ``H(-m1)`` at zero physical mass."""
    masses = MassParameters(m1, 0.0, SeedChirality.RIGHT, units)
    a = spectral.hamiltonian_spectrum(pvec, masses, basis).eigenvalues
    b = spectral.hamiltonian_spectrum(pvec, flip_sign(masses), basis).eigenvalues
    return linalg.multiset_distance(a, b)
