"""Dense numerics for matrices of size <= 4.

The eigensolver follows the characteristic-polynomial route: Faddeev-LeVerrier
coefficients, closed-form roots, then inverse subspace iteration on each root
cluster with a Rayleigh-Ritz projection.  The projection restores full
precision for semisimple repeated eigenvalues, which the polynomial roots alone
only resolve to about ``sqrt(eps)``.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import EigenFailure

_CLUSTER_RTOL = 1e-3
_MERGE_RTOL = 1e-3
_SPLIT_COND = 1e7
_EPS = float(np.finfo(float).eps)
_SORT_RTOL = 1e-8
_COND_LIMIT = 1e12


def det_cofactor(a) -> complex:
    """Determinant by Laplace expansion along the first row."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("square matrix required")
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(a[0, 0])
    if n == 2:
        return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])
    total = 0j
    cols = list(range(n))
    for j in range(n):
        if a[0, j] == 0:
            continue
        minor = a[1:, [c for c in cols if c != j]]
        total += (-1) ** j * a[0, j] * det_cofactor(minor)
    return complex(total)


def faddeev_leverrier(a) -> np.ndarray:
    """Coefficients ``[1, c1, ..., cn]`` of ``det(lambda I - A)``, highest power first."""
    a = np.asarray(a, dtype=np.complex128)
    n = a.shape[0]
    coeffs = np.zeros(n + 1, dtype=np.complex128)
    coeffs[0] = 1.0
    M = np.zeros_like(a)
    eye = np.eye(n, dtype=np.complex128)
    for k in range(1, n + 1):
        M = a @ M + coeffs[k - 1] * eye
        coeffs[k] = -np.trace(a @ M) / k
    return coeffs


def _polyval(coeffs, x):
    v = 0j
    for c in coeffs:
        v = v * x + c
    return v


def _polish(coeffs, roots, steps=3):
    dcoeffs = np.polyder(np.asarray(coeffs))
    out = []
    for r in roots:
        f = _polyval(coeffs, r)
        for _ in range(steps):
            d = _polyval(dcoeffs, r)
            if d == 0:
                break
            cand = r - f / d
            fc = _polyval(coeffs, cand)
            if abs(fc) >= abs(f):
                break
            r, f = cand, fc
        out.append(complex(r))
    return out


def quadratic_roots(b, c):
    """Roots of the monic ``x^2 + b x + c``."""
    d = cmath.sqrt(b * b - 4 * c)
    # pick the sign that avoids cancellation
    q = -0.5 * (b + d) if abs(b + d) >= abs(b - d) else -0.5 * (b - d)
    if q == 0:
        return [0j, 0j]
    return [complex(q), complex(c / q)]


def _cbrt(z):
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3)


def cubic_roots(a, b, c):
    """Roots of the monic ``x^3 + a x^2 + b x + c`` (Cardano, complex arithmetic)."""
    p = b - a * a / 3
    q = 2 * a**3 / 27 - a * b / 3 + c
    shift = -a / 3
    if p == 0:
        u = _cbrt(-q)
        w = cmath.exp(2j * cmath.pi / 3)
        ts = [u, u * w, u * w * w]
    else:
        disc = cmath.sqrt(q * q / 4 + p**3 / 27)
        s = -q / 2 + disc if abs(-q / 2 + disc) >= abs(-q / 2 - disc) else -q / 2 - disc
        u = _cbrt(s)
        w = cmath.exp(2j * cmath.pi / 3)
        ts = []
        for k in range(3):
            uk = u * w**k
            ts.append(uk - p / (3 * uk))
    return _polish([1, a, b, c], [t + shift for t in ts])


def quartic_roots(a, b, c, d):
    """Roots of the monic ``x^4 + a x^3 + b x^2 + c x + d`` (Ferrari)."""
    p = b - 3 * a * a / 8
    q = c - a * b / 2 + a**3 / 8
    r = d - a * c / 4 + a * a * b / 16 - 3 * a**4 / 256
    shift = -a / 4
    scale = max(1.0, abs(p), abs(q) ** (2 / 3), abs(r) ** 0.5)
    if abs(q) <= 1e-14 * scale**1.5:
        ys = []
        for z in quadratic_roots(p, r):
            s = cmath.sqrt(z)
            ys += [s, -s]
    else:
        ms = cubic_roots(p, p * p / 4 - r, -q * q / 8)
        m = max(ms, key=abs)
        s = cmath.sqrt(2 * m)
        ys = quadratic_roots(-s, p / 2 + m + q / (2 * s)) + quadratic_roots(s, p / 2 + m - q / (2 * s))
    return _polish([1, a, b, c, d], [y + shift for y in ys])


def poly_roots(coeffs):
    """Roots of a monic polynomial of degree <= 4 (coefficients highest first)."""
    coeffs = [complex(c) for c in coeffs]
    n = len(coeffs) - 1
    if n == 0:
        return []
    if n == 1:
        return [-coeffs[1]]
    if n == 2:
        return quadratic_roots(coeffs[1], coeffs[2])
    if n == 3:
        return cubic_roots(*coeffs[1:])
    if n == 4:
        return quartic_roots(*coeffs[1:])
    raise ValueError("degree > 4 not supported")


def _group(values, rtol):
    """Greedy grouping of complex numbers closer than ``rtol * max(1, |v|)``."""
    groups = []
    for i, v in enumerate(values):
        for g in groups:
            c = np.mean([values[j] for j in g])
            if abs(v - c) <= rtol * max(1.0, abs(c)):
                g.append(i)
                break
        else:
            groups.append([i])
    return groups


def sort_eigenvalues(values, rtol=_SORT_RTOL):
    """Indices ordering ``values`` by real part descending, then imaginary part descending.

    Real parts within ``rtol * max(1, |lambda|)`` are treated as equal.
    """
    idx = list(range(len(values)))
    idx.sort(key=lambda i: -values[i].real)
    # stable pass: inside runs of equal real part order by imag desc
    out = []
    i = 0
    while i < len(idx):
        j = i + 1
        while j < len(idx):
            a, b = values[idx[i]], values[idx[j]]
            if abs(a.real - b.real) <= rtol * max(1.0, abs(a), abs(b)):
                j += 1
            else:
                break
        out += sorted(idx[i:j], key=lambda k: -values[k].imag)
        i = j
    return out


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray
    vectors: np.ndarray  # columns
    diagonalizable: bool
    max_residual: float
    condition: float


def _small_eigvals(b):
    """Eigenvalues of a small matrix expected to be close to a multiple of identity."""
    k = b.shape[0]
    tau = np.trace(b) / k
    if k == 1:
        return [complex(tau)]
    c = b - tau * np.eye(k)
    return [complex(tau + r) for r in poly_roots(faddeev_leverrier(c))]


def _null_vectors(m, count, ntol):
    """Up to ``count`` null vectors of ``m`` and how many were actually found."""
    _, s, vh = np.linalg.svd(m)
    n = m.shape[0]
    found = int(np.sum(s <= ntol))
    found = max(1, min(count, found))
    vecs = [vh[n - 1 - i].conj() for i in range(found)]
    return vecs, found


def _rqi(m, lam, steps=30):
    """Rayleigh-quotient iteration; returns the pair with the smallest residual."""
    k = m.shape[0]
    eye = np.eye(k)
    x = _null_vectors(m - lam * eye, 1, np.inf)[0][0]
    best = (np.inf, lam, x)
    tiny = 1e-14 * max(1.0, float(np.max(np.abs(m))))
    for _ in range(steps):
        r = float(np.linalg.norm(m @ x - lam * x))
        if r < best[0]:
            best = (r, lam, x)
        if r <= 4e-16 * max(1.0, float(np.max(np.abs(m)))):
            break
        try:
            y = np.linalg.solve(m - (lam + tiny * (1 + 0.5j)) * eye, x)
        except np.linalg.LinAlgError:
            break
        ny = np.linalg.norm(y)
        if not np.isfinite(ny) or ny == 0:
            break
        x = y / ny
        lam = complex(x.conj() @ m @ x)
    return best[1], best[2]


def _deflated_eigvals(b):
    """Eigenvalues of a small block by repeated RQI and Householder deflation.

    Each step is seeded with the most isolated characteristic-polynomial root,
    which on its own can be off by ``eps**(1/k)`` inside a tight cluster.
    """
    m = np.array(b, dtype=np.complex128)
    out = []
    while m.shape[0] > 1:
        seeds = _small_eigvals(m)
        if len(seeds) > 1:
            iso = [min(abs(s - t) for j, t in enumerate(seeds) if j != i) for i, s in enumerate(seeds)]
            seed = seeds[int(np.argmax(iso))]
        else:
            seed = seeds[0]
        lam, x = _rqi(m, seed)
        out.append(lam)
        Q, _ = np.linalg.qr(x.reshape(-1, 1), mode="complete")
        m = (Q.conj().T @ m @ Q)[1:, 1:]
    out.append(complex(m[0, 0]))
    return out


def _split_pairs(b, lams, ntol):
    """Eigenpairs of ``b`` for a group of nearby eigenvalues.

    Starts from one eigenvector per eigenvalue and merges the two closest
    sub-groups while the vectors found are nearly dependent, which marks a
    degenerate or defective eigenvalue whose roots were split by rounding.
    A defective sub-group repeats its last vector so the caller sees a
    singular eigenvector matrix.
    """
    eye = np.eye(b.shape[0])
    groups = [[lam] for lam in lams]
    while True:
        pairs, found = [], []
        for g in groups:
            lam = complex(np.mean(g))
            vecs, nf = _null_vectors(b - lam * eye, len(g), ntol)
            found += vecs
            vecs += [vecs[-1]] * (len(g) - nf)
            pairs += [(lam, y) for y in vecs]
        if len(groups) == 1:
            return pairs
        s = np.linalg.svd(np.column_stack(found), compute_uv=False)
        if s[-1] > 0 and s[0] / s[-1] <= _SPLIT_COND:
            return pairs
        # rounding splits a defective m-fold eigenvalue by about eps**(1/m);
        # wider groups are distinct eigenvalues, however ill-conditioned
        candidates = []
        for i in range(len(groups)):
            for j in range(i + 1, len(groups)):
                merged = groups[i] + groups[j]
                spread = max(abs(x - np.mean(merged)) for x in merged)
                if spread <= 10 * _EPS ** (1 / len(merged)):
                    candidates.append((spread, i, j))
        if not candidates:
            return pairs
        _, i, j = min(candidates)
        groups[i] = groups[i] + groups.pop(j)


def balance(a):
    """Parlett-Reinsch balancing: ``(D^-1 A D, d)`` with ``d`` powers of two."""
    a = np.array(a, dtype=np.complex128)
    n = a.shape[0]
    d = np.ones(n)
    converged = False
    while not converged:
        converged = True
        for i in range(n):
            c = np.linalg.norm(np.delete(a[:, i], i))
            r = np.linalg.norm(np.delete(a[i, :], i))
            if c == 0 or r == 0:
                continue
            f = 1.0
            s = c + r
            while c < r / 2:
                c, r, f = c * 2, r / 2, f * 2
            while c >= r * 2:
                c, r, f = c / 2, r * 2, f / 2
            if (c + r) < 0.95 * s:
                converged = False
                d[i] *= f
                a[:, i] *= f
                a[i, :] /= f
    return a, d


def eig(a, tol=1e-9, max_iter=12) -> EigenDecomposition:
    """Eigen-decomposition of a general complex matrix of size <= 4.

    ``tol`` bounds ``||A v - lambda v||`` for unit ``v``, scaled by
    ``max(1, max|A_ij|)`` of the balanced matrix.  Balancing is tried first;
    when its back-transformed vectors miss ``tol`` (strong scalings lose the
    relative accuracy of small vector components) the raw matrix is used.
    """
    original = np.asarray(a, dtype=np.complex128)
    try:
        return _eig(original, balance(original), tol, max_iter)
    except EigenFailure:
        return _eig(original, (original.copy(), np.ones(original.shape[0])), tol, max_iter)


def _eig(original, balanced, tol, max_iter) -> EigenDecomposition:
    a, dscale = balanced
    n = a.shape[0]
    amax = float(np.max(np.abs(a), initial=0.0))
    scale = max(1.0, amax)
    # work on a unit-scale copy so every clustering tolerance is relative
    norm = amax if amax > 0 else 1.0
    a = a / norm
    roots = poly_roots(faddeev_leverrier(a))
    clusters = _group(roots, _CLUSTER_RTOL)
    rng = np.random.default_rng(20001)
    start = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    eye = np.eye(n, dtype=np.complex128)

    values, vectors = [], []
    worst = 0.0
    for cl in clusters:
        k = len(cl)
        mu = complex(np.mean([roots[i] for i in cl]))
        if k == n:
            Q = eye.copy()
            iters = [0]
        else:
            Q, _ = np.linalg.qr(start[:, :k])
            iters = range(1, max_iter + 1)
        B = Q.conj().T @ a @ Q
        best = (np.inf, Q, B)
        for it in iters:
            if it:
                # a moderate offset keeps the solve well away from singular:
                # other components still shrink by ~1e-7 per step, while a
                # near-zero shift would amplify rounding by 1/offset^2 on a
                # defective eigenvalue
                shift = mu + 1e-7 * (1 + 0.5j)
                try:
                    Z = np.linalg.solve(a - shift * eye, Q)
                except np.linalg.LinAlgError:
                    mu += 1e-6
                    continue
                Q, _ = np.linalg.qr(Z)
            B = Q.conj().T @ a @ Q
            invariance = float(np.max(np.abs(a @ Q - Q @ B)))
            if invariance < best[0]:
                best = (invariance, Q, B)
            elif it >= 3:
                break
            if invariance <= 1e-15:
                break
        _, Q, B = best
        lams = _deflated_eigvals(B)
        groups = _group(lams, _MERGE_RTOL)
        ntol = 1e-8
        cl_vals, cl_vecs = [], []
        for g in groups:
            pairs = _split_pairs(B, [lams[i] for i in g], ntol)
            for lam, y in pairs:
                v = dscale * (Q @ y)
                cl_vals.append(lam * norm)
                cl_vecs.append(v / np.linalg.norm(v))
        for lam, v in zip(cl_vals, cl_vecs):
            worst = max(worst, float(np.linalg.norm(original @ v - lam * v)))
        values += cl_vals
        vectors += cl_vecs

    if worst > tol * scale:
        raise EigenFailure(f"eigen residual {worst:.3e} exceeds {tol * scale:.3e}")
    order = sort_eigenvalues(values)
    vals = np.array([values[i] for i in order], dtype=np.complex128)
    V = np.column_stack([vectors[i] for i in order])
    s = np.linalg.svd(V, compute_uv=False)
    cond = float(s[0] / s[-1]) if s[-1] > 0 else float("inf")
    return EigenDecomposition(vals, V, cond <= _COND_LIMIT, worst, cond)


def multiset_distance(a, b) -> float:
    """Largest pairing distance under a greedy nearest match of two equal-size multisets."""
    a = list(a)
    b = list(b)
    if len(a) != len(b):
        return float("inf")
    worst = 0.0
    for x in a:
        j = min(range(len(b)), key=lambda i: abs(b[i] - x))
        worst = max(worst, abs(b[j] - x))
        b.pop(j)
    return worst
