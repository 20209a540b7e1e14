"""Hand-written test oracles, independent of the library's numerics."""

from __future__ import annotations

import numpy as np

from fockchan.gaussian import VarianceMatrix


def inertia_min_eigenvalue(matrix: np.ndarray, tol: float = 1e-10) -> float:
    """Smallest eigenvalue by bisection on the eigenvalue count below a shift.

    The count comes from Sylvester's law of inertia applied to an unpivoted
    LDL^T factorization of (M - shift I): the number of negative entries of D
    equals the number of eigenvalues below the shift.  Deliberately avoids
    LAPACK so it can serve as an independent check of the library's solver.
    """
    m = np.asarray(matrix, dtype=float)
    m = 0.5 * (m + m.T)
    dim = m.shape[0]

    def count_below(shift: float) -> int:
        a = m - shift * np.eye(dim)
        d = np.zeros(dim)
        lower = np.eye(dim)
        for k in range(dim):
            pivot = a[k, k] - float((lower[k, :k] ** 2 * d[:k]).sum())
            if pivot == 0.0:
                pivot = 1e-300  # breakdown has measure zero for random shifts
            d[k] = pivot
            for i in range(k + 1, dim):
                acc = float((lower[i, :k] * lower[k, :k] * d[:k]).sum())
                lower[i, k] = (a[i, k] - acc) / pivot
        return int((d < 0.0).sum())

    # Gershgorin bounds bracket the whole spectrum
    radii = np.abs(m).sum(axis=1) - np.abs(np.diag(m))
    lo = float((np.diag(m) - radii).min()) - 1.0
    hi = float((np.diag(m) + radii).max()) + 1.0
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if count_below(mid) >= 1:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _rotation(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, s], [-s, c]])


def random_symplectic(rng: np.random.Generator) -> np.ndarray:
    """Random 4x4 symplectic in (q1, p1, q2, p2) order: rotations, squeezes, beam splitters."""
    s = np.eye(4)
    for _ in range(2):
        theta = rng.uniform(0.0, 2.0 * np.pi)
        c, si = np.cos(theta), np.sin(theta)
        beam = np.block([[c * np.eye(2), si * np.eye(2)], [-si * np.eye(2), c * np.eye(2)]])
        phases = np.zeros((4, 4))
        phases[:2, :2] = _rotation(rng.uniform(0.0, 2.0 * np.pi))
        phases[2:, 2:] = _rotation(rng.uniform(0.0, 2.0 * np.pi))
        r1, r2 = rng.uniform(-1.2, 1.2, size=2)
        squeeze = np.diag([np.exp(r1), np.exp(-r1), np.exp(r2), np.exp(-r2)])
        s = s @ beam @ phases @ squeeze
    return s


def random_physical_variance(rng: np.random.Generator, pure: bool = False) -> VarianceMatrix:
    """Random physical two-mode variance matrix S diag(nu) S^T with nu >= 1."""
    s = random_symplectic(rng)
    if pure:
        nu = np.ones(2)
    else:
        nu = 1.0 + rng.exponential(0.5, size=2)
    d = np.diag([nu[0], nu[0], nu[1], nu[1]])
    v = s @ d @ s.T
    return VarianceMatrix(0.5 * (v + v.T))
