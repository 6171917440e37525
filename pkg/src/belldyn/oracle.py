"""Brute-force relative-entropy minimizers that validate the analytic measures.

The quantum-correlation oracle searches all product measurement bases (two
Bloch directions) on a coarse grid with local refinement; for a fixed basis
the closest classical state is the dephased input, so the objective reduces
to the Shannon entropy of the four product-basis populations. The
entanglement oracle minimizes the classical relative entropy over the
separable Bell-diagonal simplex (all eigenvalues <= 1/2) by a coarse simplex
grid followed by pattern refinement along pairwise-exchange directions.

Grid evaluations are vectorized and independent; results are deterministic
for a fixed grid spec, with ties broken by the smallest flattened grid index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NonConvergenceError
from .qstate import (
    PAULIS,
    dephase_in_product_basis,
    partial_trace,
    shannon_bits,
    validate_bell_spectrum,
    validate_state,
)


@dataclass(frozen=True)
class GridSpec:
    """Search control for the product-basis minimization.

    The coarse pass scans n_phi x n_theta directions per side; each refinement
    round re-grids a window around the best point, shrinking it by `shrink`.
    At least refine_rounds rounds run; rounds continue until the objective
    improves by no more than `tol`, up to max_rounds.
    """

    n_phi: int = 24
    n_theta: int = 12
    refine_rounds: int = 3
    shrink: float = 4.0
    tol: float = 1e-6
    max_rounds: int = 50


@dataclass(frozen=True)
class SimplexGridSpec:
    """Search control for the separable Bell-diagonal minimization.

    `resolution` is the coarse simplex grid denominator; refinement is a
    pattern search over pairwise exchanges with step shrinking by `shrink`
    per round, at least refine_rounds rounds, until a round improves by no
    more than `tol`.
    """

    resolution: int = 20
    refine_rounds: int = 6
    shrink: float = 4.0
    tol: float = 1e-9
    max_rounds: int = 60


def closest_product_state(rho) -> np.ndarray:
    """Tensor product of the two reduced states; the nearest product state."""
    rho = validate_state(rho)
    return np.kron(partial_trace(rho, "A"), partial_trace(rho, "B"))


def _pauli_components(rho: np.ndarray):
    """Local Bloch vectors and the 3x3 correlation matrix of a two-qubit state."""
    r = rho.reshape(2, 2, 2, 2)
    vec_a = np.einsum("abcb,ica->i", r, PAULIS).real
    vec_b = np.einsum("abad,jdb->j", r, PAULIS).real
    corr = np.einsum("abcd,ica,jdb->ij", r, PAULIS, PAULIS).real
    return vec_a, vec_b, corr


def _direction_grid(thetas: np.ndarray, phis: np.ndarray):
    """Unit vectors for every (theta, phi) pair, flattened with theta-major order."""
    t, p = np.meshgrid(thetas, phis, indexing="ij")
    t = t.ravel()
    p = p.ravel()
    dirs = np.stack([np.sin(t) * np.cos(p), np.sin(t) * np.sin(p), np.cos(t)], axis=1)
    return dirs, t, p


def _population_entropy(vec_a, vec_b, corr, dirs_a, dirs_b) -> np.ndarray:
    """Entropy of the four product-basis populations for every direction pair."""
    da = dirs_a @ vec_a
    db = dirs_b @ vec_b
    cross = dirs_a @ corr @ dirs_b.T
    probs = np.empty((4,) + cross.shape)
    for idx, (sa, sb) in enumerate(((1, 1), (1, -1), (-1, 1), (-1, -1))):
        probs[idx] = 0.25 * (1.0 + sa * da[:, None] + sb * db[None, :] + sa * sb * cross)
    return shannon_bits(probs, axis=0)


def _minimizing_basis(rho: np.ndarray, grid: GridSpec):
    """Product basis minimizing the dephased entropy; returns (entropy, dir_a, dir_b)."""
    vec_a, vec_b, corr = _pauli_components(rho)
    thetas = np.linspace(0.0, math.pi, grid.n_theta)
    phis = np.linspace(0.0, 2.0 * math.pi, grid.n_phi, endpoint=False)
    dirs, tgrid, pgrid = _direction_grid(thetas, phis)
    ent = _population_entropy(vec_a, vec_b, corr, dirs, dirs)
    ia, ib = np.unravel_index(np.argmin(ent), ent.shape)
    best = float(ent[ia, ib])
    center_a = (tgrid[ia], pgrid[ia])
    center_b = (tgrid[ib], pgrid[ib])

    # round 1 re-grids a window of one full coarse cell around the best point;
    # each later round shrinks the window by the configured factor
    w_theta = math.pi / (grid.n_theta - 1)
    w_phi = 2.0 * math.pi / grid.n_phi
    rounds = 0
    while True:
        rounds += 1
        dirs_a, tg_a, pg_a = _direction_grid(
            np.linspace(center_a[0] - w_theta, center_a[0] + w_theta, grid.n_theta),
            np.linspace(center_a[1] - w_phi, center_a[1] + w_phi, grid.n_phi),
        )
        dirs_b, tg_b, pg_b = _direction_grid(
            np.linspace(center_b[0] - w_theta, center_b[0] + w_theta, grid.n_theta),
            np.linspace(center_b[1] - w_phi, center_b[1] + w_phi, grid.n_phi),
        )
        ent = _population_entropy(vec_a, vec_b, corr, dirs_a, dirs_b)
        ia, ib = np.unravel_index(np.argmin(ent), ent.shape)
        improvement = best - float(ent[ia, ib])
        if improvement > 0.0:
            best = float(ent[ia, ib])
            center_a = (tg_a[ia], pg_a[ia])
            center_b = (tg_b[ib], pg_b[ib])
        w_theta /= grid.shrink
        w_phi /= grid.shrink
        if rounds >= grid.refine_rounds and improvement <= grid.tol:
            break
        if rounds >= grid.max_rounds:
            raise NonConvergenceError(
                f"basis refinement still improving by {improvement} after {rounds} rounds"
            )

    def _unit(theta, phi):
        return np.array(
            [math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi), math.cos(theta)]
        )

    return best, _unit(*center_a), _unit(*center_b)


def oracle_quantum_correlation(rho, grid: GridSpec | None = None) -> float:
    """Minimum of S(rho || dephased rho) over product bases, in bits."""
    rho = validate_state(rho)
    if rho.shape != (4, 4):
        raise ValueError("quantum-correlation oracle expects a two-qubit state")
    grid = grid or GridSpec()
    best, _, _ = _minimizing_basis(rho, grid)
    s_rho = float(shannon_bits(np.linalg.eigvalsh(rho)))
    return max(best - s_rho, 0.0)


def oracle_classical_correlation(rho, grid: GridSpec | None = None) -> float:
    """Classical correlation of the classical state found by the basis search.

    Recomputes the minimizing basis, dephases rho there, and returns
    S(pi_chi) - S(chi) against the product of the marginals of chi.
    """
    rho = validate_state(rho)
    if rho.shape != (4, 4):
        raise ValueError("classical-correlation oracle expects a two-qubit state")
    grid = grid or GridSpec()
    _, dir_a, dir_b = _minimizing_basis(rho, grid)
    chi = dephase_in_product_basis(rho, dir_a, dir_b)
    s_chi = float(shannon_bits(np.linalg.eigvalsh(chi)))
    s_pi = float(shannon_bits(np.linalg.eigvalsh(closest_product_state(chi))))
    return max(s_pi - s_chi, 0.0)


def _kl_bits(lam: np.ndarray, q: np.ndarray) -> float:
    """Classical relative entropy sum lam log2(lam/q); +inf off the support of q."""
    total = 0.0
    for li, qi in zip(lam, q):
        if li > 0.0:
            if qi <= 0.0:
                return math.inf
            total += li * math.log2(li / qi)
    return total


def oracle_ree_bell(spectrum, grid: SimplexGridSpec | None = None) -> float:
    """Minimum relative entropy to the separable Bell-diagonal set, in bits."""
    lam = validate_bell_spectrum(spectrum)
    grid = grid or SimplexGridSpec()
    n = grid.resolution

    best = math.inf
    best_q = None
    for i in range(n + 1):
        for j in range(n + 1 - i):
            for k in range(n + 1 - i - j):
                q = np.array([i, j, k, n - i - j - k], dtype=float) / n
                if q.max() > 0.5 + 1e-12:
                    continue
                val = _kl_bits(lam, q)
                if val < best:
                    best, best_q = val, q
    if best_q is None:
        raise NonConvergenceError(
            f"no feasible point on the coarse simplex grid at resolution {n}"
        )

    moves = [(a, b) for a in range(4) for b in range(4) if a != b]
    step = 1.0 / n
    rounds = 0
    while True:
        rounds += 1
        round_gain = 0.0
        while True:
            cand_val, cand_q = best, None
            for a, b in moves:
                q = best_q.copy()
                q[a] += step
                q[b] -= step
                if q.min() < -1e-12 or q.max() > 0.5 + 1e-12:
                    continue
                q = np.clip(q, 0.0, 0.5)
                q = q / q.sum()
                val = _kl_bits(lam, q)
                if val < cand_val:
                    cand_val, cand_q = val, q
            if cand_q is None:
                break
            round_gain += best - cand_val
            best, best_q = cand_val, cand_q
        step /= grid.shrink
        if rounds >= grid.refine_rounds and round_gain <= grid.tol:
            break
        if rounds >= grid.max_rounds:
            raise NonConvergenceError(
                f"simplex refinement still improving by {round_gain} after {rounds} rounds"
            )
    return max(best, 0.0)
