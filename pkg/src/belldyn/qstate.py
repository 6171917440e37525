"""Linear algebra and entropy computations for one- and two-qubit density matrices.

States are plain complex numpy arrays in the canonical polarization basis,
{|HH>, |HV>, |VH>, |VV>} for two qubits and {|H>, |V>} for one. All entropies
are in bits. Every function here is pure; nothing is mutated in place.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import InvalidSpectrumError, InvalidStateError, NonHermitianError

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-12
EIGENVALUE_FLOOR = -1e-10

# sigma-eigenvalues below SUPPORT_EIGENVALUE_TOL count as outside the support;
# rho-weight above SUPPORT_WEIGHT_TOL on such a direction makes S(rho||sigma) infinite
SUPPORT_EIGENVALUE_TOL = 1e-12
SUPPORT_WEIGHT_TOL = 1e-10

SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
PAULIS = np.stack([SIGMA_X, SIGMA_Y, SIGMA_Z])


def shannon_bits(p: np.ndarray, axis=None) -> np.ndarray | float:
    """Shannon entropy -sum p log2 p with the 0 log 0 = 0 convention.

    Negative roundoff is clipped to zero before taking logs. Works on any
    array shape; `axis` selects the probability axis.
    """
    p = np.clip(np.asarray(p, dtype=float), 0.0, 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    return -terms.sum(axis=axis)


def validate_state(matrix: np.ndarray) -> np.ndarray:
    """Check hermiticity, unit trace, and positivity; return the matrix as complex.

    Raises NonHermitianError or InvalidStateError when a tolerance is violated.
    """
    rho = np.asarray(matrix, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] not in (2, 4):
        raise InvalidStateError(f"expected a 2x2 or 4x4 matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=HERMITICITY_TOL):
        raise NonHermitianError("matrix is not Hermitian within 1e-12")
    tr = np.trace(rho)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError(f"trace {tr} deviates from 1 beyond 1e-12")
    w = np.linalg.eigvalsh(rho)
    if w.min() < EIGENVALUE_FLOOR:
        raise InvalidStateError(f"eigenvalue {w.min()} below the {EIGENVALUE_FLOOR} floor")
    return rho


def validate_bell_spectrum(lambdas) -> np.ndarray:
    """Validate a non-increasing probability 4-vector and return it as a float array.

    Entries may dip to -1e-10 from roundoff; they are clipped to zero. The sum
    must be 1 within 1e-12 and the ordering non-increasing.
    """
    lam = np.asarray(lambdas, dtype=float)
    if lam.shape != (4,):
        raise InvalidSpectrumError(f"expected 4 eigenvalues, got shape {lam.shape}")
    if lam.min() < EIGENVALUE_FLOOR or lam.max() > 1.0 + 1e-12:
        raise InvalidSpectrumError(f"eigenvalues outside [0, 1]: {lam}")
    if abs(lam.sum() - 1.0) > 1e-12:
        raise InvalidSpectrumError(f"eigenvalues sum to {lam.sum()}, not 1")
    if np.any(np.diff(lam) > 1e-12):
        raise InvalidSpectrumError(f"eigenvalues not sorted non-increasing: {lam}")
    return np.clip(lam, 0.0, 1.0)


def von_neumann_entropy(state) -> float:
    """Entropy in bits of a density matrix or of a probability spectrum.

    Accepts a 2x2 or 4x4 density matrix, or a 1-d probability vector
    (e.g. a Bell-diagonal spectrum).
    """
    arr = np.asarray(state)
    if arr.ndim == 1:
        p = np.asarray(arr, dtype=float)
        if p.min() < EIGENVALUE_FLOOR or abs(p.sum() - 1.0) > 1e-12:
            raise InvalidSpectrumError(f"not a probability vector: {p}")
        return float(shannon_bits(p))
    rho = validate_state(arr)
    return float(shannon_bits(np.linalg.eigvalsh(rho)))


def relative_entropy(rho, sigma) -> float:
    """S(rho||sigma) = -tr(rho log2 sigma) - S(rho), in bits.

    Returns math.inf when the support of rho is not contained in the support
    of sigma (sigma-eigenvalue below 1e-12 carrying rho-weight above 1e-10).
    """
    rho = validate_state(rho)
    sig = validate_state(sigma)
    if rho.shape != sig.shape:
        raise InvalidStateError("state dimensions differ")
    w, v = np.linalg.eigh(sig)
    weights = np.einsum("ik,ij,jk->k", v.conj(), rho, v).real
    unsupported = w < SUPPORT_EIGENVALUE_TOL
    if np.any(weights[unsupported] > SUPPORT_WEIGHT_TOL):
        return math.inf
    supported = ~unsupported
    cross = -float(np.sum(weights[supported] * np.log2(w[supported])))
    s_rho = float(shannon_bits(np.linalg.eigvalsh(rho)))
    return cross - s_rho


def eigenvalues_sorted(state) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, non-increasing.

    Negative values above the -1e-10 floor are clipped to zero and the vector
    renormalized to unit sum; values below the floor raise InvalidStateError.
    """
    rho = np.asarray(state, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1]:
        raise InvalidStateError(f"expected a square matrix, got shape {rho.shape}")
    if not np.allclose(rho, rho.conj().T, rtol=0.0, atol=HERMITICITY_TOL):
        raise NonHermitianError("matrix is not Hermitian within 1e-12")
    w = np.linalg.eigvalsh(rho)[::-1]
    if w.min() < EIGENVALUE_FLOOR:
        raise InvalidStateError(f"eigenvalue {w.min()} below the {EIGENVALUE_FLOOR} floor")
    w = np.clip(w, 0.0, None)
    total = w.sum()
    if total <= 0.0:
        raise InvalidStateError("eigenvalues sum to zero")
    return w / total


def partial_trace(state, keep: str) -> np.ndarray:
    """Reduced 2x2 state of subsystem "A" (first qubit) or "B" (second)."""
    rho = validate_state(state)
    if rho.shape != (4, 4):
        raise InvalidStateError("partial trace requires a two-qubit state")
    r = rho.reshape(2, 2, 2, 2)
    key = str(keep).upper()
    if key == "A":
        return np.einsum("abcb->ac", r)
    if key == "B":
        return np.einsum("abad->bd", r)
    raise InvalidStateError(f"keep must be 'A' or 'B', got {keep!r}")


def bloch_projectors(direction) -> tuple[np.ndarray, np.ndarray]:
    """Rank-1 projectors (I +/- n.sigma)/2 onto the eigenbasis along a unit Bloch vector."""
    n = np.asarray(direction, dtype=float)
    if n.shape != (3,) or abs(np.linalg.norm(n) - 1.0) > 1e-9:
        raise InvalidStateError(f"not a unit Bloch direction: {direction}")
    base = n[0] * SIGMA_X + n[1] * SIGMA_Y + n[2] * SIGMA_Z
    eye = np.eye(2, dtype=complex)
    return (eye + base) / 2.0, (eye - base) / 2.0


def dephase_in_product_basis(state, basis_a, basis_b) -> np.ndarray:
    """Zero all coherences of a two-qubit state in the given product eigenbasis.

    basis_a and basis_b are unit Bloch directions defining the local bases.
    The output is the classical (product-basis diagonal) state obtained by
    projecting onto the four product projectors; it is the closest classical
    state to the input for that fixed basis.
    """
    rho = validate_state(state)
    if rho.shape != (4, 4):
        raise InvalidStateError("dephasing requires a two-qubit state")
    pa = bloch_projectors(basis_a)
    pb = bloch_projectors(basis_b)
    out = np.zeros((4, 4), dtype=complex)
    for qa in pa:
        for qb in pb:
            proj = np.kron(qa, qb)
            out += proj @ rho @ proj
    return out
