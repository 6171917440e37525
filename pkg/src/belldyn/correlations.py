"""Analytic correlation measures for Bell-diagonal two-qubit states.

All measures are relative-entropy distances in bits: quantum correlation is
the distance to the closest classical state, classical correlation the
distance from that state to the closest product state, total mutual
information the distance to the product of the marginals, and the
entanglement measure the distance to the closest separable state. For
Bell-diagonal states every one of these has a closed form in the four
eigenvalues, and the quantum/classical pair reduces to a piecewise expression
in the two decoherence parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidKappaError
from .qstate import shannon_bits, validate_bell_spectrum

KAPPA_TOL = 1e-9

# Bell kets as columns: (|HH>+|VV>)/sqrt2, (|HH>-|VV>)/sqrt2,
# (|HV>+|VH>)/sqrt2, (|HV>-|VH>)/sqrt2
BELL_KETS = np.array(
    [
        [1.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 1.0, 1.0],
        [0.0, 0.0, 1.0, -1.0],
        [1.0, -1.0, 0.0, 0.0],
    ],
    dtype=complex,
) / math.sqrt(2.0)


@dataclass(frozen=True)
class CorrelationSet:
    """Total, classical, quantum, and entanglement correlations in bits."""

    total: float
    classical: float
    quantum: float
    ree: float


def _kappa_modulus(kappa) -> float:
    k = abs(kappa)
    if not math.isfinite(k) or k > 1.0 + KAPPA_TOL:
        raise InvalidKappaError(f"|kappa| = {k} exceeds 1")
    return min(k, 1.0)


def kappa_correlation(kappa) -> float:
    """(1/2)(1+k)log2(1+k) + (1/2)(1-k)log2(1-k) at k = |kappa|.

    This is the common kernel of the quantum and classical branches; the
    k -> 1 endpoint uses the 0 log 0 = 0 convention and evaluates to 1.
    """
    k = _kappa_modulus(kappa)
    out = 0.5 * (1.0 + k) * math.log2(1.0 + k)
    if k < 1.0:
        out += 0.5 * (1.0 - k) * math.log2(1.0 - k)
    return out


def closest_classical_bell(spectrum) -> np.ndarray:
    """Spectrum of the closest classical state: pairwise averages of the sorted eigenvalues."""
    lam = validate_bell_spectrum(spectrum)
    top = (lam[0] + lam[1]) / 2.0
    bottom = (lam[2] + lam[3]) / 2.0
    return np.array([top, top, bottom, bottom])


def quantum_correlation_bell(spectrum) -> float:
    """Quantum correlation S(chi) - S(rho) of a Bell-diagonal spectrum."""
    lam = validate_bell_spectrum(spectrum)
    value = float(shannon_bits(closest_classical_bell(lam))) - float(shannon_bits(lam))
    return max(value, 0.0)


def classical_correlation_bell(spectrum) -> float:
    """Classical correlation 2 - S(chi); the closest product state is maximally mixed."""
    lam = validate_bell_spectrum(spectrum)
    return 2.0 - float(shannon_bits(closest_classical_bell(lam)))


def total_mutual_information_bell(spectrum) -> float:
    """Total mutual information 2 - S(rho) of a Bell-diagonal spectrum."""
    lam = validate_bell_spectrum(spectrum)
    return 2.0 - float(shannon_bits(lam))


def ree_bell(spectrum) -> float:
    """Relative entropy of entanglement of a Bell-diagonal spectrum.

    1 + l1 log2 l1 + (1-l1) log2 (1-l1) for largest eigenvalue l1 >= 1/2,
    zero otherwise (the state is already separable).
    """
    lam = validate_bell_spectrum(spectrum)
    l1 = float(lam[0])
    if l1 <= 0.5:
        return 0.0
    out = 1.0 + l1 * math.log2(l1)
    if l1 < 1.0:
        out += (1.0 - l1) * math.log2(1.0 - l1)
    return max(out, 0.0)


def bell_eigenvalues_from_kappas(kappa_a, kappa_b) -> np.ndarray:
    """Sorted eigenvalues (1 +/- |kappa_a|)(1 +/- |kappa_b|)/4 of the dephased state."""
    ka = _kappa_modulus(kappa_a)
    kb = _kappa_modulus(kappa_b)
    vals = 0.25 * np.array(
        [
            (1.0 + ka) * (1.0 + kb),
            (1.0 - ka) * (1.0 + kb),
            (1.0 + ka) * (1.0 - kb),
            (1.0 - ka) * (1.0 - kb),
        ]
    )
    return np.sort(vals)[::-1]


def correlations_from_kappas(kappa_a, kappa_b) -> CorrelationSet:
    """All four correlation measures from the two decoherence parameters.

    The quantum branch depends on min(|kappa_a|, |kappa_b|) and the classical
    branch on the max; the two coincide when the moduli are equal. Complex
    inputs contribute through their moduli only.
    """
    ka = _kappa_modulus(kappa_a)
    kb = _kappa_modulus(kappa_b)
    quantum = kappa_correlation(min(ka, kb))
    classical = kappa_correlation(max(ka, kb))
    ree = ree_bell(bell_eigenvalues_from_kappas(ka, kb))
    return CorrelationSet(
        total=quantum + classical, classical=classical, quantum=quantum, ree=ree
    )


def correlations_from_spectrum(spectrum) -> CorrelationSet:
    """All four correlation measures from a sorted Bell-diagonal spectrum."""
    lam = validate_bell_spectrum(spectrum)
    return CorrelationSet(
        total=total_mutual_information_bell(lam),
        classical=classical_correlation_bell(lam),
        quantum=quantum_correlation_bell(lam),
        ree=ree_bell(lam),
    )


def bell_diagonal_state(spectrum) -> np.ndarray:
    """4x4 density matrix diagonal in the Bell basis with the given spectrum."""
    lam = validate_bell_spectrum(spectrum)
    return (BELL_KETS * lam) @ BELL_KETS.conj().T
