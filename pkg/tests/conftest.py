import numpy as np


def random_density_matrix(rng, dim=4, rank=None):
    """Ginibre-ensemble random density matrix."""
    rank = rank or dim
    g = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_unitary(rng, dim=2):
    """Haar-distributed random unitary via QR of a Ginibre matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))


def random_bell_spectrum(rng):
    """Sorted Dirichlet-distributed Bell-diagonal spectrum."""
    return np.sort(rng.dirichlet(np.ones(4)))[::-1]
