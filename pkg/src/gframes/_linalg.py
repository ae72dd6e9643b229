"""Shared dense linear-algebra helpers.

Everything in this package runs on small dense complex matrices, so these are
thin wrappers over ``numpy.linalg`` fixing the conventions once: Frobenius is
the default matrix norm, Hermitian spectra are taken after explicit
symmetrization, and comparison thresholds scale with the largest magnitude
involved.
"""

from __future__ import annotations

import numpy as np


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def hermitian_part(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + dagger(a))


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def spectral_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a, 2))


def singular_values(a: np.ndarray) -> np.ndarray:
    """Singular values, descending."""
    return np.linalg.svd(a, compute_uv=False)


def eigen_bounds(h: np.ndarray) -> tuple[float, float]:
    """(smallest, largest) eigenvalue of a Hermitian matrix."""
    spectrum = np.linalg.eigvalsh(hermitian_part(h))
    return float(spectrum[0]), float(spectrum[-1])


def threshold(tolerance: float, scale: float) -> float:
    """Comparison threshold relative to the largest magnitude involved."""
    return tolerance * max(1.0, scale)


def null_space(a: np.ndarray, tolerance: float) -> np.ndarray:
    """Orthonormal basis (as columns) of the kernel of ``a``."""
    _, s, vh = np.linalg.svd(a)
    top = float(s[0]) if s.size else 0.0
    rank = int(np.count_nonzero(s > threshold(tolerance, top)))
    return dagger(vh[rank:])


def complex_gaussian(rng: np.random.Generator, shape: tuple[int, ...],
                     scale: float = 1.0) -> np.ndarray:
    """I.i.d. standard complex Gaussian entries scaled by ``scale``."""
    values = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return scale * values / np.sqrt(2.0)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via phase-fixed QR."""
    q, r = np.linalg.qr(complex_gaussian(rng, (n, n)))
    phases = np.diagonal(r).copy()
    phases /= np.abs(phases)
    return q * phases
