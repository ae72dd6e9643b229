"""Dual systems: verification, the canonical dual, and the affine dual family.

``W`` is a dual of ``V`` when ``sum_i W_i^* V_i = I``, i.e. the synthesis
matrix of ``W`` is a left inverse of the analysis matrix of ``V``.  The
canonical dual has blocks ``V_i S^{-1}``; its synthesis matrix is the
Moore-Penrose pseudoinverse of the analysis matrix.  Every other dual is an
affine translate of the canonical one:

    synthesis(W) = synthesis(canonical) + Z (I - T S^{-1} T^*)

where ``T`` is the analysis matrix and ``Z`` ranges over all ``d x K``
matrices.  ``DualManifold`` exposes this chart; sampling duals means drawing
``Z`` with complex Gaussian entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import complex_gaussian, dagger, eigen_bounds, frobenius, threshold
from .core import (
    DEFAULT_TOLERANCE,
    ReconstructionSystem,
    analysis_matrix,
    frame_operator,
    system_from_synthesis,
)
from .errors import NotReconstructionSystemError, SamplingError, StructuralError

__all__ = [
    "DualCandidate",
    "DualManifold",
    "canonical_dual",
    "dual_manifold",
    "dual_manifold_sample",
    "inverse_frame_operator",
    "verify_dual",
]


@dataclass(frozen=True, eq=False)
class DualCandidate:
    """A candidate dual with its reconstruction-identity residual."""

    system: ReconstructionSystem
    reference: ReconstructionSystem
    dual_residual: float
    tolerance: float

    @property
    def is_dual(self) -> bool:
        return self.dual_residual <= self.tolerance


def inverse_frame_operator(system: ReconstructionSystem,
                           tolerance: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """Inverse of the block Gram sum; raises when it is numerically singular."""
    gram = frame_operator(system)
    lower, upper = eigen_bounds(gram)
    if lower <= threshold(tolerance, upper):
        raise NotReconstructionSystemError(
            f"block Gram sum is singular (lambda_min={lower:.3e}, lambda_max={upper:.3e})")
    return np.linalg.inv(gram)


def canonical_dual(system: ReconstructionSystem,
                   tolerance: float = DEFAULT_TOLERANCE) -> ReconstructionSystem:
    """Blocks ``V_i S^{-1}``; the minimal-norm dual."""
    inverse = inverse_frame_operator(system, tolerance)
    return ReconstructionSystem(tuple(b @ inverse for b in system.blocks))


def verify_dual(candidate: ReconstructionSystem, reference: ReconstructionSystem,
                tolerance: float = DEFAULT_TOLERANCE) -> DualCandidate:
    """Measure ``||sum_i W_i^* V_i - I||`` for equal-signature systems."""
    if candidate.signature != reference.signature:
        raise StructuralError(
            f"signature mismatch: {candidate.signature} vs {reference.signature}")
    total = np.zeros((reference.d, reference.d), dtype=np.complex128)
    for w, v in zip(candidate.blocks, reference.blocks):
        total += dagger(w) @ v
    residual = frobenius(total - np.eye(reference.d))
    return DualCandidate(candidate, reference, residual, tolerance)


@dataclass(frozen=True, eq=False)
class DualManifold:
    """Affine chart ``Z -> base + Z @ complement`` over all duals of a system.

    ``base_synthesis`` is the canonical dual's synthesis matrix (``d x K``)
    and ``range_complement`` the orthogonal projection of ``C^K`` onto the
    complement of the analysis range.  Distinct parameters can collide only
    in the direction the projector kills, so the chart is onto the dual set
    and the parameter ``Z = 0`` is the canonical dual.
    """

    reference: ReconstructionSystem
    base_synthesis: np.ndarray
    range_complement: np.ndarray

    def synthesis_at(self, parameter: np.ndarray) -> np.ndarray:
        z = np.asarray(parameter, dtype=np.complex128)
        if z.shape != self.base_synthesis.shape:
            raise StructuralError(
                f"parameter must have shape {self.base_synthesis.shape}, got {z.shape}")
        return self.base_synthesis + z @ self.range_complement

    def system_at(self, parameter: np.ndarray) -> ReconstructionSystem:
        return system_from_synthesis(self.synthesis_at(parameter), self.reference.k)


def dual_manifold(system: ReconstructionSystem,
                  tolerance: float = DEFAULT_TOLERANCE) -> DualManifold:
    inverse = inverse_frame_operator(system, tolerance)
    analysis = analysis_matrix(system)
    base = inverse @ dagger(analysis)
    complement = np.eye(system.tr_k) - analysis @ base
    return DualManifold(system, base, complement)


def dual_manifold_sample(system: ReconstructionSystem, seed: int, count: int,
                         scale: float = 1.0,
                         tolerance: float = DEFAULT_TOLERANCE,
                         max_redraws: int = 100) -> list[ReconstructionSystem]:
    """Draw ``count`` duals with Gaussian chart parameters, deterministically in ``seed``.

    Draws whose own block Gram sum is numerically singular are discarded and
    redrawn (such duals exist but are useless downstream); each slot gets at
    most ``max_redraws`` attempts before ``SamplingError``.
    """
    if count < 1:
        raise StructuralError("count must be at least 1")
    manifold = dual_manifold(system, tolerance)
    rng = np.random.default_rng(seed)
    shape = (system.d, system.tr_k)
    samples: list[ReconstructionSystem] = []
    for _ in range(count):
        for _ in range(max_redraws):
            candidate = manifold.system_at(complex_gaussian(rng, shape, scale))
            lower, upper = eigen_bounds(frame_operator(candidate))
            if lower > threshold(tolerance, upper):
                samples.append(candidate)
                break
        else:
            raise SamplingError(f"no usable dual after {max_redraws} redraws")
    return samples
