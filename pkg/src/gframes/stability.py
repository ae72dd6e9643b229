"""Stability of reconstruction under dropping whole blocks.

Dropping the blocks in ``J`` multiplies the block Gram sum on the left by

    M_J = I - sum_{i in J} V_i^* V_i S^{-1}

so the survivors form a usable system exactly when this factor is
invertible, and then their canonical dual is reachable two ways: from the
truncated Gram sum directly, or from the full canonical dual times
``M_J^{-1}``.  A cheap sufficient condition for invertibility is that the
dropped spectral energy ``sum_{i in J} ||V_i||_sp^2`` stays below the lower
frame bound.  Indices are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from ._linalg import (
    dagger,
    eigen_bounds,
    frobenius,
    hermitian_part,
    singular_values,
    spectral_norm,
    threshold,
)
from .core import DEFAULT_TOLERANCE, ReconstructionSystem, frame_operator
from .duals import inverse_frame_operator
from .errors import GFramesError, NotReconstructionSystemError, StructuralError

__all__ = [
    "TruncationReport",
    "ck_sufficient_condition",
    "truncate",
    "truncated_canonical_dual",
]


@dataclass(frozen=True, eq=False)
class TruncationReport:
    """Outcome of dropping a block subset.

    ``truncation_factor`` is the matrix ``M_J`` above; multiplying it into
    the original Gram sum reproduces ``truncated_frame_operator`` (which is
    computed independently from the surviving blocks).
    ``lower_bound_estimate`` is the guaranteed lower frame bound
    ``A / ||M_J^{-1}||_sp``; ``bounds_after`` holds the actual extreme
    eigenvalues of the truncated Gram sum when the survivors form a system.
    """

    dropped: tuple[int, ...]
    kept: tuple[int, ...]
    truncation_factor: np.ndarray
    is_rs_after: bool
    truncated_frame_operator: np.ndarray
    lower_bound_estimate: float
    bounds_after: tuple[float, float] | None


def _index_subset(indices: Iterable[int], m: int) -> tuple[int, ...]:
    listed = [int(i) for i in indices]
    if len(listed) != len(set(listed)):
        raise StructuralError("dropped indices must not repeat")
    if any(i < 0 or i >= m for i in listed):
        raise StructuralError(f"dropped indices must lie in [0, {m})")
    return tuple(sorted(listed))


def truncate(system: ReconstructionSystem, dropped: Iterable[int],
             tolerance: float = DEFAULT_TOLERANCE) -> TruncationReport:
    """Drop the blocks in ``dropped`` (a proper subset) and report stability."""
    drop = _index_subset(dropped, system.m)
    if len(drop) == system.m:
        raise StructuralError("cannot drop every block")
    inverse = inverse_frame_operator(system, tolerance)
    gram = frame_operator(system)
    lower = eigen_bounds(gram)[0]

    removed = np.zeros((system.d, system.d), dtype=np.complex128)
    for i in drop:
        removed += dagger(system.blocks[i]) @ system.blocks[i]
    factor = np.eye(system.d) - removed @ inverse

    sigma = singular_values(factor)
    smallest = float(sigma[-1])
    is_rs_after = smallest > threshold(tolerance, float(sigma[0]))

    kept = tuple(i for i in range(system.m) if i not in drop)
    survivor_gram = hermitian_part(gram - removed)

    return TruncationReport(
        dropped=drop,
        kept=kept,
        truncation_factor=factor,
        is_rs_after=is_rs_after,
        truncated_frame_operator=survivor_gram,
        lower_bound_estimate=lower * smallest,
        bounds_after=eigen_bounds(survivor_gram) if is_rs_after else None,
    )


def truncated_canonical_dual(system: ReconstructionSystem, dropped: Iterable[int],
                             tolerance: float = DEFAULT_TOLERANCE) -> ReconstructionSystem:
    """Canonical dual of the survivors, computed two ways and cross-checked.

    Path one inverts the truncated Gram sum; path two multiplies the full
    canonical dual blocks by the inverse truncation factor.  The two agree
    mathematically; a discrepancy beyond 1e-9 (relative) means the
    truncation is too ill-conditioned to trust and raises ``GFramesError``.
    """
    report = truncate(system, dropped, tolerance)
    if not report.is_rs_after:
        raise NotReconstructionSystemError(
            "surviving blocks have no positive lower frame bound")
    direct_inverse = np.linalg.inv(report.truncated_frame_operator)
    direct = [system.blocks[i] @ direct_inverse for i in report.kept]

    full_inverse = inverse_frame_operator(system, tolerance)
    factor_inverse = np.linalg.inv(report.truncation_factor)
    via_factor = [system.blocks[i] @ full_inverse @ factor_inverse for i in report.kept]

    scale = max(frobenius(b) for b in direct)
    deviation = max(frobenius(a - b) for a, b in zip(direct, via_factor))
    if deviation > threshold(1e-9, scale):
        raise GFramesError(
            f"truncated dual characterizations disagree by {deviation:.3e}")
    return ReconstructionSystem(tuple(direct))


def ck_sufficient_condition(system: ReconstructionSystem, dropped: Iterable[int],
                            tolerance: float = DEFAULT_TOLERANCE) -> tuple[bool, float]:
    """Spectral-energy test for safe truncation.

    Returns ``(holds, estimate)`` where ``estimate = A - sum_{i in J}
    ||V_i||_sp^2``; when positive, the survivors are guaranteed to form a
    system with lower frame bound at least ``estimate``.
    """
    drop = _index_subset(dropped, system.m)
    gram = frame_operator(system)
    lower, upper = eigen_bounds(gram)
    if lower <= threshold(tolerance, upper):
        raise NotReconstructionSystemError("system has no positive lower frame bound")
    total = sum(spectral_norm(system.blocks[i]) ** 2 for i in drop)
    estimate = lower - total
    return total < lower, float(estimate)
