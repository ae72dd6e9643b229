"""Single-erasure error model and erasure-optimal duals.

When packet ``j`` is lost and the receiver reconstructs blindly (summing the
surviving packets through a dual ``W``), the error operator for a unit signal
is ``W_j^* V_j``.  Two figures of merit aggregate the per-index Frobenius
norms ``||W_j^* V_j||``: their Euclidean norm (``two_error``) and their
maximum (``worst_case``).

For projective systems with weights ``v_i`` the two-error optimum over all
duals is unique and closed-form:

    W0_i = v_i^{-2} V_i D^{-1},    D = sum_i v_i^{-2} V_i^* V_i

(``D`` is the sum of the orthogonal projections onto the block row spaces, so
it dominates a positive multiple of the block Gram sum).  The worst-case
figure has no general closed form; ``wce_minimize`` runs a projected
subgradient method over the affine dual chart, and ``wce_condition`` detects
the regime where the canonical dual is provably the unique optimum.

Block indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._linalg import dagger, eigen_bounds, frobenius, threshold
from .core import (
    DEFAULT_TOLERANCE,
    ReconstructionSystem,
    classify,
)
from .duals import dual_manifold, inverse_frame_operator
from .errors import NotReconstructionSystemError, PreconditionError, StructuralError

__all__ = [
    "ErasureMask",
    "ErrorReport",
    "blind_reconstruct",
    "error_report",
    "optimal_dual_two_error",
    "wce_condition",
    "wce_minimize",
]


@dataclass(frozen=True)
class ErasureMask:
    """Set of lost packet indices out of ``m`` blocks (0-based)."""

    indices: frozenset
    m: int

    def __post_init__(self) -> None:
        raw = self.indices
        if isinstance(raw, (int, np.integer)):
            raw = [int(raw)]
        listed = [int(i) for i in raw]
        if len(listed) != len(set(listed)):
            raise StructuralError("mask indices must not repeat")
        if self.m < 1:
            raise StructuralError("mask needs m >= 1")
        if any(i < 0 or i >= self.m for i in listed):
            raise StructuralError(f"mask indices must lie in [0, {self.m})")
        object.__setattr__(self, "indices", frozenset(listed))

    @property
    def dropped(self) -> tuple[int, ...]:
        return tuple(sorted(self.indices))

    @property
    def kept(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.m) if i not in self.indices)


@dataclass(frozen=True)
class ErrorReport:
    """Per-index erasure errors with their Euclidean and max aggregates."""

    per_index: tuple[float, ...]
    two_error: float
    worst_case: float


def blind_reconstruct(system: ReconstructionSystem, dual: ReconstructionSystem,
                      packets, mask: ErasureMask) -> np.ndarray:
    """Sum the surviving packets through the dual: ``sum_{i not in J} W_i^* y_i``."""
    if dual.signature != system.signature:
        raise StructuralError("dual and system signatures differ")
    if mask.m != system.m:
        raise StructuralError(f"mask is over {mask.m} packets, system has {system.m}")
    if len(packets) != system.m:
        raise StructuralError(f"expected {system.m} packets, got {len(packets)}")
    out = np.zeros(system.d, dtype=np.complex128)
    for i in mask.kept:
        packet = np.asarray(packets[i], dtype=np.complex128)
        if packet.ndim != 1 or packet.shape[0] != system.k[i]:
            raise StructuralError(f"packet {i} must have length {system.k[i]}")
        out += dagger(dual.blocks[i]) @ packet
    return out


def error_report(system: ReconstructionSystem,
                 dual: ReconstructionSystem) -> ErrorReport:
    """Per-index norms ``||W_j^* V_j||`` and their two aggregates."""
    if dual.signature != system.signature:
        raise StructuralError("dual and system signatures differ")
    per = tuple(frobenius(dagger(w) @ v)
                for w, v in zip(dual.blocks, system.blocks))
    return ErrorReport(per_index=per,
                       two_error=float(np.sqrt(sum(e * e for e in per))),
                       worst_case=max(per))


def optimal_dual_two_error(system: ReconstructionSystem,
                           tolerance: float = DEFAULT_TOLERANCE) -> ReconstructionSystem:
    """Unique two-error-optimal dual of a projective system."""
    shape = classify(system, tolerance)
    if not shape.is_projective:
        raise PreconditionError("two-error optimization needs a projective system")
    if not shape.is_rs:
        raise NotReconstructionSystemError("system has no positive lower frame bound")
    weights = shape.weights
    core = np.zeros((system.d, system.d), dtype=np.complex128)
    for v, b in zip(weights, system.blocks):
        core += (dagger(b) @ b) / (v * v)
    lower, _ = eigen_bounds(core)
    # positive whenever the lower frame bound is: core >= min(v^-2) * gram
    assert lower > 0.0
    inverse = np.linalg.inv(core)
    return ReconstructionSystem(tuple((b @ inverse) / (v * v)
                                      for v, b in zip(weights, system.blocks)))


def wce_condition(system: ReconstructionSystem,
                  tolerance: float = DEFAULT_TOLERANCE) -> float | None:
    """Common value of ``||S^{-1} V_i^* V_i||`` when it exists, else ``None``.

    When all the norms agree, the canonical dual is the unique worst-case
    optimal dual; returns the shared value in that case.
    """
    shape = classify(system, tolerance)
    if not shape.is_projective:
        raise PreconditionError("the worst-case criterion applies to projective systems")
    if not shape.is_rs:
        raise NotReconstructionSystemError("system has no positive lower frame bound")
    inverse = inverse_frame_operator(system, tolerance)
    norms = [frobenius(inverse @ dagger(b) @ b) for b in system.blocks]
    top = max(norms)
    if top - min(norms) <= threshold(tolerance, top):
        return float(np.mean(norms))
    return None


def wce_minimize(system: ReconstructionSystem, iterations: int = 5000, seed: int = 0,
                 tolerance: float = DEFAULT_TOLERANCE,
                 step_scale: float = 1.0) -> tuple[ReconstructionSystem, float]:
    """Minimize the worst-case erasure error over the dual family.

    Projected subgradient on the affine dual chart, started at the canonical
    dual with steps ``step_scale / sqrt(t)``; the best iterate seen is kept,
    so the returned value never exceeds the canonical dual's worst case.
    Deterministic (the seed is reserved for tie-breaking experiments; the
    default run is seed-independent but the argument mirrors the CLI).

    Returns ``(dual, achieved_worst_case)``.
    """
    shape = classify(system, tolerance)
    if not shape.is_injective:
        raise PreconditionError("worst-case optimization needs an injective system")
    if not shape.is_rs:
        raise NotReconstructionSystemError("system has no positive lower frame bound")
    if iterations < 1:
        raise StructuralError("iterations must be at least 1")
    del seed  # reserved; the subgradient path is deterministic

    manifold = dual_manifold(system, tolerance)
    d, total = system.d, system.tr_k
    offsets = np.cumsum((0,) + system.k)
    # per block: error operator at parameter Z is  C_i + Z B_i  (d x d)
    fixed = [manifold.base_synthesis[:, offsets[i]:offsets[i + 1]] @ system.blocks[i]
             for i in range(system.m)]
    moving = [manifold.range_complement[:, offsets[i]:offsets[i + 1]] @ system.blocks[i]
              for i in range(system.m)]

    z = np.zeros((d, total), dtype=np.complex128)
    best_value = np.inf
    best_z = z
    for t in range(1, iterations + 1):
        operators = [c + z @ b for c, b in zip(fixed, moving)]
        norms = [frobenius(op) for op in operators]
        worst = int(np.argmax(norms))
        value = norms[worst]
        if value < best_value:
            best_value = value
            best_z = z.copy()
        # subgradient of max_i ||C_i + Z B_i|| at the active index
        gradient = (operators[worst] / value) @ dagger(moving[worst])
        z = z - (step_scale / np.sqrt(t)) * gradient
    return manifold.system_at(best_z), float(best_value)
