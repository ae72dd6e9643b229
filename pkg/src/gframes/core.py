"""Data model for finite-dimensional reconstruction systems.

A reconstruction system is an ordered family of complex blocks
``V_i : C^d -> C^{k_i}``, stored as ``k_i x d`` matrices.  The block Gram sum

    S = sum_i V_i^* V_i

plays the role of the frame operator: the family admits stable linear
reconstruction exactly when ``S`` is positive definite, and the extreme
eigenvalues of ``S`` are the frame bounds.  Stacking the blocks vertically
gives the ``K x d`` analysis matrix (``K = sum_i k_i``); its adjoint is the
synthesis matrix, and ``S`` is analysis followed by synthesis.

All norms written ``||.||`` in this module's docstrings are Frobenius norms
unless said otherwise; spectral norms are always called out by name.  Block
indices are 0-based everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._linalg import (
    dagger,
    eigen_bounds,
    frobenius,
    hermitian_part,
    singular_values,
    threshold,
)
from .errors import StructuralError

DEFAULT_TOLERANCE = 1e-9

__all__ = [
    "DEFAULT_TOLERANCE",
    "RSSignature",
    "ReconstructionSystem",
    "SystemClassification",
    "analysis_apply",
    "analysis_matrix",
    "blockwise_distance",
    "classify",
    "frame_operator",
    "synthesis_apply",
    "synthesis_matrix",
    "system_from_synthesis",
]


@dataclass(frozen=True)
class RSSignature:
    """Shape summary of a system: ``m`` blocks of sizes ``k`` over ``C^d``."""

    m: int
    k: tuple[int, ...]
    d: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.d < 1:
            raise StructuralError("signature needs at least one block and d >= 1")
        if len(self.k) != self.m or any(int(ki) < 1 for ki in self.k):
            raise StructuralError("signature block sizes must be %d positive ints" % self.m)
        object.__setattr__(self, "k", tuple(int(ki) for ki in self.k))

    @property
    def tr_k(self) -> int:
        """Total coefficient dimension ``K = sum_i k_i``."""
        return sum(self.k)


def _as_block(entry, index: int) -> np.ndarray:
    arr = np.asarray(entry, dtype=np.complex128)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise StructuralError(f"block {index} must be a non-empty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise StructuralError(f"block {index} contains non-finite entries")
    arr = arr.copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class ReconstructionSystem:
    """Immutable ordered family of complex blocks over a common domain ``C^d``.

    Parameters
    ----------
    blocks
        Iterable of 2-d array-likes, each with the same number of columns.
        Entries are cast to ``complex128`` and must be finite.
    """

    blocks: tuple[np.ndarray, ...]

    def __post_init__(self) -> None:
        converted = tuple(_as_block(b, i) for i, b in enumerate(self.blocks))
        if not converted:
            raise StructuralError("a system needs at least one block")
        d = converted[0].shape[1]
        for i, b in enumerate(converted):
            if b.shape[1] != d:
                raise StructuralError(
                    f"block {i} has {b.shape[1]} columns, expected {d} (common domain)")
        object.__setattr__(self, "blocks", converted)

    @property
    def m(self) -> int:
        return len(self.blocks)

    @property
    def k(self) -> tuple[int, ...]:
        return tuple(b.shape[0] for b in self.blocks)

    @property
    def d(self) -> int:
        return self.blocks[0].shape[1]

    @property
    def tr_k(self) -> int:
        return sum(self.k)

    @property
    def signature(self) -> RSSignature:
        return RSSignature(self.m, self.k, self.d)

    def __repr__(self) -> str:
        return f"ReconstructionSystem(m={self.m}, k={self.k}, d={self.d})"


@dataclass(frozen=True)
class SystemClassification:
    """Structural flags of a system at a fixed tolerance.

    ``weights`` holds the per-block spectral norms, and is populated only
    when ``is_projective`` is true (the weights are meaningless otherwise).
    ``lower_bound``/``upper_bound`` are the extreme eigenvalues of the block
    Gram sum; both are reported even when ``is_rs`` fails.
    """

    is_rs: bool
    is_injective: bool
    is_projective: bool
    weights: tuple[float, ...] | None
    is_uniform: bool
    is_protocol: bool
    is_riesz: bool
    lower_bound: float
    upper_bound: float
    tolerance: float


def frame_operator(system: ReconstructionSystem) -> np.ndarray:
    """Block Gram sum ``S = sum_i V_i^* V_i``, symmetrized on return."""
    total = np.zeros((system.d, system.d), dtype=np.complex128)
    for b in system.blocks:
        total += dagger(b) @ b
    return hermitian_part(total)


def analysis_apply(system: ReconstructionSystem, x) -> list[np.ndarray]:
    """Per-block coefficient packets ``[V_0 x, ..., V_{m-1} x]``."""
    vec = np.asarray(x, dtype=np.complex128)
    if vec.ndim != 1 or vec.shape[0] != system.d:
        raise StructuralError(f"expected a vector of length {system.d}")
    return [b @ vec for b in system.blocks]


def synthesis_apply(system: ReconstructionSystem, packets: Sequence) -> np.ndarray:
    """Adjoint-side sum ``sum_i V_i^* y_i`` for per-block packets ``y_i``."""
    if len(packets) != system.m:
        raise StructuralError(f"expected {system.m} packets, got {len(packets)}")
    out = np.zeros(system.d, dtype=np.complex128)
    for i, (b, y) in enumerate(zip(system.blocks, packets)):
        packet = np.asarray(y, dtype=np.complex128)
        if packet.ndim != 1 or packet.shape[0] != b.shape[0]:
            raise StructuralError(f"packet {i} must have length {b.shape[0]}")
        out += dagger(b) @ packet
    return out


def analysis_matrix(system: ReconstructionSystem) -> np.ndarray:
    """Stacked ``K x d`` analysis matrix (blocks vertically, in order)."""
    return np.vstack(system.blocks)


def synthesis_matrix(system: ReconstructionSystem) -> np.ndarray:
    """Adjoint of the analysis matrix, ``d x K``."""
    return dagger(analysis_matrix(system))


def system_from_synthesis(synthesis: np.ndarray, k: Iterable[int]) -> ReconstructionSystem:
    """Rebuild a system from a ``d x K`` synthesis matrix and block sizes."""
    sizes = tuple(int(ki) for ki in k)
    syn = np.asarray(synthesis, dtype=np.complex128)
    if syn.ndim != 2 or syn.shape[1] != sum(sizes):
        raise StructuralError(
            f"synthesis matrix must have {sum(sizes)} columns, got shape {syn.shape}")
    blocks = []
    offset = 0
    for ki in sizes:
        blocks.append(dagger(syn[:, offset:offset + ki]))
        offset += ki
    return ReconstructionSystem(tuple(blocks))


def blockwise_distance(a: ReconstructionSystem, b: ReconstructionSystem) -> float:
    """Largest per-block Frobenius distance between two equal-signature systems."""
    if a.signature != b.signature:
        raise StructuralError(f"signature mismatch: {a.signature} vs {b.signature}")
    return max(frobenius(x - y) for x, y in zip(a.blocks, b.blocks))


def classify(system: ReconstructionSystem,
             tolerance: float = DEFAULT_TOLERANCE) -> SystemClassification:
    """Classify a system at the given tolerance.

    Flags, with thresholds relative to the largest magnitude involved:

    - ``is_rs``: smallest eigenvalue of the block Gram sum is positive.
    - ``is_injective``: every block has full row rank (each ``V_i V_i^*``
      invertible).
    - ``is_projective``: every ``V_i V_i^*`` is a positive multiple of the
      identity; the multiples' square roots are the ``weights``.
    - ``is_uniform``: projective with all weights equal.
    - ``is_protocol``: the block Gram sum is the identity.
    - ``is_riesz``: total block dimension equals the domain dimension
      (purely combinatorial).
    """
    if not tolerance > 0.0:
        raise StructuralError("tolerance must be positive")
    gram = frame_operator(system)
    lower, upper = eigen_bounds(gram)
    is_rs = lower > threshold(tolerance, upper)

    spectral: list[float] = []
    injective = True
    projective = True
    for b in system.blocks:
        s = singular_values(b)
        top = float(s[0])
        spectral.append(top)
        if b.shape[0] > b.shape[1] or float(s[-1]) <= threshold(tolerance, top):
            injective = False
        residual = frobenius(b @ dagger(b) - (top * top) * np.eye(b.shape[0]))
        if top <= tolerance or residual > threshold(tolerance, top * top):
            projective = False

    weights = tuple(spectral) if projective else None
    uniform = projective and (max(spectral) - min(spectral)) <= threshold(tolerance, max(spectral))
    protocol = frobenius(gram - np.eye(system.d)) <= threshold(tolerance, upper)

    return SystemClassification(
        is_rs=is_rs,
        is_injective=injective,
        is_projective=projective,
        weights=weights,
        is_uniform=uniform,
        is_protocol=protocol,
        is_riesz=system.tr_k == system.d,
        lower_bound=lower,
        upper_bound=upper,
        tolerance=tolerance,
    )
