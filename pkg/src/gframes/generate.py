"""Seeded random generators for systems used by tests and experiments.

All generators are deterministic in their ``seed`` argument (an int or an
existing ``numpy.random.Generator``) and guard conditioning, so comparisons
at the 1e-10 level stay meaningful downstream.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from ._linalg import complex_gaussian, dagger, eigen_bounds, random_unitary, singular_values
from .core import ReconstructionSystem, frame_operator
from .errors import SamplingError, StructuralError

__all__ = [
    "commuting_projective",
    "partition_protocol",
    "random_coisometry",
    "random_projective",
    "random_riesz",
    "random_system",
    "random_uniform_projective",
]

_ATTEMPTS = 100


def random_coisometry(rng: np.random.Generator, k: int, d: int) -> np.ndarray:
    """Random ``k x d`` block with orthonormal rows (adjoint of a QR factor)."""
    if k > d:
        raise StructuralError("a coisometry needs k <= d")
    q, _ = np.linalg.qr(complex_gaussian(rng, (d, k)))
    return dagger(q)


def _well_conditioned(system: ReconstructionSystem, floor: float) -> bool:
    lower, upper = eigen_bounds(frame_operator(system))
    return lower > floor * max(upper, 1.0)


def random_system(d: int, k: Sequence[int], seed, scale: float = 1.0,
                  conditioning: float = 1e-3) -> ReconstructionSystem:
    """Gaussian blocks, redrawn until the lower frame bound is comfortable."""
    rng = np.random.default_rng(seed)
    sizes = tuple(int(ki) for ki in k)
    for _ in range(_ATTEMPTS):
        system = ReconstructionSystem(tuple(complex_gaussian(rng, (ki, d), scale)
                                            for ki in sizes))
        if _well_conditioned(system, conditioning):
            return system
    raise SamplingError(f"no well-conditioned system for d={d}, k={sizes}")


def random_projective(d: int, k: Sequence[int], seed,
                      weights: Sequence[float] | None = None,
                      conditioning: float = 1e-3) -> ReconstructionSystem:
    """Weighted random coisometries; weights default to uniform draws in [0.5, 2]."""
    rng = np.random.default_rng(seed)
    sizes = tuple(int(ki) for ki in k)
    for _ in range(_ATTEMPTS):
        if weights is None:
            scales = 0.5 + 1.5 * rng.random(len(sizes))
        else:
            scales = np.asarray(weights, dtype=float)
            if scales.shape != (len(sizes),) or np.any(scales <= 0):
                raise StructuralError("weights must be positive, one per block")
        system = ReconstructionSystem(tuple(v * random_coisometry(rng, ki, d)
                                            for v, ki in zip(scales, sizes)))
        if _well_conditioned(system, conditioning):
            return system
    raise SamplingError(f"no well-conditioned projective system for d={d}, k={sizes}")


def random_uniform_projective(d: int, k: Sequence[int], seed,
                              weight: float = 1.0) -> ReconstructionSystem:
    return random_projective(d, k, seed, weights=[weight] * len(tuple(k)))


def partition_protocol(d: int, block_dim: int, copies: int, seed) -> ReconstructionSystem:
    """Equal-block-size uniform projective system whose Gram sum is the identity.

    Each copy partitions ``C^d`` into ``d / block_dim`` random orthogonal
    slices; scaling every slice by ``1/sqrt(copies)`` makes the union a
    protocol with all weights equal.
    """
    if d % block_dim != 0:
        raise StructuralError("block_dim must divide d")
    if copies < 1:
        raise StructuralError("copies must be at least 1")
    rng = np.random.default_rng(seed)
    blocks = []
    for _ in range(copies):
        unitary = random_unitary(rng, d)
        for start in range(0, d, block_dim):
            slice_ = dagger(unitary[:, start:start + block_dim])
            blocks.append(slice_ / np.sqrt(copies))
    return ReconstructionSystem(tuple(blocks))


def random_riesz(k: Sequence[int], seed, conditioning: float = 1e-2) -> ReconstructionSystem:
    """Row-slices of a random invertible matrix; block dimensions sum to ``d``."""
    sizes = tuple(int(ki) for ki in k)
    d = sum(sizes)
    rng = np.random.default_rng(seed)
    for _ in range(_ATTEMPTS):
        square = complex_gaussian(rng, (d, d))
        sigma = singular_values(square)
        if float(sigma[-1]) > conditioning * float(sigma[0]):
            blocks = []
            offset = 0
            for ki in sizes:
                blocks.append(square[offset:offset + ki])
                offset += ki
            return ReconstructionSystem(tuple(blocks))
    raise SamplingError(f"no well-conditioned square matrix for d={d}")


def commuting_projective(d: int, masks: Iterable[Iterable[int]], seed,
                         weights: Sequence[float] | None = None) -> ReconstructionSystem:
    """Projective system whose range projections commute by construction.

    Every block selects the coordinate subset ``masks[i]`` of one shared
    random orthonormal basis, so all range projections diagonalize together;
    coordinate ``j``'s multiplicity is the number of masks containing it.
    """
    mask_list = [tuple(sorted(int(j) for j in mask)) for mask in masks]
    if not mask_list or any(not mask for mask in mask_list):
        raise StructuralError("need at least one non-empty mask per block")
    if any(j < 0 or j >= d for mask in mask_list for j in mask):
        raise StructuralError(f"mask entries must lie in [0, {d})")
    covered = set().union(*mask_list)
    if covered != set(range(d)):
        raise StructuralError("masks must cover every coordinate")
    rng = np.random.default_rng(seed)
    if weights is None:
        scales = 0.5 + 1.5 * rng.random(len(mask_list))
    else:
        scales = np.asarray(weights, dtype=float)
        if scales.shape != (len(mask_list),) or np.any(scales <= 0):
            raise StructuralError("weights must be positive, one per block")
    unitary = random_unitary(rng, d)
    blocks = tuple(v * dagger(unitary[:, list(mask)])
                   for v, mask in zip(scales, mask_list))
    return ReconstructionSystem(blocks)
