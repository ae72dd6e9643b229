"""Structured system constructions: group orbits, commuting-projection duals,
and projective duals of minimal-redundancy systems.

Three independent construction families live here.

Group orbits: a finite unitary representation ``g -> U_g`` turns one base
block ``V`` into the system ``{V U_g}``.  Its block Gram sum commutes with
every ``U_h``, so the canonical dual is again a group orbit (of ``V S^{-1}``)
and, for surjective bases, so is the nearest projective system.

Commuting projections: when the normalized block Gram matrices
``P_i = v_i^{-2} V_i^* V_i`` pairwise commute they share eigenspaces; placing
unimodular coefficients on the common eigenspace resolution produces duals
``W_i = v_i^{-2} V_i U_i`` that are themselves projective, provided the
coefficients assigned to each eigenspace have conjugates summing to one.

Minimal redundancy: when the block dimensions add up to the domain dimension
the dual is unique, so a projective dual exists iff the canonical dual is
projective; equivalently each block must act as a multiple of an isometry on
the intersection of the other blocks' kernels.  Both criteria are computed
and cross-checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import (
    dagger,
    eigen_bounds,
    frobenius,
    null_space,
    singular_values,
    threshold,
)
from .core import (
    DEFAULT_TOLERANCE,
    ReconstructionSystem,
    blockwise_distance,
    classify,
    frame_operator,
)
from .approx import nearest_projective, polar_coisometry
from .duals import canonical_dual
from .errors import (
    NotReconstructionSystemError,
    PreconditionError,
    StructuralError,
)

REPRESENTATION_TOLERANCE = 1e-10

# primitive sixth root of unity: unimodular, and it plus its conjugate is 1
_HEXAGONAL = complex(0.5, math.sqrt(3.0) / 2.0)

__all__ = [
    "GroupSystemReport",
    "RieszDualCheck",
    "RieszIndexCheck",
    "UnitaryRepresentation",
    "commuting_projective_dual",
    "cyclic_shift_representation",
    "direct_product",
    "fixtures",
    "group_rs",
    "group_rs_checks",
    "riesz_projective_dual_check",
    "unit_sum_coefficients",
]


@dataclass(frozen=True, eq=False)
class UnitaryRepresentation:
    """Finite group of unitaries with its multiplication table.

    ``table[g, h]`` is the index of ``U_g U_h``.  Validation checks each
    matrix for unitarity, the table for closure against actual products, and
    the existence of an identity element, all within ``1e-10``.
    """

    unitaries: tuple[np.ndarray, ...]
    table: np.ndarray

    def __post_init__(self) -> None:
        mats = tuple(np.asarray(u, dtype=np.complex128) for u in self.unitaries)
        if not mats:
            raise StructuralError("a representation needs at least one element")
        d = mats[0].shape[0]
        for g, u in enumerate(mats):
            if u.ndim != 2 or u.shape != (d, d):
                raise StructuralError(f"element {g} is not {d} x {d}")
            if frobenius(dagger(u) @ u - np.eye(d)) > REPRESENTATION_TOLERANCE:
                raise StructuralError(f"element {g} is not unitary")
        table = np.asarray(self.table, dtype=int)
        m = len(mats)
        if table.shape != (m, m) or table.min() < 0 or table.max() >= m:
            raise StructuralError(f"table must be {m} x {m} with entries in [0, {m})")
        for g in range(m):
            for h in range(m):
                product = mats[g] @ mats[h]
                if frobenius(product - mats[table[g, h]]) > REPRESENTATION_TOLERANCE:
                    raise StructuralError(f"table entry ({g}, {h}) does not match the product")
        identity = None
        order = np.arange(m)
        for e in range(m):
            if np.array_equal(table[e], order) and np.array_equal(table[:, e], order):
                identity = e
                break
        if identity is None or frobenius(mats[identity] - np.eye(d)) > REPRESENTATION_TOLERANCE:
            raise StructuralError("representation has no identity element")
        table.flags.writeable = False
        object.__setattr__(self, "unitaries", mats)
        object.__setattr__(self, "table", table)
        object.__setattr__(self, "_identity", identity)

    @property
    def order(self) -> int:
        return len(self.unitaries)

    @property
    def dimension(self) -> int:
        return self.unitaries[0].shape[0]

    @property
    def identity_index(self) -> int:
        return self._identity


def cyclic_shift_representation(n: int) -> UnitaryRepresentation:
    """Cyclic group of order ``n`` acting on ``C^n`` by coordinate shifts."""
    if n < 1:
        raise StructuralError("order must be positive")
    shift = np.zeros((n, n), dtype=np.complex128)
    for i in range(n):
        shift[i, (i - 1) % n] = 1.0
    powers = [np.eye(n, dtype=np.complex128)]
    for _ in range(n - 1):
        powers.append(shift @ powers[-1])
    table = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return UnitaryRepresentation(tuple(powers), table)


def direct_product(a: UnitaryRepresentation,
                   b: UnitaryRepresentation) -> UnitaryRepresentation:
    """Product group acting on the tensor product space via Kronecker products."""
    mats = tuple(np.kron(ua, ub) for ua in a.unitaries for ub in b.unitaries)
    mb = b.order
    table = np.zeros((a.order * mb, a.order * mb), dtype=int)
    for ga in range(a.order):
        for gb in range(mb):
            for ha in range(a.order):
                for hb in range(mb):
                    table[ga * mb + gb, ha * mb + hb] = a.table[ga, ha] * mb + b.table[gb, hb]
    return UnitaryRepresentation(mats, table)


def group_rs(rep: UnitaryRepresentation, base: np.ndarray) -> ReconstructionSystem:
    """Orbit system ``{V U_g}`` of a ``k x d`` base block, ``k <= d``."""
    b = np.asarray(base, dtype=np.complex128)
    if b.ndim != 2 or b.shape[0] > b.shape[1]:
        raise StructuralError("base must be k x d with k <= d")
    if b.shape[1] != rep.dimension:
        raise StructuralError(
            f"base acts on C^{b.shape[1]} but the representation is on C^{rep.dimension}")
    return ReconstructionSystem(tuple(b @ u for u in rep.unitaries))


@dataclass(frozen=True)
class GroupSystemReport:
    """Measured deviations from the structural claims about orbit systems.

    ``commutation_residual``: largest ``||S U_h - U_h S||`` over the group.
    ``canonical_dual_deviation``: blockwise distance between the canonical
    dual and the orbit of the dual base ``V S^{-1}``.
    ``projective_approximation_deviation``: blockwise distance between the
    nearest projective system to the canonical dual and the orbit of the
    rescaled polar coisometry of the dual base; ``None`` when the base is
    not surjective (the comparison needs full-rank blocks).
    """

    commutation_residual: float
    canonical_dual_deviation: float
    projective_approximation_deviation: float | None


def group_rs_checks(rep: UnitaryRepresentation, base: np.ndarray,
                    tolerance: float = DEFAULT_TOLERANCE) -> GroupSystemReport:
    """Verify the orbit-structure claims for one representation and base."""
    system = group_rs(rep, base)
    gram = frame_operator(system)
    lower, upper = eigen_bounds(gram)
    if lower <= threshold(tolerance, upper):
        raise NotReconstructionSystemError("orbit system has no positive lower frame bound")

    commutation = max(frobenius(gram @ u - u @ gram) for u in rep.unitaries)

    dual = canonical_dual(system, tolerance)
    dual_base = np.asarray(base, dtype=np.complex128) @ np.linalg.inv(gram)
    dual_deviation = blockwise_distance(dual, group_rs(rep, dual_base))

    sigma = singular_values(dual_base)
    approx_deviation = None
    if float(sigma[-1]) > threshold(tolerance, float(sigma[0])):
        weight = float(np.sum(sigma)) / dual_base.shape[0]
        coisometry = polar_coisometry(dual_base, tolerance).coisometry
        approximation, _ = nearest_projective(dual, tolerance)
        approx_deviation = blockwise_distance(
            approximation, group_rs(rep, weight * coisometry))

    return GroupSystemReport(
        commutation_residual=float(commutation),
        canonical_dual_deviation=float(dual_deviation),
        projective_approximation_deviation=approx_deviation,
    )


def unit_sum_coefficients(count: int) -> tuple[complex, ...]:
    """``count`` unimodular coefficients whose conjugates sum to exactly 1.

    Odd counts use cancelling ``(1, -1)`` pairs plus a single ``1``; even
    counts use pairs plus a conjugate pair of primitive sixth roots of unity
    (which sum to 1).
    """
    if count < 1:
        raise StructuralError("count must be at least 1")
    pairs = (count - 1) // 2 if count % 2 else (count - 2) // 2
    coefficients: list[complex] = []
    for _ in range(pairs):
        coefficients.extend((1.0 + 0.0j, -1.0 + 0.0j))
    if count % 2:
        coefficients.append(1.0 + 0.0j)
    else:
        coefficients.extend((_HEXAGONAL, _HEXAGONAL.conjugate()))
    return tuple(coefficients)


def commuting_projective_dual(system: ReconstructionSystem,
                              tolerance: float = DEFAULT_TOLERANCE) -> ReconstructionSystem:
    """Projective dual of a projective system with commuting range projections.

    The normalized block Grams ``P_i = v_i^{-2} V_i^* V_i`` must pairwise
    commute.  Their common eigenspace resolution is recovered by
    diagonalizing ``sum_i 3^i P_i`` (distinct membership patterns get
    distinct eigenvalues) and grouping eigenvectors by which projections
    contain them.  Each eigenspace receives unimodular coefficients summing
    (conjugated) to one across the blocks containing it, which makes

        W_i = v_i^{-2} V_i U_i,    U_i = sum_j eps_ij Q_j

    a dual, and ``U_i U_i^* = P_i`` makes it projective with weights
    ``1 / v_i``.
    """
    shape = classify(system, tolerance)
    if not shape.is_projective:
        raise PreconditionError("the construction needs a projective system")
    weights = shape.weights
    projections = [(dagger(b) @ b) / (v * v)
                   for b, v in zip(system.blocks, weights)]

    for i in range(system.m):
        for j in range(i + 1, system.m):
            wobble = frobenius(projections[i] @ projections[j]
                               - projections[j] @ projections[i])
            if wobble > threshold(tolerance, 1.0):
                raise PreconditionError(
                    f"range projections {i} and {j} do not commute (residual {wobble:.3e})")

    separator = np.zeros((system.d, system.d), dtype=np.complex128)
    for i, p in enumerate(projections):
        separator += (3.0 ** i) * p
    _, vectors = np.linalg.eigh(0.5 * (separator + dagger(separator)))

    membership = np.zeros((system.m, system.d), dtype=bool)
    for i, p in enumerate(projections):
        quadratic = np.real(np.sum(vectors.conj() * (p @ vectors), axis=0))
        membership[i] = quadratic > 0.5

    groups: dict[tuple[bool, ...], list[int]] = {}
    for column in range(system.d):
        groups.setdefault(tuple(membership[:, column]), []).append(column)

    if any(not any(pattern) for pattern in groups):
        raise NotReconstructionSystemError(
            "some directions lie outside every block range")

    factors = [np.zeros((system.d, system.d), dtype=np.complex128)
               for _ in range(system.m)]
    for pattern, columns in groups.items():
        basis = vectors[:, columns]
        eigenspace = basis @ dagger(basis)
        members = [i for i, inside in enumerate(pattern) if inside]
        for coefficient, i in zip(unit_sum_coefficients(len(members)), members):
            factors[i] += coefficient * eigenspace

    return ReconstructionSystem(tuple((b @ u) / (v * v)
                                      for b, u, v in zip(system.blocks, factors, weights)))


@dataclass(frozen=True)
class RieszIndexCheck:
    """Restriction of one block to the other blocks' common kernel."""

    index: int
    singular_values: tuple[float, ...]
    is_scaled_isometry: bool


@dataclass(frozen=True)
class RieszDualCheck:
    """Projective-dual existence verdict for a minimal-redundancy system.

    ``has_projective_dual`` is the restriction criterion (every block a
    multiple of an isometry on its complementary kernel);
    ``canonical_dual_projective`` is the direct check on the unique dual.
    The two agree in exact arithmetic.
    """

    has_projective_dual: bool
    per_index: tuple[RieszIndexCheck, ...]
    canonical_dual_projective: bool


def riesz_projective_dual_check(system: ReconstructionSystem,
                                tolerance: float = DEFAULT_TOLERANCE) -> RieszDualCheck:
    """Decide projective-dual existence when block dimensions sum to ``d``."""
    shape = classify(system, tolerance)
    if not shape.is_riesz:
        raise PreconditionError(
            "the criterion applies when total block dimension equals d")
    if not shape.is_rs:
        raise NotReconstructionSystemError("system has no positive lower frame bound")

    checks = []
    for i in range(system.m):
        others = [system.blocks[j] for j in range(system.m) if j != i]
        if others:
            kernel = null_space(np.vstack(others), tolerance)
        else:
            kernel = np.eye(system.d, dtype=np.complex128)
        restricted = system.blocks[i] @ kernel
        sigma = singular_values(restricted)
        top = float(sigma[0]) if sigma.size else 0.0
        bottom = float(sigma[-1]) if sigma.size else 0.0
        scaled = (sigma.size > 0
                  and bottom > threshold(tolerance, top)
                  and (top - bottom) <= threshold(tolerance, top))
        checks.append(RieszIndexCheck(index=i,
                                      singular_values=tuple(float(s) for s in sigma),
                                      is_scaled_isometry=scaled))

    dual_projective = classify(canonical_dual(system, tolerance), tolerance).is_projective
    return RieszDualCheck(
        has_projective_dual=all(c.is_scaled_isometry for c in checks),
        per_index=tuple(checks),
        canonical_dual_projective=dual_projective,
    )


def fixtures() -> dict[str, ReconstructionSystem]:
    """Named worked examples exercising every corner of the theory.

    - ``overlapping_planes``: two coordinate-plane coisometries on C^3
      sharing the last axis; uniform projective, not a protocol.
    - ``overlapping_planes_dual``: a projective dual of the above built from
      conjugate sixth roots of unity on the shared axis (the canonical dual
      is not projective).
    - ``riesz_without_projective_dual``: minimal-redundancy pair on C^4
      whose unique dual is not projective.
    - ``riesz_with_projective_dual``: companion pair satisfying the
      restriction criterion.
    - ``redundant_without_projective_dual``: the first pair extended by a
      third coisometry with the same kernel as the second block.
    """
    root_half = 1.0 / math.sqrt(2.0)
    plane_yz = [[0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]
    plane_xz = [[1.0, 0.0, 0.0], [0.0, 0.0, 1.0]]
    overlapping = ReconstructionSystem((plane_yz, plane_xz))

    omega = _HEXAGONAL
    dual_one = [[0.0, 1.0, 0.0], [0.0, 0.0, omega.conjugate()]]
    dual_two = [[1.0, 0.0, 0.0], [0.0, 0.0, omega]]
    overlapping_dual = ReconstructionSystem((dual_one, dual_two))

    coordinates = [[1.0, 0.0, 0.0, 0.0], [0.0, 1.0, 0.0, 0.0]]
    mixing = [[0.0, 0.0, 1.0, 0.0], [0.0, root_half, 0.0, -root_half]]
    riesz_without = ReconstructionSystem((coordinates, mixing))

    differences = [[1.0, 0.0, -1.0, 0.0], [0.0, 1.0, 0.0, -1.0]]
    riesz_with = ReconstructionSystem((coordinates, differences))

    # third coisometry with the same kernel as the mixing block: rotate an
    # orthonormal basis of its row space by 45 degrees
    shared_kernel = [[0.0, 0.5, root_half, -0.5], [0.0, -0.5, root_half, 0.5]]
    redundant = ReconstructionSystem((coordinates, mixing, shared_kernel))

    return {
        "overlapping_planes": overlapping,
        "overlapping_planes_dual": overlapping_dual,
        "riesz_without_projective_dual": riesz_without,
        "riesz_with_projective_dual": riesz_with,
        "redundant_without_projective_dual": redundant,
    }
