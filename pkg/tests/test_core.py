"""Core data model: frame operator, analysis/synthesis, classification."""

import numpy as np
import pytest

import gframes as gf
from gframes._linalg import dagger, eigen_bounds
from gframes.errors import StructuralError
from gframes.generate import partition_protocol, random_projective, random_system
from helpers import draw_general, draw_nonuniform_projective, draw_uniform_projective


def frame_operator_oracle(system):
    """Entrywise triple loop, independent of any matrix product routine."""
    s = np.zeros((system.d, system.d), dtype=np.complex128)
    for block in system.blocks:
        k = block.shape[0]
        for a in range(system.d):
            for b in range(system.d):
                s[a, b] += sum(np.conj(block[r, a]) * block[r, b] for r in range(k))
    return s


def test_frame_operator_matches_entrywise_sum():
    rng = np.random.default_rng(101)
    for _ in range(5):
        system = draw_general(rng)
        s = gf.frame_operator(system)
        assert np.max(np.abs(s - frame_operator_oracle(system))) <= 1e-12
        assert np.array_equal(s, dagger(s))


def test_fixture_frame_operator_is_diagonal():
    system = gf.fixtures()["overlapping_planes"]
    assert np.array_equal(gf.frame_operator(system), np.diag([1.0, 1.0, 2.0]))


def test_analysis_matches_stacked_matrix():
    rng = np.random.default_rng(102)
    system = draw_general(rng)
    stacked = np.vstack([np.asarray(b) for b in system.blocks])
    assert np.array_equal(gf.analysis_matrix(system), stacked)
    x = rng.standard_normal(system.d) + 1j * rng.standard_normal(system.d)
    packets = gf.analysis_apply(system, x)
    assert np.max(np.abs(np.concatenate(packets) - stacked @ x)) <= 1e-13
    y = np.concatenate(packets)
    assert np.max(np.abs(gf.synthesis_apply(system, packets) - dagger(stacked) @ y)) <= 1e-13


def test_fixture_analysis_values():
    system = gf.fixtures()["overlapping_planes"]
    packets = gf.analysis_apply(system, np.array([1.0, 2.0, 3.0]))
    assert np.allclose(packets[0], [2.0, 3.0], atol=1e-15)
    assert np.allclose(packets[1], [1.0, 3.0], atol=1e-15)


def test_frame_inequality_and_operator_composition():
    rng = np.random.default_rng(103)
    system = draw_general(rng)
    s = gf.frame_operator(system)
    info = gf.classify(system)
    for _ in range(20):
        x = rng.standard_normal(system.d) + 1j * rng.standard_normal(system.d)
        energy = float(np.real(np.vdot(x, s @ x)))
        norm_sq = float(np.real(np.vdot(x, x)))
        assert info.lower_bound * norm_sq <= energy + 1e-9 * norm_sq
        assert energy <= info.upper_bound * norm_sq + 1e-9 * norm_sq
        recombined = gf.synthesis_apply(system, gf.analysis_apply(system, x))
        assert np.max(np.abs(recombined - s @ x)) <= 1e-12


def test_rank_characterizes_reconstruction():
    rng = np.random.default_rng(104)
    full = draw_general(rng)
    assert gf.classify(full).is_rs
    assert np.linalg.matrix_rank(gf.analysis_matrix(full)) == full.d

    deficient_blocks = []
    for block in full.blocks:
        damaged = np.array(block)
        damaged[:, -1] = 0.0
        deficient_blocks.append(damaged)
    deficient = gf.ReconstructionSystem(deficient_blocks)
    assert not gf.classify(deficient).is_rs
    assert np.linalg.matrix_rank(gf.analysis_matrix(deficient)) < deficient.d


def test_fixture_classification_flags():
    fixtures = gf.fixtures()

    overlap = gf.classify(fixtures["overlapping_planes"])
    assert overlap.is_rs and overlap.is_injective and overlap.is_projective
    assert overlap.is_uniform and not overlap.is_protocol and not overlap.is_riesz
    assert overlap.weights is not None
    assert np.allclose(overlap.weights, [1.0, 1.0], atol=1e-12)

    plain = gf.classify(fixtures["riesz_without_projective_dual"])
    assert plain.is_rs and plain.is_riesz and plain.is_projective

    scaled = gf.classify(fixtures["riesz_with_projective_dual"])
    assert scaled.is_riesz and scaled.is_projective and not scaled.is_uniform
    assert scaled.weights is not None
    assert np.allclose(sorted(scaled.weights), [1.0, np.sqrt(2.0)], atol=1e-12)

    enlarged = gf.classify(fixtures["redundant_without_projective_dual"])
    assert enlarged.is_rs and enlarged.is_projective and enlarged.is_uniform
    assert not enlarged.is_riesz


def test_zero_block_breaks_injectivity_and_projectivity():
    rng = np.random.default_rng(105)
    block = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    zero = np.zeros((1, 3))
    info = gf.classify(gf.ReconstructionSystem([block, zero]))
    assert not info.is_injective
    assert not info.is_projective


def test_projectivity_survives_left_unitaries():
    rng = np.random.default_rng(106)
    system = draw_nonuniform_projective(rng)
    rotated = []
    for block in system.blocks:
        q, _ = np.linalg.qr(rng.standard_normal((block.shape[0],) * 2)
                            + 1j * rng.standard_normal((block.shape[0],) * 2))
        rotated.append(q @ block)
    before = gf.classify(system)
    after = gf.classify(gf.ReconstructionSystem(rotated))
    assert after.is_projective
    assert np.allclose(after.weights, before.weights, atol=1e-10)


def test_uniformity_flag_tracks_weight_spread():
    rng = np.random.default_rng(107)
    uniform = gf.classify(draw_uniform_projective(rng))
    assert uniform.is_projective and uniform.is_uniform
    spread = gf.classify(draw_nonuniform_projective(rng))
    assert spread.is_projective and not spread.is_uniform


def test_partition_protocol_classification():
    info = gf.classify(partition_protocol(6, 2, 2, seed=108))
    assert info.is_protocol and info.is_uniform and info.is_projective
    assert abs(info.lower_bound - 1.0) <= 1e-12
    assert abs(info.upper_bound - 1.0) <= 1e-12


def test_classification_bounds_are_eigenvalues():
    rng = np.random.default_rng(109)
    system = draw_general(rng)
    info = gf.classify(system)
    low, high = eigen_bounds(gf.frame_operator(system))
    assert abs(info.lower_bound - low) <= 1e-13
    assert abs(info.upper_bound - high) <= 1e-13


def test_signature_and_properties():
    system = gf.fixtures()["riesz_with_projective_dual"]
    assert system.m == 2
    assert system.k == (2, 2)
    assert system.d == 4
    assert system.tr_k == 4
    assert system.signature == gf.RSSignature(m=2, k=(2, 2), d=4)
    assert system.signature.tr_k == 4


def test_signature_validation():
    with pytest.raises(StructuralError):
        gf.RSSignature(m=2, k=(2,), d=3)
    with pytest.raises(StructuralError):
        gf.RSSignature(m=1, k=(0,), d=3)
    with pytest.raises(StructuralError):
        gf.RSSignature(m=0, k=(), d=3)


def test_system_validation():
    with pytest.raises(StructuralError):
        gf.ReconstructionSystem([])
    with pytest.raises(StructuralError):
        gf.ReconstructionSystem([np.zeros((2, 3)), np.zeros((2, 4))])
    with pytest.raises(StructuralError):
        gf.ReconstructionSystem([np.zeros(3)])
    with pytest.raises(StructuralError):
        gf.ReconstructionSystem([np.array([[np.nan, 0.0]])])
    with pytest.raises(StructuralError):
        gf.ReconstructionSystem([np.zeros((0, 3))])


def test_blocks_are_read_only():
    system = gf.fixtures()["overlapping_planes"]
    with pytest.raises((ValueError, RuntimeError)):
        system.blocks[0][0, 0] = 5.0


def test_apply_validation():
    system = gf.fixtures()["overlapping_planes"]
    with pytest.raises(StructuralError):
        gf.analysis_apply(system, np.zeros(4))
    with pytest.raises(StructuralError):
        gf.synthesis_apply(system, [np.zeros(2)])
    with pytest.raises(StructuralError):
        gf.synthesis_apply(system, [np.zeros(2), np.zeros(3)])


def test_synthesis_split_round_trip():
    rng = np.random.default_rng(110)
    system = draw_general(rng)
    rebuilt = gf.system_from_synthesis(gf.synthesis_matrix(system), system.k)
    assert rebuilt.signature == system.signature
    for mine, theirs in zip(rebuilt.blocks, system.blocks):
        assert np.max(np.abs(mine - theirs)) <= 1e-15


def test_blockwise_distance():
    rng = np.random.default_rng(111)
    system = draw_general(rng)
    assert gf.blockwise_distance(system, system) == 0.0
    shifted = gf.ReconstructionSystem(
        [np.asarray(b) + (0.5 if i == 0 else 0.0)
         for i, b in enumerate(system.blocks)])
    assert gf.blockwise_distance(system, shifted) > 0.1
    with pytest.raises(StructuralError):
        gf.blockwise_distance(system, random_system(system.d + 1, system.k, rng))


def test_random_projective_honors_requested_weights():
    weights = [0.7, 1.3, 2.0]
    system = random_projective(5, (2, 3, 1), seed=112, weights=weights)
    info = gf.classify(system)
    assert info.is_projective
    assert np.allclose(info.weights, weights, atol=1e-10)
