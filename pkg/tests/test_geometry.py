"""State projections: Bloch vectors, tetrahedron embedding, hue, grids."""
import numpy as np
import pytest

from blochboard.errors import ConfigurationError, DomainError
from blochboard.geometry import (
    SIMPLEX_VERTICES,
    bloch_coordinates,
    cloud_indices,
    concurrence_batch,
    decision_grid,
    fix_global_phase,
    phase_hue,
    simplex_coordinates,
    state_cloud,
)
from blochboard.model import ModelConfig, Variant, build_model
from blochboard.qstate import rotation_gate

INV_SQRT2 = 1.0 / np.sqrt(2.0)
INV_SQRT3 = 1.0 / np.sqrt(3.0)


def random_states(rng, n, dim):
    raw = rng.normal(size=(n, dim)) + 1j * rng.normal(size=(n, dim))
    return raw / np.linalg.norm(raw, axis=1, keepdims=True)


# cardinal states land on the six Bloch axes
def test_bloch_cardinal_states():
    assert np.allclose(bloch_coordinates([1, 0]), [0, 0, 1])
    assert np.allclose(bloch_coordinates([0, 1]), [0, 0, -1])
    assert np.allclose(bloch_coordinates([INV_SQRT2, INV_SQRT2]), [1, 0, 0])
    assert np.allclose(bloch_coordinates([INV_SQRT2, -INV_SQRT2]), [-1, 0, 0])
    assert np.allclose(bloch_coordinates([INV_SQRT2, 1j * INV_SQRT2]), [0, 1, 0])
    assert np.allclose(bloch_coordinates([INV_SQRT2, -1j * INV_SQRT2]), [0, -1, 0])


# R_y(theta)|0> has amplitudes (cos t/2, sin t/2) -> (sin t, 0, cos t)
def test_bloch_tracks_y_rotation():
    for theta in np.linspace(-np.pi, np.pi, 17):
        amps = rotation_gate(0.0, theta, 0.0) @ np.array([1.0, 0.0])
        assert np.allclose(bloch_coordinates(amps), [np.sin(theta), 0.0, np.cos(theta)], atol=1e-12)


def test_bloch_pure_states_on_unit_sphere():
    rng = np.random.default_rng(31)
    coords = bloch_coordinates(random_states(rng, 300, 2))
    assert np.allclose(np.linalg.norm(coords, axis=1), 1.0, atol=1e-12)


def test_bloch_global_phase_invariance():
    rng = np.random.default_rng(5)
    amps = random_states(rng, 50, 2)
    rotated = amps * np.exp(1j * rng.uniform(0, 2 * np.pi, size=(50, 1)))
    assert np.allclose(bloch_coordinates(amps), bloch_coordinates(rotated), atol=1e-12)


# basis states land exactly on their tetrahedron vertices
def test_simplex_vertices_are_basis_states():
    for k in range(4):
        amps = np.zeros(4, dtype=complex)
        amps[k] = 1.0
        assert np.allclose(simplex_coordinates(amps), SIMPLEX_VERTICES[k], atol=1e-15)


# maximally entangled pairs sit at midpoints of opposite edges:
# (|00>+|11>)/sqrt2 -> (v0+v3)/2 = (0,0,1/sqrt3); (|01>+|10>)/sqrt2 -> (0,0,-1/sqrt3)
def test_simplex_bell_midpoints():
    phi = np.array([INV_SQRT2, 0, 0, INV_SQRT2])
    psi = np.array([0, INV_SQRT2, INV_SQRT2, 0])
    assert np.allclose(simplex_coordinates(phi), [0, 0, INV_SQRT3], atol=1e-12)
    assert np.allclose(simplex_coordinates(psi), [0, 0, -INV_SQRT3], atol=1e-12)
    phi_m = np.array([INV_SQRT2, 0, 0, -INV_SQRT2])
    assert np.allclose(simplex_coordinates(phi_m), [0, 0, INV_SQRT3], atol=1e-12)


# barycentric weights are the basis probabilities and sum to one
def test_simplex_barycentric_sums():
    rng = np.random.default_rng(77)
    amps = random_states(rng, 1000, 4)
    probs = np.abs(amps) ** 2
    assert np.allclose(probs.sum(axis=1), 1.0, atol=1e-9)
    assert np.allclose(simplex_coordinates(amps), probs @ SIMPLEX_VERTICES, atol=1e-12)


def test_simplex_centroid_for_uniform_superposition():
    amps = np.full(4, 0.5)
    assert np.allclose(simplex_coordinates(amps), [0, 0, 0], atol=1e-15)


def test_fix_global_phase_anchors_first_amplitude():
    rng = np.random.default_rng(13)
    amps = random_states(rng, 40, 4)
    fixed = fix_global_phase(amps)
    # first non-negligible amplitude becomes real positive
    for row in fixed:
        k = np.argmax(np.abs(row) > 1e-9)
        assert row[k].imag == pytest.approx(0.0, abs=1e-12)
        assert row[k].real > 0
    # physically identical inputs collapse to the same representative
    rotated = amps * np.exp(1j * rng.uniform(0, 2 * np.pi, size=(40, 1)))
    assert np.allclose(fix_global_phase(rotated), fixed, atol=1e-12)


def test_phase_hue_range_and_examples():
    assert phase_hue([1, 0]) == pytest.approx(0.0)
    assert phase_hue([INV_SQRT2, INV_SQRT2]) == pytest.approx(0.0)
    # dominant amplitude is -1/sqrt2 relative to anchor: angle pi -> hue 1/2
    assert phase_hue([0.6, -0.8]) == pytest.approx(0.5)
    assert phase_hue([0.6, 0.8j]) == pytest.approx(0.25)
    rng = np.random.default_rng(3)
    hues = phase_hue(random_states(rng, 200, 2))
    assert np.all((hues >= 0.0) & (hues < 1.0))


def test_concurrence_batch_matches_known_states():
    bell = np.array([INV_SQRT2, 0, 0, INV_SQRT2])
    product = np.kron([INV_SQRT2, INV_SQRT2], [1.0, 0.0])
    vals = concurrence_batch(np.stack([bell, product]))
    assert vals[0] == pytest.approx(1.0, abs=1e-12)
    assert vals[1] == pytest.approx(0.0, abs=1e-12)


def test_state_cloud_shapes_and_sizes():
    rng = np.random.default_rng(8)
    one = state_cloud(random_states(rng, 20, 2), 1)
    assert one.coords.shape == (20, 3)
    assert np.all(one.sizes == 1.0)
    assert one.hues.shape == (20,)
    two = state_cloud(random_states(rng, 20, 4), 2)
    assert two.coords.shape == (20, 3)
    assert np.all((two.sizes >= 0) & (two.sizes <= 1))
    with pytest.raises(DomainError):
        state_cloud(random_states(rng, 5, 8), 3)


def test_cloud_indices_cap_and_determinism():
    assert np.array_equal(cloud_indices(50, cap=200, seed=1), np.arange(50))
    a = cloud_indices(1000, cap=200, seed=4)
    b = cloud_indices(1000, cap=200, seed=4)
    assert np.array_equal(a, b)
    assert len(a) == 200
    assert len(np.unique(a)) == 200
    assert np.all(np.diff(a) > 0)
    c = cloud_indices(1000, cap=200, seed=5)
    assert not np.array_equal(a, c)


def test_decision_grid_shapes_and_consistency():
    config = ModelConfig(n_qubits=1, n_layers=2, n_classes=2, variant=Variant.COMPACT)
    model, params = build_model(config, seed=9)
    grid = decision_grid(model, params, 12)
    assert grid.resolution == 12
    assert grid.labels.shape == (144,)
    assert grid.scores.shape == (144, 2)
    assert np.array_equal(grid.labels, np.argmax(grid.scores, axis=1))


def test_decision_grid_resolution_bounds():
    config = ModelConfig(n_qubits=1, n_layers=1, n_classes=2, variant=Variant.COMPACT)
    model, params = build_model(config, seed=0)
    for bad in (7, 201, 0, -3, 2.5):
        with pytest.raises(ConfigurationError) as exc:
            decision_grid(model, params, bad)
        assert "grid_resolution" in exc.value.fields
    assert decision_grid(model, params, 8).labels.shape == (64,)
