"""Projections from quantum states to renderable 3-D coordinates.

Single-qubit states map to the Bloch sphere. Two-qubit states map into a
regular tetrahedron by placing each basis probability at its vertex, so a
basis state sits exactly on its vertex and uniform superpositions sit at the
centroid. Phase and entanglement survive the projection as point hue and
point size.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, DomainError
from .model import TETRAHEDRON, Model, ParameterSet, predict_batch
from .datasets import grid_points

MIN_GRID_RESOLUTION = 8
MAX_GRID_RESOLUTION = 200
CLOUD_CAP = 200

# vertex k of the probability simplex, reused as the two-qubit render frame
SIMPLEX_VERTICES = TETRAHEDRON

_PHASE_TOL = 1e-9


def _as_batch(amps, dim: int) -> tuple[np.ndarray, bool]:
    arr = np.asarray(amps, dtype=np.complex128)
    single = arr.ndim == 1
    if single:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != dim:
        raise DomainError(f"expected amplitudes with last dimension {dim}, got shape {np.shape(amps)}")
    return arr, single


def bloch_coordinates(amps) -> np.ndarray:
    """Bloch vector(s) for single-qubit amplitudes; (2,) -> (3,) or (B, 2) -> (B, 3)."""
    arr, single = _as_batch(amps, 2)
    cross = np.conj(arr[:, 0]) * arr[:, 1]
    out = np.stack(
        [
            2.0 * cross.real,
            2.0 * cross.imag,
            np.abs(arr[:, 0]) ** 2 - np.abs(arr[:, 1]) ** 2,
        ],
        axis=1,
    )
    return out[0] if single else out


def simplex_coordinates(amps) -> np.ndarray:
    """Probability-weighted tetrahedron point(s); (4,) -> (3,) or (B, 4) -> (B, 3)."""
    arr, single = _as_batch(amps, 4)
    probs = np.abs(arr) ** 2
    out = probs @ SIMPLEX_VERTICES
    return out[0] if single else out


def fix_global_phase(amps) -> np.ndarray:
    """Rotate amplitudes so the first non-negligible one is real and positive."""
    arr, single = _as_batch(amps, np.asarray(amps).shape[-1])
    mags = np.abs(arr)
    # per row: phase of the first amplitude above tolerance
    first = np.argmax(mags > _PHASE_TOL, axis=1)
    anchor = arr[np.arange(len(arr)), first]
    mag = np.abs(anchor)
    unit = np.where(mag > 0, anchor / np.where(mag > 0, mag, 1.0), 1.0)
    out = arr * np.conj(unit)[:, None]
    return out[0] if single else out


def phase_hue(amps) -> np.ndarray:
    """Hue in [0, 1): argument of the dominant amplitude after phase fixing."""
    arr, single = _as_batch(amps, np.asarray(amps).shape[-1])
    fixed = fix_global_phase(arr)
    dom = np.argmax(np.abs(fixed), axis=1)
    ang = np.angle(fixed[np.arange(len(fixed)), dom])
    hue = np.mod(ang, 2.0 * np.pi) / (2.0 * np.pi)
    # exact wraparound collapses to zero
    hue = np.where(hue >= 1.0, 0.0, hue)
    return float(hue[0]) if single else hue


def concurrence_batch(amps) -> np.ndarray:
    """Entanglement measure 2|ad - bc| for rows of two-qubit amplitudes."""
    arr, single = _as_batch(amps, 4)
    c = 2.0 * np.abs(arr[:, 0] * arr[:, 3] - arr[:, 1] * arr[:, 2])
    vals = np.minimum(c, 1.0)
    return float(vals[0]) if single else vals


class StateCloud(NamedTuple):
    """Render-ready projection of a batch of states."""

    coords: np.ndarray
    sizes: np.ndarray
    hues: np.ndarray


def state_cloud(states: np.ndarray, n_qubits: int) -> StateCloud:
    """Project (B, 2^n) amplitudes to coordinates plus per-point size and hue.

    Single-qubit points all share unit size; two-qubit point size encodes
    concurrence so entangled states stand out at the center of the frame.
    """
    arr = np.asarray(states, dtype=np.complex128)
    if arr.ndim != 2:
        raise DomainError(f"expected a (batch, dim) state array, got shape {arr.shape}")
    if n_qubits == 1:
        coords = bloch_coordinates(arr)
        sizes = np.ones(len(arr))
    elif n_qubits == 2:
        coords = simplex_coordinates(arr)
        sizes = concurrence_batch(arr)
    else:
        raise DomainError(f"state_cloud supports 1 or 2 qubits, got {n_qubits}")
    return StateCloud(coords=coords, sizes=sizes, hues=np.atleast_1d(phase_hue(arr)))


def cloud_indices(n: int, cap: int = CLOUD_CAP, seed: int = 0) -> np.ndarray:
    """Stable seeded subset of range(n) holding at most `cap` indices, sorted."""
    if n < 0:
        raise DomainError("n must be >= 0")
    if n <= cap:
        return np.arange(n)
    rng = np.random.default_rng([int(seed), n])
    return np.sort(rng.choice(n, size=cap, replace=False))


class DecisionGrid(NamedTuple):
    resolution: int
    labels: np.ndarray
    scores: np.ndarray


def decision_grid(model: Model, params: ParameterSet, resolution: int) -> DecisionGrid:
    """Classify every cell center of the render lattice.

    Cells flatten row-major with x fastest, so cell (ix, iy) lands at index
    iy * resolution + ix.
    """
    if (
        not isinstance(resolution, (int, np.integer))
        or not MIN_GRID_RESOLUTION <= resolution <= MAX_GRID_RESOLUTION
    ):
        raise ConfigurationError(
            f"resolution must be an int in [{MIN_GRID_RESOLUTION}, {MAX_GRID_RESOLUTION}]",
            fields=["grid_resolution"],
        )
    pts = grid_points(int(resolution))
    labels, scores = predict_batch(model, params, pts)
    return DecisionGrid(resolution=int(resolution), labels=labels, scores=scores)
