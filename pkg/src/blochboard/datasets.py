"""Seeded synthetic 2-D datasets with closed-form label rules.

Every kind owns a deterministic rule mapping (x, y) to a class, defined on
the whole render window. Samplers draw candidates from the kind's shape
distribution, label them with the rule, and fill per-class quotas, so class
balance and rule idempotence hold by construction. Coordinates live in
[-1, 1]^2; grids extend to [-1.2, 1.2]^2 so decision boundaries stay visible
past the data.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from enum import Enum
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError, DomainError

GRID_BOUND = 1.2
MIN_SAMPLES = 8

_CIRCLE_R2 = 0.5
_ANNULUS_RING = (0.45, 0.85)
_ANNULUS_BANDS = (0.4, 0.75)
_MOON_RADIUS = 0.65
_MOON_CENTERS = ((-0.22, -0.18), (0.22, 0.18))
_MOON_NOISE = 0.08
_SPIRAL_TURNS = 1.75
_SPIRAL_NOISE = 0.04
_BLOB_SIGMA = 0.16
_BLOBS_3 = np.array([[0.0, 0.62], [-0.54, -0.31], [0.54, -0.31]])
_BLOBS_4 = np.array([[0.55, 0.55], [-0.55, 0.55], [-0.55, -0.55], [0.55, -0.55]])


class DatasetKind(str, Enum):
    CIRCLE = "circle"
    ANNULUS = "annulus"
    XOR = "xor"
    MOONS = "moons"
    SPIRAL = "spiral"
    THREE_BLOBS = "three_blobs"
    FOUR_BLOBS = "four_blobs"


# class counts each kind supports; the first entry is the default
KIND_CLASSES = {
    DatasetKind.CIRCLE: (2,),
    DatasetKind.ANNULUS: (2, 3),
    DatasetKind.XOR: (2,),
    DatasetKind.MOONS: (2,),
    DatasetKind.SPIRAL: (2,),
    DatasetKind.THREE_BLOBS: (3,),
    DatasetKind.FOUR_BLOBS: (4,),
}


class Sample(NamedTuple):
    x: float
    y: float
    label: int


class DataSplit(NamedTuple):
    points: np.ndarray
    labels: np.ndarray


@dataclass(frozen=True)
class Dataset:
    """Labeled 2-D point set; points is (n, 2) float64, labels is (n,) int64."""

    kind: DatasetKind | None
    n_classes: int
    points: np.ndarray
    labels: np.ndarray
    seed: int = 0
    noise: float = 0.0

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def samples(self) -> list[Sample]:
        return [
            Sample(float(px), float(py), int(l))
            for (px, py), l in zip(self.points, self.labels)
        ]


def resolve_classes(kind: DatasetKind, n_classes: int | None) -> int:
    allowed = KIND_CLASSES[kind]
    if n_classes is None:
        return allowed[0]
    if n_classes not in allowed:
        raise ConfigurationError(
            f"{kind.value} supports n_classes in {allowed}, got {n_classes}",
            fields=["n_classes"],
        )
    return int(n_classes)


def _nearest_center(points: np.ndarray, centers: np.ndarray) -> np.ndarray:
    d = np.linalg.norm(points[:, None, :] - centers[None, :, :], axis=2)
    return np.argmin(d, axis=1)


def _arc_distance(points: np.ndarray, center, radius: float, t0: float, t1: float) -> np.ndarray:
    """Distance from each point to a circular arc spanning angles [t0, t1]."""
    d = points - np.asarray(center)
    r = np.linalg.norm(d, axis=1)
    ang = np.mod(np.arctan2(d[:, 1], d[:, 0]), 2 * np.pi)
    lo, hi = np.mod(t0, 2 * np.pi), np.mod(t1, 2 * np.pi)
    if lo <= hi:
        inside = (ang >= lo) & (ang <= hi)
    else:
        inside = (ang >= lo) | (ang <= hi)
    on_arc = np.abs(r - radius)
    ends = np.stack(
        [
            np.asarray(center) + radius * np.array([np.cos(t), np.sin(t)])
            for t in (t0, t1)
        ]
    )
    to_ends = np.min(
        np.linalg.norm(points[:, None, :] - ends[None, :, :], axis=2), axis=1
    )
    return np.where(inside, on_arc, to_ends)


def label_rule(kind: DatasetKind, points, n_classes: int | None = None) -> np.ndarray:
    """Closed-form class labels for arbitrary points, vectorized."""
    kind = DatasetKind(kind)
    C = resolve_classes(kind, n_classes)
    P = np.asarray(points, dtype=np.float64)
    if P.ndim == 1:
        P = P[None, :]
    if P.ndim != 2 or P.shape[1] != 2:
        raise DomainError(f"expected (n, 2) points, got shape {P.shape}")
    x, yy = P[:, 0], P[:, 1]
    r = np.hypot(x, yy)
    if kind is DatasetKind.CIRCLE:
        return (x * x + yy * yy < _CIRCLE_R2).astype(np.int64)
    if kind is DatasetKind.ANNULUS:
        if C == 2:
            lo, hi = _ANNULUS_RING
            return ((r >= lo) & (r < hi)).astype(np.int64)
        lo, hi = _ANNULUS_BANDS
        return np.select([r < lo, r < hi], [0, 1], default=2).astype(np.int64)
    if kind is DatasetKind.XOR:
        return (x * yy > 0).astype(np.int64)
    if kind is DatasetKind.MOONS:
        d0 = _arc_distance(P, _MOON_CENTERS[0], _MOON_RADIUS, 0.0, np.pi)
        d1 = _arc_distance(P, _MOON_CENTERS[1], _MOON_RADIUS, np.pi, 2 * np.pi)
        return (d1 < d0).astype(np.int64)
    if kind is DatasetKind.SPIRAL:
        phase = np.arctan2(yy, x) - 2 * np.pi * _SPIRAL_TURNS * r
        return (np.cos(phase) < 0).astype(np.int64)
    centers = _BLOBS_3 if kind is DatasetKind.THREE_BLOBS else _BLOBS_4
    return _nearest_center(P, centers).astype(np.int64)


def _candidates(kind: DatasetKind, rng: np.random.Generator, m: int) -> np.ndarray:
    """Candidate points from the kind's generative shape, clipped to the window."""
    if kind in (DatasetKind.CIRCLE, DatasetKind.ANNULUS, DatasetKind.XOR):
        return rng.uniform(-1.0, 1.0, size=(m, 2))
    if kind is DatasetKind.MOONS:
        arm = rng.integers(0, 2, size=m)
        t = rng.uniform(0.0, np.pi, size=m) + arm * np.pi
        centers = np.asarray(_MOON_CENTERS)[arm]
        pts = centers + _MOON_RADIUS * np.stack([np.cos(t), np.sin(t)], axis=1)
        pts += rng.normal(scale=_MOON_NOISE, size=(m, 2))
        return np.clip(pts, -1.0, 1.0)
    if kind is DatasetKind.SPIRAL:
        arm = rng.integers(0, 2, size=m)
        rr = rng.uniform(0.12, 0.95, size=m)
        ang = 2 * np.pi * _SPIRAL_TURNS * rr + arm * np.pi
        pts = rr[:, None] * np.stack([np.cos(ang), np.sin(ang)], axis=1)
        pts += rng.normal(scale=_SPIRAL_NOISE, size=(m, 2))
        return np.clip(pts, -1.0, 1.0)
    centers = _BLOBS_3 if kind is DatasetKind.THREE_BLOBS else _BLOBS_4
    which = rng.integers(0, len(centers), size=m)
    pts = centers[which] + rng.normal(scale=_BLOB_SIGMA, size=(m, 2))
    return np.clip(pts, -1.0, 1.0)


def generate(
    kind,
    n: int = 200,
    seed: int = 0,
    n_classes: int | None = None,
    noise: float = 0.0,
) -> Dataset:
    """Balanced labeled dataset; identical arguments give identical samples.

    `noise` flips each label to a uniformly random other class with that
    probability, after the rule assigns clean labels.
    """
    kind = DatasetKind(kind)
    C = resolve_classes(kind, n_classes)
    if not isinstance(n, (int, np.integer)) or n < MIN_SAMPLES:
        raise ConfigurationError(f"n must be an int >= {MIN_SAMPLES}", fields=["n"])
    if int(seed) < 0:
        raise ConfigurationError("seed must be >= 0", fields=["seed"])
    if not 0.0 <= float(noise) <= 1.0:
        raise ConfigurationError("noise must be in [0, 1]", fields=["noise"])

    rng = np.random.default_rng(int(seed))
    quota = [n // C + (1 if i < n % C else 0) for i in range(C)]
    buckets: list[list[np.ndarray]] = [[] for _ in range(C)]
    filled = [0] * C
    for _ in range(400):
        if all(f >= q for f, q in zip(filled, quota)):
            break
        cand = _candidates(kind, rng, max(256, n))
        labs = label_rule(kind, cand, C)
        for pt, lab in zip(cand, labs):
            lab = int(lab)
            if filled[lab] < quota[lab]:
                buckets[lab].append(pt)
                filled[lab] += 1
    else:
        raise RuntimeError(f"sampler for {kind.value} failed to fill class quotas")

    points = np.concatenate([np.stack(b) for b in buckets if b])
    labels = np.concatenate(
        [np.full(len(b), c, dtype=np.int64) for c, b in enumerate(buckets) if b]
    )
    order = rng.permutation(n)
    points, labels = points[order], labels[order]
    if noise > 0:
        flip = rng.random(n) < noise
        bump = rng.integers(1, C, size=n)
        labels = np.where(flip, (labels + bump) % C, labels)
    return Dataset(kind=kind, n_classes=C, points=points, labels=labels, seed=int(seed), noise=float(noise))


def grid_centers(resolution: int, bound: float = GRID_BOUND) -> np.ndarray:
    """Cell-center coordinates of a resolution^2 lattice over [-bound, bound]^2."""
    if not isinstance(resolution, (int, np.integer)) or resolution < 1:
        raise ConfigurationError("resolution must be a positive int", fields=["resolution"])
    width = 2.0 * bound / resolution
    return -bound + width * (np.arange(resolution) + 0.5)


def grid_points(resolution: int, bound: float = GRID_BOUND) -> np.ndarray:
    """All lattice cell centers as (resolution^2, 2) rows, row-major in y then x."""
    centers = grid_centers(resolution, bound)
    xs, ys = np.meshgrid(centers, centers)
    return np.stack([xs.ravel(), ys.ravel()], axis=1)


def ground_truth_grid(kind, resolution: int, n_classes: int | None = None) -> np.ndarray:
    """Rule labels on the render lattice, flattened row-major (y rows, x fastest)."""
    return label_rule(kind, grid_points(resolution), n_classes)


def split(dataset: Dataset, test_fraction: float = 0.25, seed: int = 0) -> tuple[DataSplit, DataSplit]:
    """Stratified train/test split; per-class test share within one sample."""
    if not 0.0 < test_fraction < 1.0:
        raise ConfigurationError("test_fraction must be in (0, 1)", fields=["test_fraction"])
    rng = np.random.default_rng(int(seed))
    test_mask = np.zeros(len(dataset), dtype=bool)
    for c in range(dataset.n_classes):
        idx = np.flatnonzero(dataset.labels == c)
        if idx.size == 0:
            continue
        k = int(round(test_fraction * idx.size))
        picked = rng.permutation(idx)[:k]
        test_mask[picked] = True
    # both sides stay usable even at extreme fractions
    if not test_mask.any():
        test_mask[rng.integers(0, len(dataset))] = True
    if test_mask.all():
        test_mask[rng.integers(0, len(dataset))] = False
    train_idx = np.flatnonzero(~test_mask)
    test_idx = np.flatnonzero(test_mask)
    return (
        DataSplit(dataset.points[train_idx], dataset.labels[train_idx]),
        DataSplit(dataset.points[test_idx], dataset.labels[test_idx]),
    )


def to_csv(dataset: Dataset, path) -> None:
    """Write `x,y,label` rows with full round-trip float precision."""
    with open(Path(path), "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["x", "y", "label"])
        for (px, py), lab in zip(dataset.points, dataset.labels):
            writer.writerow([format(px, ".17g"), format(py, ".17g"), int(lab)])


def from_csv(path, kind: DatasetKind | None = None, n_classes: int | None = None) -> Dataset:
    """Read a `x,y,label` table back into a Dataset."""
    rows = []
    with open(Path(path), newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["x", "y", "label"]:
            raise DomainError(f"expected header x,y,label in {path}")
        for row in reader:
            if not row:
                continue
            if len(row) != 3:
                raise DomainError(f"malformed row {row!r} in {path}")
            rows.append((float(row[0]), float(row[1]), int(row[2])))
    if not rows:
        raise DomainError(f"no samples in {path}")
    points = np.array([[r[0], r[1]] for r in rows])
    labels = np.array([r[2] for r in rows], dtype=np.int64)
    if labels.min() < 0:
        raise DomainError("labels must be nonnegative")
    classes = int(n_classes) if n_classes is not None else int(labels.max()) + 1
    return Dataset(kind=kind, n_classes=classes, points=points, labels=labels)
