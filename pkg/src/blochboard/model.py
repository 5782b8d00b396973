"""Data re-uploading classifier circuits.

A model uploads a 3-component feature vector into every layer of a 1- or
2-qubit circuit. Each layer applies one Z-Y-Z rotation per qubit; in the
"separate" variant an unparameterized encoding rotation of the raw features
precedes a trainable rotation, in the "compact" variant a single rotation of
elementwise weights * features + biases does both jobs. Two-qubit circuits
interleave an entangling gate between consecutive layers.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, DomainError
from .qstate import StateVector, rotation_matrices

SUPPORTED_QUBITS = (1, 2)
MAX_CLASSES = 4
MAX_LAYERS = 64

# Class scores below this total are treated as degenerate and replaced by a
# uniform distribution when renormalizing marginal probabilities.
SCORE_FLOOR = 1e-12

# Regular tetrahedron on the Bloch sphere, also the render frame for the
# two-qubit probability simplex (rows map to |00>, |01>, |10>, |11>).
TETRAHEDRON = np.array(
    [
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ]
) / np.sqrt(3.0)


class Variant(str, Enum):
    SEPARATE = "separate"
    COMPACT = "compact"


class Entangler(str, Enum):
    NONE = "none"
    CZ = "cz"
    CNOT = "cnot"


@dataclass(frozen=True)
class ModelConfig:
    """Static circuit shape. Validated on construction."""

    n_qubits: int
    n_layers: int
    variant: Variant = Variant.COMPACT
    entangler: Entangler = Entangler.NONE
    n_classes: int = 2

    def __post_init__(self):
        object.__setattr__(self, "variant", Variant(self.variant))
        object.__setattr__(self, "entangler", Entangler(self.entangler))
        problems = []
        if self.n_qubits not in SUPPORTED_QUBITS:
            problems.append(("n_qubits", f"must be one of {SUPPORTED_QUBITS}"))
        if not isinstance(self.n_layers, (int, np.integer)) or not 1 <= self.n_layers <= MAX_LAYERS:
            problems.append(("n_layers", f"must be an int in [1, {MAX_LAYERS}]"))
        if not 2 <= self.n_classes <= MAX_CLASSES:
            problems.append(("n_classes", f"must be in [2, {MAX_CLASSES}]"))
        if self.n_qubits == 1 and self.entangler is not Entangler.NONE:
            problems.append(("entangler", "single-qubit circuits cannot entangle"))
        if problems:
            msg = "; ".join(f"{name}: {why}" for name, why in problems)
            raise ConfigurationError(msg, fields=[name for name, _ in problems])


@dataclass
class ParameterSet:
    """Trainable parameters, shaped (n_layers, n_qubits, 3) per array.

    The separate variant trains rotation angles; the compact variant trains
    elementwise feature weights plus biases. `to_flat`/`from_flat` give the
    optimizer a stable 1-D view (angles, or weights then biases, C order).
    """

    variant: Variant
    angles: np.ndarray | None = None
    weights: np.ndarray | None = None
    biases: np.ndarray | None = None

    @property
    def n_parameters(self) -> int:
        if self.variant is Variant.SEPARATE:
            return self.angles.size
        return self.weights.size + self.biases.size

    def to_flat(self) -> np.ndarray:
        if self.variant is Variant.SEPARATE:
            return self.angles.ravel().copy()
        return np.concatenate([self.weights.ravel(), self.biases.ravel()])

    def from_flat(self, flat: np.ndarray) -> "ParameterSet":
        flat = np.asarray(flat, dtype=np.float64)
        if flat.shape != (self.n_parameters,):
            raise DomainError(
                f"expected {self.n_parameters} parameters, got shape {flat.shape}"
            )
        if self.variant is Variant.SEPARATE:
            return ParameterSet(self.variant, angles=flat.reshape(self.angles.shape).copy())
        half = self.weights.size
        return ParameterSet(
            self.variant,
            weights=flat[:half].reshape(self.weights.shape).copy(),
            biases=flat[half:].reshape(self.biases.shape).copy(),
        )

    def copy(self) -> "ParameterSet":
        return self.from_flat(self.to_flat())


def init_parameters(config: ModelConfig, seed: int) -> ParameterSet:
    """Uniform(-pi, pi) parameters; deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    shape = (config.n_layers, config.n_qubits, 3)
    if config.variant is Variant.SEPARATE:
        return ParameterSet(config.variant, angles=rng.uniform(-np.pi, np.pi, size=shape))
    return ParameterSet(
        config.variant,
        weights=rng.uniform(-np.pi, np.pi, size=shape),
        biases=rng.uniform(-np.pi, np.pi, size=shape),
    )


def _bloch_state(x: float, y: float, z: float) -> StateVector:
    theta = np.arccos(np.clip(z, -1.0, 1.0))
    phi = np.arctan2(y, x)
    amps = np.array([np.cos(theta / 2), np.exp(1j * phi) * np.sin(theta / 2)])
    return StateVector(1, amps)


def target_states(n_classes: int, n_qubits: int) -> tuple[StateVector, ...]:
    """Per-class target states.

    One qubit: 2 classes use the poles, 3 classes an equiangular fan in the
    x-z plane, 4 classes a regular tetrahedron. Two qubits: class c maps to
    the basis state |c>.
    """
    if n_qubits not in SUPPORTED_QUBITS:
        raise ConfigurationError(f"n_qubits must be one of {SUPPORTED_QUBITS}")
    if not 2 <= n_classes <= MAX_CLASSES:
        raise ConfigurationError(f"n_classes must be in [2, {MAX_CLASSES}]")
    if n_qubits == 2:
        states = []
        for c in range(n_classes):
            amps = np.zeros(4, dtype=np.complex128)
            amps[c] = 1.0
            states.append(StateVector(2, amps))
        return tuple(states)
    if n_classes == 2:
        return (_bloch_state(0, 0, 1.0), _bloch_state(0, 0, -1.0))
    if n_classes == 3:
        gammas = (0.0, 2 * np.pi / 3, 4 * np.pi / 3)
        return tuple(_bloch_state(np.sin(g), 0.0, np.cos(g)) for g in gammas)
    return tuple(_bloch_state(*v) for v in TETRAHEDRON)


@dataclass(frozen=True)
class Model:
    """Circuit shape plus frozen per-class target states."""

    config: ModelConfig
    targets: tuple[StateVector, ...]

    @property
    def dim(self) -> int:
        return 2 ** self.config.n_qubits

    def target_matrix(self) -> np.ndarray:
        return np.stack([t.amplitudes for t in self.targets])


def build_model(config: ModelConfig, seed: int = 0) -> tuple[Model, ParameterSet]:
    """A model plus freshly initialized parameters."""
    model = Model(config=config, targets=target_states(config.n_classes, config.n_qubits))
    return model, init_parameters(config, seed)


def feature_array(points) -> np.ndarray:
    """Rows of 2 or 3 features as a (batch, 3) array; 2-feature rows get a 0 pad."""
    arr = np.asarray(points, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] not in (2, 3):
        raise DomainError(f"expected rows of 2 or 3 features, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise DomainError("features must be finite")
    if arr.shape[1] == 2:
        arr = np.concatenate([arr, np.zeros((arr.shape[0], 1))], axis=1)
    return arr


def layer_angles(params: ParameterSet, X: np.ndarray, k: int, q: int) -> np.ndarray:
    """Effective rotation angles of layer k, qubit q, for feature rows X.

    Compact: weights * x + biases, per sample. Separate: the trainable angles
    broadcast across the batch (the encoding rotation is handled separately).
    """
    if params.variant is Variant.COMPACT:
        return params.weights[k, q] * X + params.biases[k, q]
    return np.broadcast_to(params.angles[k, q], (X.shape[0], 3))


def layer_unitary(layer_params: np.ndarray, x, variant: Variant) -> np.ndarray:
    """Single-qubit unitary of one layer for one sample.

    `layer_params` is (3,) angles for the separate variant or (2, 3) stacked
    (weights, biases) for the compact variant. The separate variant composes
    trainable-after-encoding: U(theta) @ U(x).
    """
    x3 = feature_array(x)[0]
    lp = np.asarray(layer_params, dtype=np.float64)
    variant = Variant(variant)
    if variant is Variant.SEPARATE:
        if lp.shape != (3,):
            raise DomainError(f"separate layers take 3 angles, got shape {lp.shape}")
        return rotation_matrices(lp) @ rotation_matrices(x3)
    if lp.shape != (2, 3):
        raise DomainError(f"compact layers take stacked (weights, biases), got shape {lp.shape}")
    return rotation_matrices(lp[0] * x3 + lp[1])


def apply_gate_batch(states: np.ndarray, mats: np.ndarray, qubit: int, n_qubits: int) -> np.ndarray:
    """Apply per-sample 2x2 matrices to one qubit of batched states (B, 2**n)."""
    if n_qubits == 1:
        return np.einsum("bij,bj->bi", mats, states)
    r = states.reshape(-1, 2, 2)
    if qubit == 0:
        out = np.einsum("bij,bjk->bik", mats, r)
    else:
        out = np.einsum("bij,bkj->bki", mats, r)
    return out.reshape(-1, 4)


def apply_entangler_batch(states: np.ndarray, entangler: Entangler) -> np.ndarray:
    """Entangling gate on batched 2-qubit states; control is qubit 0."""
    out = states.copy()
    if entangler is Entangler.CZ:
        out[:, 3] = -out[:, 3]
    elif entangler is Entangler.CNOT:
        out[:, [2, 3]] = out[:, [3, 2]]
    return out


def forward_batch(model: Model, params: ParameterSet, X) -> tuple[list[np.ndarray], np.ndarray]:
    """Batched forward pass.

    Returns (per_layer, final): per_layer[k] is the (B, dim) state after layer
    k including any entangler that follows it; final is per_layer[-1].
    """
    cfg = model.config
    X = feature_array(X)
    B = X.shape[0]
    psi = np.zeros((B, model.dim), dtype=np.complex128)
    psi[:, 0] = 1.0
    enc = rotation_matrices(X) if cfg.variant is Variant.SEPARATE else None
    per_layer = []
    for k in range(cfg.n_layers):
        for q in range(cfg.n_qubits):
            if enc is not None:
                psi = apply_gate_batch(psi, enc, q, cfg.n_qubits)
                mats = np.broadcast_to(rotation_matrices(params.angles[k, q]), (B, 2, 2))
            else:
                mats = rotation_matrices(layer_angles(params, X, k, q))
            psi = apply_gate_batch(psi, mats, q, cfg.n_qubits)
        if cfg.n_qubits == 2 and cfg.entangler is not Entangler.NONE and k < cfg.n_layers - 1:
            psi = apply_entangler_batch(psi, cfg.entangler)
        per_layer.append(psi)
    return per_layer, per_layer[-1]


def scores_batch(model: Model, final_states: np.ndarray) -> np.ndarray:
    """Per-class scores for batched final states (B, dim).

    One qubit: fidelity against each target. Two qubits: basis probabilities,
    keeping the first n_classes and renormalizing when fewer than 4 classes.
    """
    cfg = model.config
    if cfg.n_qubits == 1:
        T = model.target_matrix()
        overlaps = final_states @ T.conj().T
        return np.clip(np.abs(overlaps) ** 2, 0.0, 1.0)
    probs = np.abs(final_states) ** 2
    if cfg.n_classes == 4:
        return probs
    sub = probs[:, : cfg.n_classes]
    total = sub.sum(axis=1, keepdims=True)
    uniform = np.full_like(sub, 1.0 / cfg.n_classes)
    with np.errstate(invalid="ignore", divide="ignore"):
        normed = np.where(total > SCORE_FLOOR, sub / np.where(total == 0, 1.0, total), uniform)
    return normed


def predict_batch(model: Model, params: ParameterSet, X) -> tuple[np.ndarray, np.ndarray]:
    """(labels, scores) for feature rows X; ties break to the lowest class."""
    _, final = forward_batch(model, params, X)
    scores = scores_batch(model, final)
    return np.argmax(scores, axis=1), scores


@dataclass(frozen=True)
class ForwardTrace:
    """Forward pass of one sample with per-layer snapshots."""

    per_layer_states: tuple[StateVector, ...]
    final_state: StateVector
    class_scores: np.ndarray


def forward(model: Model, params: ParameterSet, x) -> ForwardTrace:
    """Run one sample through the circuit, recording the state after each layer."""
    per_layer, final = forward_batch(model, params, feature_array(x))
    n = model.config.n_qubits
    states = tuple(StateVector(n, layer[0]) for layer in per_layer)
    scores = scores_batch(model, final)[0]
    return ForwardTrace(per_layer_states=states, final_state=states[-1], class_scores=scores)


def predict(model: Model, params: ParameterSet, x) -> tuple[int, np.ndarray]:
    labels, scores = predict_batch(model, params, x)
    return int(labels[0]), scores[0]
