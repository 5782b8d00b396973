"""Losses, exact reverse-mode gradients, Adam, and the epoch loop.

Gradients run an adjoint pass through the complex layer chain: the forward
pass records each gate's input state, the loss seeds a conjugate cotangent
lambda = dL/d(psi*), and every gate pulls lambda back with its adjoint while
angle gradients accumulate as 2 Re <lambda| dU |pre>. Real and imaginary
parts are treated as independent reals, so the result is exact for the real
losses used here; finite differences and parameter shift exist in the test
suite as oracles only.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import ConfigurationError, DomainError
from .model import (
    Model,
    ParameterSet,
    Variant,
    Entangler,
    apply_entangler_batch,
    apply_gate_batch,
    feature_array,
    forward_batch,
    layer_angles,
    predict_batch,
    SCORE_FLOOR,
)
from .qstate import fidelity, rotation_matrices, rotation_matrix_derivatives

CROSS_ENTROPY_CLIP = 1e-12


class LossKind(str, Enum):
    FIDELITY = "fidelity"
    CROSS_ENTROPY = "cross_entropy"


def loss_kind_for(model: Model) -> LossKind:
    """Readout-implied loss: 1-qubit models train on fidelity, 2-qubit on CE."""
    return LossKind.FIDELITY if model.config.n_qubits == 1 else LossKind.CROSS_ENTROPY


def _check_labels(labels, n_classes: int, batch: int) -> np.ndarray:
    y = np.asarray(labels, dtype=np.int64)
    if y.shape != (batch,):
        raise DomainError(f"expected {batch} labels, got shape {y.shape}")
    if batch == 0:
        raise DomainError("batch must be nonempty")
    if y.min() < 0 or y.max() >= n_classes:
        raise DomainError(f"labels must lie in [0, {n_classes})")
    return y


def fidelity_loss(traces, labels, targets) -> float:
    """Summed infidelity of each trace's final state against its class target."""
    targets = tuple(targets)
    y = _check_labels(labels, len(targets), len(traces))
    total = 0.0
    for trace, label in zip(traces, y):
        total += 1.0 - fidelity(targets[label], trace.final_state)
    return float(total)


def cross_entropy_loss(score_rows, labels) -> float:
    """Mean negative log score of the true class, clipped for stability."""
    scores = np.asarray(score_rows, dtype=np.float64)
    if scores.ndim != 2:
        raise DomainError(f"expected a (batch, classes) score array, got shape {scores.shape}")
    y = _check_labels(labels, scores.shape[1], scores.shape[0])
    picked = scores[np.arange(scores.shape[0]), y]
    return float(np.mean(-np.log(picked + CROSS_ENTROPY_CLIP)))


def _loss_seed(model: Model, final: np.ndarray, y: np.ndarray) -> tuple[float, np.ndarray]:
    """Loss value and the conjugate cotangent dL/d(psi*) at the final states."""
    cfg = model.config
    B = final.shape[0]
    if cfg.n_qubits == 1:
        T = model.target_matrix()
        Ty = T[y]
        overlaps = np.sum(np.conj(Ty) * final, axis=1)
        fids = np.minimum(np.abs(overlaps) ** 2, 1.0)
        loss = float(np.sum(1.0 - fids))
        lam = -overlaps[:, None] * Ty
        return loss, lam

    probs = np.abs(final) ** 2
    C = cfg.n_classes
    rows = np.arange(B)
    dLdp = np.zeros_like(probs)
    if C == probs.shape[1]:
        sy = probs[rows, y]
        loss = float(np.mean(-np.log(sy + CROSS_ENTROPY_CLIP)))
        dLdp[rows, y] = -1.0 / (B * (sy + CROSS_ENTROPY_CLIP))
    else:
        sub = probs[:, :C]
        total = sub.sum(axis=1)
        degenerate = total <= SCORE_FLOOR
        safe_total = np.where(total == 0, 1.0, total)
        with np.errstate(invalid="ignore", divide="ignore"):
            s = np.where(degenerate[:, None], 1.0 / C, sub / safe_total[:, None])
        sy = s[rows, y]
        loss = float(np.mean(-np.log(sy + CROSS_ENTROPY_CLIP)))
        onehot = (np.arange(C)[None, :] == y[:, None]).astype(np.float64)
        coef = -1.0 / (B * (sy + CROSS_ENTROPY_CLIP))
        # d(s_y)/d(p_j) = (delta_jy - s_y) / S by the quotient rule
        with np.errstate(invalid="ignore", divide="ignore"):
            dsub = coef[:, None] * (onehot - sy[:, None]) / safe_total[:, None]
        dsub[degenerate] = 0.0
        dLdp[:, :C] = dsub
    lam = dLdp * final
    return loss, lam


def batch_loss(model: Model, params: ParameterSet, X, y) -> float:
    """Loss of a batch under the model's implied loss kind."""
    X = feature_array(X)
    labels = _check_labels(y, model.config.n_classes, X.shape[0])
    _, final = forward_batch(model, params, X)
    return _loss_seed(model, final, labels)[0]


def _conj_t(mats: np.ndarray) -> np.ndarray:
    return np.conj(np.swapaxes(mats, -1, -2))


def loss_and_gradients(model: Model, params: ParameterSet, X, y) -> tuple[float, np.ndarray]:
    """Batch loss and d(loss)/d(flat parameters) in one forward/adjoint sweep."""
    cfg = model.config
    n, N = cfg.n_qubits, cfg.n_layers
    X = feature_array(X)
    B = X.shape[0]
    labels = _check_labels(y, cfg.n_classes, B)

    psi = np.zeros((B, 2 ** n), dtype=np.complex128)
    psi[:, 0] = 1.0
    separate = cfg.variant is Variant.SEPARATE
    enc = rotation_matrices(X) if separate else None
    records = []
    for k in range(N):
        for q in range(n):
            if separate:
                psi = apply_gate_batch(psi, enc, q, n)
                mats, dmats = rotation_matrix_derivatives(params.angles[k, q])
                bmats = np.broadcast_to(mats, (B, 2, 2))
                records.append(("rot", k, q, bmats, dmats, psi))
                psi = apply_gate_batch(psi, bmats, q, n)
            else:
                eff = layer_angles(params, X, k, q)
                mats, dmats = rotation_matrix_derivatives(eff)
                records.append(("rot", k, q, mats, dmats, psi))
                psi = apply_gate_batch(psi, mats, q, n)
        if n == 2 and cfg.entangler is not Entangler.NONE and k < N - 1:
            records.append(("ent",))
            psi = apply_entangler_batch(psi, cfg.entangler)

    loss, lam = _loss_seed(model, psi, labels)

    if separate:
        g_angles = np.zeros_like(params.angles)
    else:
        g_weights = np.zeros_like(params.weights)
        g_biases = np.zeros_like(params.biases)

    for rec in reversed(records):
        if rec[0] == "ent":
            # CX and CZ are hermitian, so the adjoint is the gate itself
            lam = apply_entangler_batch(lam, cfg.entangler)
            continue
        _, k, q, mats, dmats, pre = rec
        for i in range(3):
            d = dmats[i]
            if d.ndim == 2:
                d = np.broadcast_to(d, (B, 2, 2))
            v = apply_gate_batch(pre, d, q, n)
            contrib = 2.0 * np.real(np.sum(np.conj(lam) * v, axis=1))
            if separate:
                g_angles[k, q, i] = contrib.sum()
            else:
                g_weights[k, q, i] = float(np.dot(contrib, X[:, i]))
                g_biases[k, q, i] = contrib.sum()
        lam = apply_gate_batch(lam, _conj_t(mats), q, n)
        if separate:
            # pull the cotangent back through the unparameterized encoding gate
            lam = apply_gate_batch(lam, _conj_t(enc), q, n)

    if separate:
        grads = g_angles.ravel()
    else:
        grads = np.concatenate([g_weights.ravel(), g_biases.ravel()])
    return loss, grads


def gradients(model: Model, params: ParameterSet, X, y, kind: LossKind | None = None) -> np.ndarray:
    """Exact gradient of the implied loss for every trainable parameter."""
    if kind is not None and LossKind(kind) is not loss_kind_for(model):
        raise ConfigurationError(
            f"loss kind {LossKind(kind).value} does not match a "
            f"{model.config.n_qubits}-qubit readout"
        )
    return loss_and_gradients(model, params, X, y)[1]


@dataclass(frozen=True)
class AdamHyper:
    lr: float = 0.05
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8


@dataclass(frozen=True)
class AdamState:
    """First/second moment accumulators plus the step counter."""

    m: np.ndarray
    v: np.ndarray
    t: int
    hyper: AdamHyper

    @classmethod
    def initial(cls, n_parameters: int, hyper: AdamHyper = AdamHyper()) -> "AdamState":
        return cls(
            m=np.zeros(n_parameters),
            v=np.zeros(n_parameters),
            t=0,
            hyper=hyper,
        )

    def with_hyper(self, hyper: AdamHyper) -> "AdamState":
        return AdamState(m=self.m, v=self.v, t=self.t, hyper=hyper)


def adam_step(state: AdamState, flat_params, grads) -> tuple[np.ndarray, AdamState]:
    """One bias-corrected Adam update; returns new params and state."""
    p = np.asarray(flat_params, dtype=np.float64)
    g = np.asarray(grads, dtype=np.float64)
    if p.shape != state.m.shape or g.shape != state.m.shape:
        raise DomainError(
            f"parameter/gradient shape {p.shape}/{g.shape} does not match "
            f"optimizer state {state.m.shape}"
        )
    h = state.hyper
    t = state.t + 1
    m = h.beta1 * state.m + (1.0 - h.beta1) * g
    v = h.beta2 * state.v + (1.0 - h.beta2) * g * g
    m_hat = m / (1.0 - h.beta1 ** t)
    v_hat = v / (1.0 - h.beta2 ** t)
    new_p = p - h.lr * m_hat / (np.sqrt(v_hat) + h.eps)
    return new_p, AdamState(m=m, v=v, t=t, hyper=h)


@dataclass(frozen=True)
class EpochMetrics:
    """Metrics computed with end-of-epoch parameters.

    train_loss is the per-sample mean; train_loss_sum keeps the raw summed
    fidelity objective comparable across batch sizes.
    """

    epoch: int
    train_loss: float
    train_loss_sum: float
    train_accuracy: float
    test_accuracy: float


def accuracy(model: Model, params: ParameterSet, X, y) -> float:
    X = feature_array(X)
    labels = _check_labels(y, model.config.n_classes, X.shape[0])
    predicted, _ = predict_batch(model, params, X)
    return float(np.mean(predicted == labels))


class TrainingState:
    """Mutable loop state: model, parameters, optimizer, data, counters.

    Epoch shuffles are seeded from (seed, epoch index) so a given epoch's
    batch order never depends on how the previous epochs were stepped.
    """

    def __init__(
        self,
        model: Model,
        params: ParameterSet,
        train_X,
        train_y,
        test_X,
        test_y,
        hyper: AdamHyper = AdamHyper(),
        batch_size: int = 16,
        seed: int = 0,
    ):
        if batch_size < 1:
            raise ConfigurationError("batch_size must be >= 1", fields=["batch_size"])
        if int(seed) < 0:
            raise ConfigurationError("seed must be >= 0", fields=["seed"])
        self.model = model
        self.params = params
        self.adam = AdamState.initial(params.n_parameters, hyper)
        self.train_X = feature_array(train_X)
        self.train_y = _check_labels(train_y, model.config.n_classes, self.train_X.shape[0])
        self.test_X = feature_array(test_X)
        self.test_y = _check_labels(test_y, model.config.n_classes, self.test_X.shape[0])
        self.batch_size = int(batch_size)
        self.seed = int(seed)
        self.epoch = 0
        self.step = 0
        self.last_batch_loss: float | None = None
        self._perm: np.ndarray | None = None
        self._cursor = 0

    @property
    def batches_per_epoch(self) -> int:
        return -(-len(self.train_y) // self.batch_size)

    def set_hyper(self, lr: float | None = None, batch_size: int | None = None):
        """Swap hyperparameters; takes effect from the next batch."""
        if lr is not None:
            if not np.isfinite(lr) or lr < 0:
                raise ConfigurationError("lr must be finite and >= 0", fields=["lr"])
            h = self.adam.hyper
            self.adam = self.adam.with_hyper(AdamHyper(float(lr), h.beta1, h.beta2, h.eps))
        if batch_size is not None:
            if int(batch_size) < 1:
                raise ConfigurationError("batch_size must be >= 1", fields=["batch_size"])
            self.batch_size = int(batch_size)

    def run_batch(self) -> tuple[float, bool]:
        """One optimizer step. Returns (per-sample batch loss, epoch finished)."""
        if self._perm is None:
            rng = np.random.default_rng([self.seed, self.epoch])
            self._perm = rng.permutation(len(self.train_y))
            self._cursor = 0
        idx = self._perm[self._cursor : self._cursor + self.batch_size]
        loss, grads = loss_and_gradients(
            self.model, self.params, self.train_X[idx], self.train_y[idx]
        )
        flat, self.adam = adam_step(self.adam, self.params.to_flat(), grads)
        self.params = self.params.from_flat(flat)
        self._cursor += len(idx)
        self.step += 1
        if loss_kind_for(self.model) is LossKind.FIDELITY:
            per_sample = loss / len(idx)
        else:
            per_sample = loss
        self.last_batch_loss = float(per_sample)
        finished = self._cursor >= len(self.train_y)
        if finished:
            self.epoch += 1
            self._perm = None
        return self.last_batch_loss, finished

    def metrics(self) -> EpochMetrics:
        """Whole-split metrics with the current parameters."""
        n_train = len(self.train_y)
        loss = batch_loss(self.model, self.params, self.train_X, self.train_y)
        if loss_kind_for(self.model) is LossKind.FIDELITY:
            loss_sum, loss_mean = loss, loss / n_train
        else:
            loss_sum, loss_mean = loss * n_train, loss
        return EpochMetrics(
            epoch=self.epoch,
            train_loss=float(loss_mean),
            train_loss_sum=float(loss_sum),
            train_accuracy=accuracy(self.model, self.params, self.train_X, self.train_y),
            test_accuracy=accuracy(self.model, self.params, self.test_X, self.test_y),
        )


def train_epoch(state: TrainingState) -> EpochMetrics:
    """Run mini-batches to the end of the current epoch and report metrics."""
    finished = False
    while not finished:
        _, finished = state.run_batch()
    return state.metrics()
