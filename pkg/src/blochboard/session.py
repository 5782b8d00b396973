"""Training sessions: config parsing, the trainer state machine, streaming.

TrainerCore is a synchronous state machine so tests can drive it
deterministically; Session wraps one core in a background thread and fans
frames out to subscribers; SessionManager owns the id space and reaps idle
sessions. Every command is total: commands received in a phase where they do
not apply acknowledge without changing anything, so no interleaving of
controls can wedge a session.
"""
from __future__ import annotations

import threading
import time
import uuid
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from .datasets import (
    DatasetKind,
    generate,
    grid_points,
    ground_truth_grid,
    resolve_classes,
    split,
)
from .errors import ConfigurationError, DomainError
from .geometry import (
    MAX_GRID_RESOLUTION,
    MIN_GRID_RESOLUTION,
    bloch_coordinates,
    cloud_indices,
    simplex_coordinates,
    state_cloud,
)
from .model import (
    Entangler,
    ModelConfig,
    Variant,
    build_model,
    forward_batch,
    predict_batch,
)
from .training import AdamHyper, TrainingState, loss_kind_for

DEFAULT_GRID_RESOLUTION = 40
MAX_SAMPLES = 5000
MAX_EPOCH_LIMIT = 10000
SESSION_TTL_SECONDS = 1800.0
COORD_DECIMALS = 5


class Command(str, Enum):
    START = "start"
    PAUSE = "pause"
    STEP_BATCH = "step_batch"
    STEP_EPOCH = "step_epoch"
    RESET = "reset"
    UPDATE_HYPER = "update_hyper"


class Phase(str, Enum):
    PAUSED = "paused"
    RUNNING = "running"
    FINISHED = "finished"


@dataclass(frozen=True)
class DatasetConfig:
    kind: DatasetKind = DatasetKind.CIRCLE
    n_samples: int = 200
    seed: int = 0
    noise: float = 0.0
    test_fraction: float = 0.25


@dataclass(frozen=True)
class OptimizerConfig:
    learning_rate: float = 0.05
    batch_size: int = 16
    max_epochs: int = 100


@dataclass(frozen=True)
class SessionConfig:
    n_qubits: int = 1
    n_layers: int = 4
    n_classes: int = 2
    variant: Variant = Variant.COMPACT
    entangler: Entangler = Entangler.CZ
    seed: int = 0
    grid_resolution: int = DEFAULT_GRID_RESOLUTION
    dataset: DatasetConfig = field(default_factory=DatasetConfig)
    optimizer: OptimizerConfig = field(default_factory=OptimizerConfig)

    def to_dict(self) -> dict:
        return {
            "n_qubits": self.n_qubits,
            "n_layers": self.n_layers,
            "n_classes": self.n_classes,
            "variant": self.variant.value,
            "entangler": effective_entangler(self.n_qubits, self.entangler).value,
            "seed": self.seed,
            "grid_resolution": self.grid_resolution,
            "dataset": {
                "kind": self.dataset.kind.value,
                "n_samples": self.dataset.n_samples,
                "seed": self.dataset.seed,
                "noise": self.dataset.noise,
                "test_fraction": self.dataset.test_fraction,
            },
            "optimizer": {
                "learning_rate": self.optimizer.learning_rate,
                "batch_size": self.optimizer.batch_size,
                "max_epochs": self.optimizer.max_epochs,
            },
        }


def effective_entangler(n_qubits: int, entangler: Entangler) -> Entangler:
    """Entangling gates only exist between qubits; single-qubit runs use none."""
    return Entangler.NONE if n_qubits == 1 else entangler


def _pick(payload: dict, key: str, kind, default, problems: list[str], prefix: str = ""):
    """Coerce payload[key] to `kind`, recording the dotted field on failure."""
    if key not in payload or payload[key] is None:
        return default
    value = payload[key]
    try:
        if kind is int:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError
            return int(value)
        if kind is float:
            if isinstance(value, bool):
                raise ValueError
            out = float(value)
            if not np.isfinite(out):
                raise ValueError
            return out
        return kind(value)
    except (TypeError, ValueError):
        problems.append(prefix + key)
        return default


def config_from_dict(payload) -> SessionConfig:
    """Parse and validate a raw JSON payload into a SessionConfig.

    All problems are collected before raising, so a client sees every bad
    field at once, named by dotted path.
    """
    if payload is None:
        payload = {}
    if not isinstance(payload, dict):
        raise ConfigurationError("config must be a JSON object", fields=["config"])
    problems: list[str] = []

    known = {
        "n_qubits", "n_layers", "n_classes", "variant", "entangler",
        "seed", "grid_resolution", "dataset", "optimizer",
    }
    problems.extend(sorted(k for k in payload if k not in known))

    n_qubits = _pick(payload, "n_qubits", int, 1, problems)
    n_layers = _pick(payload, "n_layers", int, 4, problems)
    n_classes = _pick(payload, "n_classes", int, 2, problems)
    variant = _pick(payload, "variant", Variant, Variant.COMPACT, problems)
    entangler = _pick(payload, "entangler", Entangler, Entangler.CZ, problems)
    seed = _pick(payload, "seed", int, 0, problems)
    grid_resolution = _pick(payload, "grid_resolution", int, DEFAULT_GRID_RESOLUTION, problems)

    raw_ds = payload.get("dataset") or {}
    if not isinstance(raw_ds, dict):
        problems.append("dataset")
        raw_ds = {}
    ds_known = {"kind", "n_samples", "seed", "noise", "test_fraction"}
    problems.extend(sorted("dataset." + k for k in raw_ds if k not in ds_known))
    dataset = DatasetConfig(
        kind=_pick(raw_ds, "kind", DatasetKind, DatasetKind.CIRCLE, problems, "dataset."),
        n_samples=_pick(raw_ds, "n_samples", int, 200, problems, "dataset."),
        seed=_pick(raw_ds, "seed", int, 0, problems, "dataset."),
        noise=_pick(raw_ds, "noise", float, 0.0, problems, "dataset."),
        test_fraction=_pick(raw_ds, "test_fraction", float, 0.25, problems, "dataset."),
    )

    raw_opt = payload.get("optimizer") or {}
    if not isinstance(raw_opt, dict):
        problems.append("optimizer")
        raw_opt = {}
    opt_known = {"learning_rate", "batch_size", "max_epochs"}
    problems.extend(sorted("optimizer." + k for k in raw_opt if k not in opt_known))
    optimizer = OptimizerConfig(
        learning_rate=_pick(raw_opt, "learning_rate", float, 0.05, problems, "optimizer."),
        batch_size=_pick(raw_opt, "batch_size", int, 16, problems, "optimizer."),
        max_epochs=_pick(raw_opt, "max_epochs", int, 100, problems, "optimizer."),
    )

    config = SessionConfig(
        n_qubits=n_qubits,
        n_layers=n_layers,
        n_classes=n_classes,
        variant=variant,
        entangler=entangler,
        seed=seed,
        grid_resolution=grid_resolution,
        dataset=dataset,
        optimizer=optimizer,
    )
    problems.extend(validate_config(config))
    if problems:
        # deduplicate while keeping first-seen order
        seen = list(dict.fromkeys(problems))
        raise ConfigurationError(
            "invalid session config: " + ", ".join(seen), fields=seen
        )
    return config


def validate_config(config: SessionConfig) -> list[str]:
    """Dotted names of invalid fields; empty when the config is usable."""
    problems: list[str] = []
    try:
        ModelConfig(
            n_qubits=config.n_qubits,
            n_layers=config.n_layers,
            n_classes=config.n_classes,
            variant=config.variant,
            entangler=effective_entangler(config.n_qubits, config.entangler),
        )
    except ConfigurationError as exc:
        problems.extend(exc.fields)
    if config.seed < 0:
        problems.append("seed")
    if not MIN_GRID_RESOLUTION <= config.grid_resolution <= MAX_GRID_RESOLUTION:
        problems.append("grid_resolution")

    ds = config.dataset
    try:
        resolve_classes(ds.kind, config.n_classes)
    except ConfigurationError:
        problems.append("dataset.kind")
    if not 8 <= ds.n_samples <= MAX_SAMPLES:
        problems.append("dataset.n_samples")
    if ds.seed < 0:
        problems.append("dataset.seed")
    if not 0.0 <= ds.noise <= 1.0:
        problems.append("dataset.noise")
    if not 0.0 < ds.test_fraction < 1.0:
        problems.append("dataset.test_fraction")

    opt = config.optimizer
    if not np.isfinite(opt.learning_rate) or opt.learning_rate < 0:
        problems.append("optimizer.learning_rate")
    if opt.batch_size < 1:
        problems.append("optimizer.batch_size")
    if not 1 <= opt.max_epochs <= MAX_EPOCH_LIMIT:
        problems.append("optimizer.max_epochs")
    return problems


def _rounded(arr, decimals: int = COORD_DECIMALS) -> list:
    return np.round(np.asarray(arr, dtype=np.float64), decimals).tolist()


class TrainerCore:
    """Synchronous trainer state machine producing render frames.

    Commands and ticks both return the frame they produced (ticks return
    None when there is nothing to advance). The `run` counter increments on
    every reset so frame ordering stays well defined across restarts, and
    `seq` increments on every frame ever built by this core.
    """

    def __init__(self, config: SessionConfig, session_id: str = "local"):
        self.config = config
        self.session_id = session_id
        self.dataset = generate(
            config.dataset.kind,
            n=config.dataset.n_samples,
            seed=config.dataset.seed,
            n_classes=config.n_classes,
            noise=config.dataset.noise,
        )
        self.train, self.test = split(
            self.dataset, config.dataset.test_fraction, seed=config.dataset.seed
        )
        self.seed = config.seed
        self.phase = Phase.PAUSED
        self.run = 0
        self.seq = 0
        self._truth = ground_truth_grid(
            config.dataset.kind, config.grid_resolution, config.n_classes
        )
        self._fresh_training(config.seed)
        self._static = self._build_static()

    def _fresh_training(self, seed: int):
        model_config = ModelConfig(
            n_qubits=self.config.n_qubits,
            n_layers=self.config.n_layers,
            n_classes=self.config.n_classes,
            variant=self.config.variant,
            entangler=effective_entangler(self.config.n_qubits, self.config.entangler),
        )
        keep = getattr(self, "training", None)
        model, params = build_model(model_config, seed=seed)
        hyper = AdamHyper(lr=self.config.optimizer.learning_rate)
        batch_size = self.config.optimizer.batch_size
        if keep is not None:
            # resets preserve live hyperparameter edits
            hyper = keep.adam.hyper
            batch_size = keep.batch_size
        self.model = model
        self.seed = int(seed)
        self.training = TrainingState(
            model,
            params,
            self.train.points,
            self.train.labels,
            self.test.points,
            self.test.labels,
            hyper=hyper,
            batch_size=batch_size,
            seed=seed,
        )
        self._cloud_idx = cloud_indices(len(self.train.labels), seed=seed)

    # -- command handling ---------------------------------------------------

    def apply(
        self,
        command: Command | str,
        seed: int | None = None,
        lr: float | None = None,
        batch_size: int | None = None,
    ) -> dict:
        """Execute one command; always returns the resulting frame."""
        command = Command(command)
        applied = True
        if command is Command.START:
            if self.phase is Phase.PAUSED:
                self.phase = Phase.RUNNING
            else:
                applied = False
        elif command is Command.PAUSE:
            if self.phase is Phase.RUNNING:
                self.phase = Phase.PAUSED
            else:
                applied = False
        elif command is Command.STEP_BATCH:
            applied = self._step(batches=1)
        elif command is Command.STEP_EPOCH:
            applied = self._step(to_epoch_end=True)
        elif command is Command.RESET:
            if seed is not None and int(seed) < 0:
                raise ConfigurationError("seed must be >= 0", fields=["seed"])
            self._fresh_training(self.seed if seed is None else int(seed))
            self.run += 1
            self.phase = Phase.PAUSED
        elif command is Command.UPDATE_HYPER:
            if lr is None and batch_size is None:
                applied = False
            else:
                self.training.set_hyper(lr=lr, batch_size=batch_size)
        frame = self.build_frame()
        frame["applied"] = applied
        frame["command"] = command.value
        return frame

    def _step(self, batches: int = 0, to_epoch_end: bool = False) -> bool:
        if self.phase is Phase.FINISHED:
            return False
        # stepping implies leaving free-running mode
        self.phase = Phase.PAUSED
        if to_epoch_end:
            finished = False
            while not finished and self.phase is not Phase.FINISHED:
                finished = self._advance_one_batch()
        else:
            for _ in range(batches):
                if self.phase is Phase.FINISHED:
                    break
                self._advance_one_batch()
        return True

    def _advance_one_batch(self) -> bool:
        """Run one optimizer step and flip to FINISHED at the epoch cap."""
        _, epoch_done = self.training.run_batch()
        if epoch_done and self.training.epoch >= self.config.optimizer.max_epochs:
            self.phase = Phase.FINISHED
        return epoch_done

    def tick(self) -> dict | None:
        """Advance one batch while free-running; None in any other phase."""
        if self.phase is not Phase.RUNNING:
            return None
        self._advance_one_batch()
        return self.build_frame()

    # -- frame assembly -----------------------------------------------------

    def _build_static(self) -> dict:
        """Per-session constants repeated into every frame."""
        targets = [
            [[float(a.real), float(a.imag)] for a in t.amplitudes]
            for t in self.model.targets
        ]
        project = bloch_coordinates if self.config.n_qubits == 1 else simplex_coordinates
        class_summary = [
            {
                "label": k,
                "target_xyz": _rounded(project(t.amplitudes)),
                "train_count": int(np.sum(self.train.labels == k)),
                "test_count": int(np.sum(self.test.labels == k)),
            }
            for k, t in enumerate(self.model.targets)
        ]
        echo = self.config.to_dict()
        echo["targets"] = targets
        echo["loss"] = loss_kind_for(self.model).value
        echo["n_parameters"] = self.training.params.n_parameters
        return {
            "config_echo": echo,
            "class_summary": class_summary,
            "dataset": {
                "train": {
                    "points": _rounded(self.train.points),
                    "labels": self.train.labels.tolist(),
                },
                "test": {
                    "points": _rounded(self.test.points),
                    "labels": self.test.labels.tolist(),
                },
            },
        }

    def build_frame(self) -> dict:
        self.seq += 1
        m = self.training.metrics()
        idx = self._cloud_idx
        X = self.training.train_X[idx]
        y = self.training.train_y[idx]
        per_layer, _ = forward_batch(self.model, self.training.params, X)
        predicted, scores = predict_batch(self.model, self.training.params, X)
        correct = (predicted == y).tolist()
        labels = y.tolist()
        # score of the predicted class, i.e. the model's confidence per sample
        confidence = np.round(scores[np.arange(len(predicted)), predicted], COORD_DECIMALS)

        def points_of(states: np.ndarray) -> list[dict]:
            cloud = state_cloud(states, self.config.n_qubits)
            coords = np.round(cloud.coords, COORD_DECIMALS)
            sizes = np.round(cloud.sizes, 4)
            hues = np.round(cloud.hues, 4)
            return [
                {
                    "xyz": coords[i].tolist(),
                    "label": labels[i],
                    "correct": correct[i],
                    "score": float(confidence[i]),
                    "size": float(sizes[i]),
                    "hue": float(hues[i]),
                }
                for i in range(len(states))
            ]

        layers = [{"points": points_of(states)} for states in per_layer]
        grid_labels, grid_scores = predict_batch(
            self.model,
            self.training.params,
            _grid_cache(self.config.grid_resolution),
        )
        frame = {
            "session_id": self.session_id,
            "seq": self.seq,
            "run": self.run,
            "epoch": self.training.epoch,
            "step": self.training.step,
            "state": self.phase.value,
            "metrics": {
                "train_loss": m.train_loss,
                "train_loss_sum": m.train_loss_sum,
                "train_accuracy": m.train_accuracy,
                "test_accuracy": m.test_accuracy,
                "batch_loss": self.training.last_batch_loss,
            },
            "hyper": {
                "learning_rate": self.training.adam.hyper.lr,
                "batch_size": self.training.batch_size,
                "max_epochs": self.config.optimizer.max_epochs,
            },
            "model_seed": self.seed,
            "sample_indices": idx.tolist(),
            "layers": layers,
            "final": {"points": layers[-1]["points"] if layers else []},
            "grid": {
                "resolution": self.config.grid_resolution,
                "labels": grid_labels.tolist(),
                "scores": np.round(grid_scores, COORD_DECIMALS).tolist(),
                "truth": self._truth.tolist(),
            },
        }
        frame.update(self._static)
        return frame


_GRID_POINTS: dict[int, np.ndarray] = {}


def _grid_cache(resolution: int) -> np.ndarray:
    if resolution not in _GRID_POINTS:
        _GRID_POINTS[resolution] = grid_points(resolution)
    return _GRID_POINTS[resolution]


class FrameBuffer:
    """Single-slot handoff: a slow reader sees the latest frame, never a backlog."""

    def __init__(self):
        self._cond = threading.Condition()
        self._frame: dict | None = None
        self._closed = False

    def publish(self, frame: dict):
        with self._cond:
            if self._closed:
                return
            self._frame = frame
            self._cond.notify_all()

    def take(self, timeout: float | None = None) -> dict | None:
        """Newest unseen frame, blocking up to `timeout`; None on timeout/close."""
        with self._cond:
            if self._frame is None and not self._closed:
                self._cond.wait(timeout)
            frame, self._frame = self._frame, None
            return frame

    def close(self):
        with self._cond:
            self._closed = True
            self._cond.notify_all()

    @property
    def closed(self) -> bool:
        return self._closed


class Session:
    """One trainer core plus the thread that advances it while running."""

    def __init__(self, config: SessionConfig, session_id: str, tick_interval: float = 0.02):
        self.core = TrainerCore(config, session_id=session_id)
        self.session_id = session_id
        self.tick_interval = tick_interval
        self.last_used = time.monotonic()
        self._lock = threading.RLock()
        self._wake = threading.Event()
        self._closed = False
        self._subscribers: list[FrameBuffer] = []
        self._thread = threading.Thread(
            target=self._loop, name=f"trainer-{session_id}", daemon=True
        )
        self._thread.start()

    def touch(self):
        self.last_used = time.monotonic()

    def control(self, command, seed=None, lr=None, batch_size=None) -> dict:
        """Apply a command; step commands return after the work completes."""
        self.touch()
        # publish happens inside the lock so subscribers never observe
        # frames from interleaved controls out of order
        with self._lock:
            frame = self.core.apply(command, seed=seed, lr=lr, batch_size=batch_size)
            self._publish(frame)
        if self.core.phase is Phase.RUNNING:
            self._wake.set()
        return frame

    def snapshot(self) -> dict:
        self.touch()
        with self._lock:
            return self.core.build_frame()

    def subscribe(self) -> FrameBuffer:
        """New buffer, primed with a snapshot so clients render immediately."""
        self.touch()
        buf = FrameBuffer()
        with self._lock:
            self._subscribers.append(buf)
            buf.publish(self.core.build_frame())
        return buf

    def unsubscribe(self, buf: FrameBuffer):
        with self._lock:
            if buf in self._subscribers:
                self._subscribers.remove(buf)
        buf.close()

    def _publish(self, frame: dict):
        with self._lock:
            listeners = list(self._subscribers)
        for buf in listeners:
            buf.publish(frame)

    def _loop(self):
        while not self._closed:
            if self.core.phase is not Phase.RUNNING:
                self._wake.wait(timeout=0.25)
                self._wake.clear()
                continue
            with self._lock:
                frame = self.core.tick()
                if frame is not None:
                    self._publish(frame)
            if self.tick_interval > 0:
                time.sleep(self.tick_interval)

    def close(self):
        self._closed = True
        self._wake.set()
        self._thread.join(timeout=5.0)
        with self._lock:
            listeners = list(self._subscribers)
            self._subscribers.clear()
        for buf in listeners:
            buf.close()

    @property
    def closed(self) -> bool:
        return self._closed


class SessionManager:
    """Registry of live sessions with idle-based reaping."""

    def __init__(
        self,
        ttl_seconds: float = SESSION_TTL_SECONDS,
        max_sessions: int = 32,
        tick_interval: float = 0.02,
        clock: Callable[[], float] = time.monotonic,
    ):
        self.ttl_seconds = ttl_seconds
        self.max_sessions = max_sessions
        self.tick_interval = tick_interval
        self._clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, Session] = {}

    def create(self, config: SessionConfig) -> Session:
        self.reap()
        with self._lock:
            if len(self._sessions) >= self.max_sessions:
                raise DomainError(
                    f"session limit reached ({self.max_sessions}); retire one first"
                )
            session_id = uuid.uuid4().hex[:12]
            session = Session(config, session_id, tick_interval=self.tick_interval)
            session.last_used = self._clock()
            self._sessions[session_id] = session
            return session

    def get(self, session_id: str) -> Session:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None or session.closed:
            raise KeyError(session_id)
        session.last_used = self._clock()
        return session

    def ids(self) -> list[str]:
        with self._lock:
            return sorted(self._sessions)

    def remove(self, session_id: str):
        with self._lock:
            session = self._sessions.pop(session_id, None)
        if session is None:
            raise KeyError(session_id)
        session.close()

    def reap(self):
        """Close sessions idle longer than the TTL."""
        now = self._clock()
        with self._lock:
            stale = [
                sid
                for sid, s in self._sessions.items()
                if now - s.last_used > self.ttl_seconds
            ]
            victims = [self._sessions.pop(sid) for sid in stale]
        for session in victims:
            session.close()

    def close_all(self):
        with self._lock:
            victims = list(self._sessions.values())
            self._sessions.clear()
        for session in victims:
            session.close()
