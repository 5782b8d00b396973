"""Session layer: config parsing, trainer state machine, threading, manager."""
import time

import numpy as np
import pytest

from blochboard.datasets import DatasetKind, ground_truth_grid
from blochboard.errors import ConfigurationError, DomainError
from blochboard.model import Variant
from blochboard.session import (
    Command,
    DatasetConfig,
    FrameBuffer,
    OptimizerConfig,
    Phase,
    Session,
    SessionConfig,
    SessionManager,
    TrainerCore,
    config_from_dict,
    validate_config,
)


def small_config(**overrides) -> SessionConfig:
    base = dict(
        n_qubits=1,
        n_layers=2,
        n_classes=2,
        variant=Variant.COMPACT,
        seed=3,
        grid_resolution=8,
        dataset=DatasetConfig(kind=DatasetKind.CIRCLE, n_samples=24, seed=1),
        optimizer=OptimizerConfig(learning_rate=0.05, batch_size=16, max_epochs=3),
    )
    base.update(overrides)
    return SessionConfig(**base)


# -- config parsing ----------------------------------------------------------


def test_config_defaults_from_empty_payload():
    config = config_from_dict({})
    assert config.n_qubits == 1
    assert config.dataset.kind is DatasetKind.CIRCLE
    assert config.optimizer.batch_size == 16
    assert validate_config(config) == []


def test_config_round_trip_through_dict():
    config = config_from_dict(
        {
            "n_qubits": 2,
            "n_layers": 3,
            "n_classes": 4,
            "variant": "separate",
            "entangler": "cnot",
            "seed": 9,
            "grid_resolution": 16,
            "dataset": {"kind": "four_blobs", "n_samples": 120, "seed": 4, "noise": 0.1},
            "optimizer": {"learning_rate": 0.01, "batch_size": 8, "max_epochs": 20},
        }
    )
    again = config_from_dict(config.to_dict())
    assert again == config


def test_config_collects_all_bad_fields_with_dotted_names():
    with pytest.raises(ConfigurationError) as exc:
        config_from_dict(
            {
                "n_qubits": 7,
                "bogus": 1,
                "dataset": {"kind": "nope", "noise": 3.0},
                "optimizer": {"learning_rate": "fast"},
            }
        )
    fields = exc.value.fields
    for expected in ("n_qubits", "bogus", "dataset.kind", "dataset.noise", "optimizer.learning_rate"):
        assert expected in fields


def test_config_rejects_incompatible_dataset_and_classes():
    with pytest.raises(ConfigurationError) as exc:
        config_from_dict({"n_classes": 3, "dataset": {"kind": "circle"}})
    assert "dataset.kind" in exc.value.fields


def test_config_rejects_non_object_payload():
    with pytest.raises(ConfigurationError):
        config_from_dict([1, 2])


def test_config_rejects_bool_and_fractional_ints():
    with pytest.raises(ConfigurationError) as exc:
        config_from_dict({"n_layers": 2.5, "seed": True})
    assert "n_layers" in exc.value.fields
    assert "seed" in exc.value.fields


# -- trainer core ------------------------------------------------------------


def test_initial_frame_shape():
    core = TrainerCore(small_config(), session_id="abc")
    frame = core.build_frame()
    assert frame["session_id"] == "abc"
    assert frame["state"] == "paused"
    assert frame["run"] == 0 and frame["epoch"] == 0 and frame["step"] == 0
    assert frame["seq"] >= 1
    assert len(frame["layers"]) == 2
    n_cloud = len(frame["layers"][0]["points"])
    assert n_cloud == len(core.train.labels)
    point = frame["layers"][0]["points"][0]
    assert set(point) == {"xyz", "label", "correct", "score", "size", "hue"}
    assert len(point["xyz"]) == 3
    assert 0.0 <= point["score"] <= 1.0
    assert frame["sample_indices"] == list(range(n_cloud))
    assert frame["final"]["points"] == frame["layers"][-1]["points"]
    grid = frame["grid"]
    assert grid["resolution"] == 8
    assert len(grid["labels"]) == 64
    assert len(grid["scores"]) == 64 and len(grid["scores"][0]) == 2
    assert grid["truth"] == ground_truth_grid(DatasetKind.CIRCLE, 8).tolist()
    assert frame["metrics"]["batch_loss"] is None
    echo = frame["config_echo"]
    assert echo["n_parameters"] == 2 * 1 * 6
    assert len(echo["targets"]) == 2
    assert echo["targets"][0][0] == [1.0, 0.0]
    assert echo["loss"] == "fidelity"
    assert len(frame["class_summary"]) == 2
    assert frame["class_summary"][0]["target_xyz"] == [0.0, 0.0, 1.0]
    assert frame["dataset"]["train"]["labels"] == core.train.labels.tolist()


def test_two_qubit_frame_uses_probability_scores():
    config = small_config(
        n_qubits=2,
        n_classes=4,
        dataset=DatasetConfig(kind=DatasetKind.FOUR_BLOBS, n_samples=32, seed=2),
    )
    core = TrainerCore(config, session_id="q2")
    frame = core.build_frame()
    assert frame["config_echo"]["loss"] == "cross_entropy"
    sums = np.array(frame["grid"]["scores"]).sum(axis=1)
    assert np.allclose(sums, 1.0, atol=1e-4)
    sizes = [p["size"] for p in frame["final"]["points"]]
    assert all(0.0 <= s <= 1.0 for s in sizes)


def test_start_tick_pause_cycle():
    core = TrainerCore(small_config(), session_id="s")
    assert core.tick() is None
    frame = core.apply(Command.START)
    assert frame["state"] == "running" and frame["applied"]
    t1 = core.tick()
    assert t1["step"] == 1
    t2 = core.tick()
    assert t2["step"] == 2 and t2["epoch"] == 1
    frame = core.apply(Command.PAUSE)
    assert frame["state"] == "paused"
    assert core.tick() is None
    # pausing when already paused acknowledges without applying
    assert core.apply(Command.PAUSE)["applied"] is False


def test_step_batch_and_step_epoch():
    core = TrainerCore(small_config(), session_id="s")
    per_epoch = core.training.batches_per_epoch
    frame = core.apply(Command.STEP_BATCH)
    assert frame["step"] == 1 and frame["epoch"] == 0 and frame["state"] == "paused"
    frame = core.apply(Command.STEP_EPOCH)
    assert frame["epoch"] == 1 and frame["step"] == per_epoch
    # stepping an epoch from mid-epoch completes just that epoch
    core.apply(Command.STEP_BATCH)
    frame = core.apply(Command.STEP_EPOCH)
    assert frame["epoch"] == 2 and frame["step"] == 2 * per_epoch


def test_step_while_running_pauses_first():
    core = TrainerCore(small_config(), session_id="s")
    core.apply(Command.START)
    frame = core.apply(Command.STEP_BATCH)
    assert frame["state"] == "paused" and frame["step"] == 1


def test_finish_at_epoch_cap():
    core = TrainerCore(small_config(), session_id="s")
    for _ in range(3):
        frame = core.apply(Command.STEP_EPOCH)
    assert frame["state"] == "finished" and frame["epoch"] == 3
    assert core.apply(Command.STEP_BATCH)["applied"] is False
    assert core.apply(Command.START)["applied"] is False
    assert core.tick() is None
    # reset unlocks a fresh run
    frame = core.apply(Command.RESET)
    assert frame["state"] == "paused" and frame["run"] == 1
    assert frame["epoch"] == 0 and frame["step"] == 0


def test_running_ticks_finish_cleanly():
    core = TrainerCore(small_config(), session_id="s")
    core.apply(Command.START)
    frames = []
    while (frame := core.tick()) is not None:
        frames.append(frame)
    assert frames[-1]["state"] == "finished"
    assert frames[-1]["epoch"] == 3
    steps = [f["step"] for f in frames]
    assert steps == sorted(steps) and len(set(steps)) == len(steps)


def test_reset_reproduces_initial_parameters():
    core = TrainerCore(small_config(), session_id="s")
    first = core.training.params.to_flat().copy()
    core.apply(Command.STEP_EPOCH)
    assert not np.allclose(core.training.params.to_flat(), first)
    core.apply(Command.RESET)
    assert np.array_equal(core.training.params.to_flat(), first)
    # a new seed gives different parameters and survives later resets
    core.apply(Command.RESET, seed=99)
    reseeded = core.training.params.to_flat().copy()
    assert not np.array_equal(reseeded, first)
    core.apply(Command.RESET)
    assert np.array_equal(core.training.params.to_flat(), reseeded)
    with pytest.raises(ConfigurationError):
        core.apply(Command.RESET, seed=-4)


def test_update_hyper_changes_training_and_echo():
    core = TrainerCore(small_config(), session_id="s")
    frame = core.apply(Command.UPDATE_HYPER, lr=0.005, batch_size=4)
    assert frame["applied"]
    assert frame["hyper"]["learning_rate"] == 0.005
    assert frame["hyper"]["batch_size"] == 4
    assert core.training.batches_per_epoch == -(-18 // 4)
    assert core.apply(Command.UPDATE_HYPER)["applied"] is False
    with pytest.raises(ConfigurationError):
        core.apply(Command.UPDATE_HYPER, lr=-1.0)
    # hyper edits survive a reset
    core.apply(Command.RESET)
    assert core.training.adam.hyper.lr == 0.005


def test_core_is_deterministic_across_instances():
    a = TrainerCore(small_config(), session_id="a")
    b = TrainerCore(small_config(), session_id="b")
    for core in (a, b):
        core.apply(Command.STEP_EPOCH)
        core.apply(Command.STEP_BATCH)
    assert np.array_equal(a.training.params.to_flat(), b.training.params.to_flat())
    fa, fb = a.build_frame(), b.build_frame()
    assert fa["metrics"] == fb["metrics"]
    assert fa["grid"] == fb["grid"]


# no command interleaving reaches an undefined state, and emitted
# frames order strictly by seq with run/epoch/step consistent per run
def test_random_command_sequences_preserve_invariants():
    rng = np.random.default_rng(2024)
    config = small_config(
        dataset=DatasetConfig(kind=DatasetKind.CIRCLE, n_samples=16, seed=1),
        optimizer=OptimizerConfig(learning_rate=0.05, batch_size=8, max_epochs=2),
    )
    commands = list(Command)
    for trial in range(60):
        core = TrainerCore(config, session_id=f"t{trial}")
        frames = [core.build_frame()]
        for _ in range(25):
            if rng.random() < 0.4:
                frame = core.tick()
                if frame is not None:
                    frames.append(frame)
                continue
            cmd = commands[rng.integers(len(commands))]
            kwargs = {}
            if cmd is Command.RESET and rng.random() < 0.5:
                kwargs["seed"] = int(rng.integers(100))
            if cmd is Command.UPDATE_HYPER:
                kwargs["lr"] = float(rng.uniform(0.001, 0.2))
                if rng.random() < 0.5:
                    kwargs["batch_size"] = int(rng.integers(1, 12))
            frames.append(core.apply(cmd, **kwargs))
            assert core.phase in (Phase.PAUSED, Phase.RUNNING, Phase.FINISHED)
            assert core.training.epoch <= config.optimizer.max_epochs
            if core.phase is Phase.FINISHED:
                assert core.training.epoch == config.optimizer.max_epochs
        seqs = [f["seq"] for f in frames]
        assert seqs == sorted(seqs) and len(set(seqs)) == len(seqs)
        runs = [f["run"] for f in frames]
        assert runs == sorted(runs)
        for prev, cur in zip(frames, frames[1:]):
            if prev["run"] == cur["run"]:
                assert (cur["epoch"], cur["step"]) >= (prev["epoch"], prev["step"])


# -- frame buffer ------------------------------------------------------------


def test_frame_buffer_latest_wins():
    buf = FrameBuffer()
    buf.publish({"seq": 1})
    buf.publish({"seq": 2})
    assert buf.take(timeout=0.1) == {"seq": 2}
    assert buf.take(timeout=0.05) is None


def test_frame_buffer_close_unblocks():
    buf = FrameBuffer()
    buf.close()
    assert buf.take(timeout=5.0) is None
    buf.publish({"seq": 1})
    assert buf.take(timeout=0.05) is None


# -- threaded session --------------------------------------------------------


def test_session_thread_streams_and_blocks_on_steps():
    session = Session(small_config(), session_id="live", tick_interval=0.0)
    try:
        buf = session.subscribe()
        primed = buf.take(timeout=2.0)
        assert primed is not None and primed["state"] == "paused"
        # blocking step: the ack already reflects the completed work
        ack = session.control(Command.STEP_EPOCH)
        assert ack["epoch"] == 1
        session.control(Command.START)
        deadline = time.monotonic() + 10.0
        last = None
        while time.monotonic() < deadline:
            frame = buf.take(timeout=0.5)
            if frame is not None and frame["state"] == "finished":
                last = frame
                break
        assert last is not None, "free run never finished"
        snap = session.snapshot()
        assert snap["state"] == "finished"
        session.unsubscribe(buf)
        assert buf.closed
    finally:
        session.close()


def test_session_subscribers_see_strictly_increasing_seqs():
    session = Session(small_config(), session_id="seqs", tick_interval=0.0)
    try:
        buf = session.subscribe()
        session.control(Command.START)
        seqs = []
        deadline = time.monotonic() + 10.0
        while time.monotonic() < deadline:
            frame = buf.take(timeout=0.5)
            if frame is None:
                continue
            seqs.append(frame["seq"])
            if frame["state"] == "finished":
                break
        assert len(seqs) >= 2
        assert all(a < b for a, b in zip(seqs, seqs[1:]))
    finally:
        session.close()


# -- manager -----------------------------------------------------------------


def test_manager_lifecycle_and_reaping():
    now = [0.0]
    manager = SessionManager(ttl_seconds=100.0, max_sessions=2, tick_interval=0.0, clock=lambda: now[0])
    try:
        a = manager.create(small_config())
        assert manager.get(a.session_id) is a
        assert manager.ids() == [a.session_id]
        with pytest.raises(KeyError):
            manager.get("missing")
        b = manager.create(small_config())
        with pytest.raises(DomainError):
            manager.create(small_config())
        # idle sessions are reaped once past the ttl, active ones kept
        now[0] = 150.0
        b.last_used = 149.0
        manager.reap()
        assert manager.ids() == [b.session_id]
        assert a.closed
        manager.remove(b.session_id)
        assert manager.ids() == []
        with pytest.raises(KeyError):
            manager.remove(b.session_id)
    finally:
        manager.close_all()
