"""
Driving the trainer through the session protocol
================================================

The HTTP server is a thin shell around TrainerCore, a synchronous command
machine that accepts the same control verbs the web UI sends and answers
every one with a full frame. This script exercises the protocol directly,
then runs the same configuration headless to produce on-disk artifacts.
"""

import json
import tempfile
from pathlib import Path

from blochboard import (
    Command,
    DatasetConfig,
    DatasetKind,
    OptimizerConfig,
    SessionConfig,
    TrainerCore,
    run_headless,
)

config = SessionConfig(
    n_qubits=1,
    n_layers=4,
    n_classes=2,
    seed=4,
    grid_resolution=16,
    dataset=DatasetConfig(kind=DatasetKind.CIRCLE, n_samples=120, seed=42),
    optimizer=OptimizerConfig(learning_rate=0.05, batch_size=16, max_epochs=3),
)

core = TrainerCore(config, session_id="demo")


def show(frame: dict, note: str):
    m = frame["metrics"]
    acc = "none" if m["test_accuracy"] is None else f"{m['test_accuracy']:.3f}"
    print(
        f"{note:24s} seq={frame['seq']:3d} run={frame['run']}"
        f" epoch={frame['epoch']} step={frame['step']:3d}"
        f" state={frame['state']:8s} test_acc={acc}"
    )


show(core.build_frame(), "initial frame")
show(core.apply(Command.STEP_BATCH), "step one batch")
show(core.apply(Command.STEP_EPOCH), "step to epoch end")
show(core.apply(Command.UPDATE_HYPER, lr=0.02), "lower the learning rate")
show(core.apply(Command.STEP_EPOCH), "another epoch")
show(core.apply(Command.RESET, seed=9), "reset with a new seed")
show(core.apply(Command.STEP_EPOCH), "epoch after reset")

frame = core.build_frame()
print(f"\nframes carry everything a renderer needs:")
print(f"  layer snapshots: {len(frame['layers'])} layers,"
      f" {len(frame['layers'][0]['points'])} points each")
print(f"  decision grid: {frame['grid']['resolution']}x{frame['grid']['resolution']}"
      f" cells with scores and ground truth")
print(f"  config echo: {frame['config_echo']['n_parameters']} trainable parameters")

# the same configuration, end to end, with artifacts on disk
with tempfile.TemporaryDirectory() as tmp:
    summary = run_headless(config, tmp)
    print(f"\nheadless run finished at epoch {summary['epochs']}"
          f" with test accuracy {summary['test_accuracy']:.3f}")
    for name in ("metrics.csv", "frames.jsonl", "params.json"):
        path = Path(tmp) / name
        print(f"  {name}: {path.stat().st_size} bytes")
    first = json.loads((Path(tmp) / "frames.jsonl").read_text().splitlines()[0])
    print(f"  first frame in frames.jsonl is epoch {first['epoch']}"
          f" of run {first['run']}")
