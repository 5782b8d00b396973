"""
Watching points travel across the Bloch sphere
==============================================

Each layer of the classifier rotates the qubit a little further. Snapshots
of the state after every layer show samples of the two classes drifting
toward opposite poles as training progresses.
"""

import numpy as np

from blochboard import (
    DatasetKind,
    ModelConfig,
    TrainingState,
    Variant,
    bloch_coordinates,
    build_model,
    forward_batch,
    generate,
    split,
    target_states,
    train_epoch,
)

config = ModelConfig(n_qubits=1, n_layers=4, n_classes=2, variant=Variant.COMPACT)
model, params = build_model(config, seed=4)

data = generate(DatasetKind.CIRCLE, n=200, seed=42)
train, test = split(data, test_fraction=0.25, seed=data.seed)
state = TrainingState(
    model, params, train.points, train.labels, test.points, test.labels, seed=4
)

targets = np.stack([bloch_coordinates(t.amplitudes) for t in target_states(2, 1)])
probe = train.points[:40]
probe_labels = train.labels[:40]


def mean_distance_to_target(p) -> np.ndarray:
    """Per-layer mean Bloch distance between each sample and its class target."""
    per_layer, _ = forward_batch(model, p, probe)
    out = []
    for layer_states in per_layer:
        xyz = bloch_coordinates(layer_states)
        out.append(float(np.linalg.norm(xyz - targets[probe_labels], axis=1).mean()))
    return np.array(out)


print("class targets on the sphere:")
for c, xyz in enumerate(targets):
    print(f"  class {c}: ({xyz[0]:+.3f}, {xyz[1]:+.3f}, {xyz[2]:+.3f})")

print("\nmean distance to the class target after each layer")
print("epoch  " + "  ".join(f"layer{k}" for k in range(config.n_layers)))
dist = mean_distance_to_target(state.params)
print("    0  " + "  ".join(f"{d:6.3f}" for d in dist))
for _ in range(10):
    metrics = train_epoch(state)
    dist = mean_distance_to_target(state.params)
    print(f"{metrics.epoch:5d}  " + "  ".join(f"{d:6.3f}" for d in dist))

# one concrete trajectory: a single training point, layer by layer
per_layer, _ = forward_batch(model, state.params, probe[:1])
print(f"\ntrajectory of point ({probe[0, 0]:+.3f}, {probe[0, 1]:+.3f}),"
      f" class {probe_labels[0]}:")
for k, layer_states in enumerate(per_layer):
    x, y, z = bloch_coordinates(layer_states)[0]
    print(f"  after layer {k}: ({x:+.3f}, {y:+.3f}, {z:+.3f})")
