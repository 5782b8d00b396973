"""
Training a single-qubit classifier on the circle dataset
========================================================

A one-qubit circuit classifies points by re-uploading the 2-D coordinates
into every layer and measuring fidelity against one target state per class.
Six compact layers are enough to carve out the circular decision boundary.
"""

import numpy as np

from blochboard import (
    DatasetKind,
    ModelConfig,
    TrainingState,
    Variant,
    build_model,
    decision_grid,
    generate,
    ground_truth_grid,
    split,
    train_epoch,
)

config = ModelConfig(n_qubits=1, n_layers=6, n_classes=2, variant=Variant.COMPACT)
model, params = build_model(config, seed=4)

data = generate(DatasetKind.CIRCLE, n=200, seed=42)
train, test = split(data, test_fraction=0.25, seed=data.seed)

state = TrainingState(
    model,
    params,
    train.points,
    train.labels,
    test.points,
    test.labels,
    batch_size=16,
    seed=4,
)

print(f"{config.n_layers} layers, {params.n_parameters} trainable parameters")
print(f"{len(train.labels)} train / {len(test.labels)} test points\n")
print("epoch  train_loss  train_acc  test_acc")
for _ in range(12):
    metrics = train_epoch(state)
    print(
        f"{metrics.epoch:5d}  {metrics.train_loss:10.4f}"
        f"  {metrics.train_accuracy:9.3f}  {metrics.test_accuracy:8.3f}"
    )
    if metrics.test_accuracy >= 0.94:
        break

# render the learned boundary next to the ground truth
RES = 31
learned = decision_grid(model, state.params, RES).labels.reshape(RES, RES)
truth = ground_truth_grid(DatasetKind.CIRCLE, RES).reshape(RES, RES)

print("\nlearned boundary")
for iy in range(RES - 1, -1, -1):
    print("  " + "".join(".#"[v] for v in learned[iy]))
print("\nground truth")
for iy in range(RES - 1, -1, -1):
    print("  " + "".join(".#"[v] for v in truth[iy]))

agreement = float(np.mean(learned == truth))
print(f"\ngrid agreement with the true rule: {agreement:.3f}")
