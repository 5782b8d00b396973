"""
Two qubits, four classes, one tetrahedron
=========================================

With two qubits the four basis probabilities form a point inside a regular
tetrahedron whose vertices are the four classes. Maximally entangled states
sit exactly on midpoints of opposite edges, so entanglement is visible as
geometry. Point size in the rendered cloud encodes concurrence.
"""

import numpy as np

from blochboard import (
    DatasetKind,
    Entangler,
    ModelConfig,
    StateVector,
    TrainingState,
    Variant,
    build_model,
    concurrence,
    forward_batch,
    generate,
    simplex_coordinates,
    split,
    state_cloud,
    train_epoch,
)

# the four maximally entangled pair states land on opposite-edge midpoints
bell_pairs = {
    "(|00> + |11>)/sqrt(2)": [1, 0, 0, 1],
    "(|00> - |11>)/sqrt(2)": [1, 0, 0, -1],
    "(|01> + |10>)/sqrt(2)": [0, 1, 1, 0],
    "(|01> - |10>)/sqrt(2)": [0, 1, -1, 0],
}
print("maximally entangled pairs inside the tetrahedron:")
for name, amps in bell_pairs.items():
    psi = StateVector(2, np.asarray(amps, dtype=complex) / np.sqrt(2))
    x, y, z = simplex_coordinates(psi.amplitudes)
    print(f"  {name}: ({x:+.4f}, {y:+.4f}, {z:+.4f})"
          f"   concurrence {concurrence(psi):.3f}")

# train a four-class model and inspect where the samples end up
config = ModelConfig(
    n_qubits=2, n_layers=6, n_classes=4, variant=Variant.COMPACT, entangler=Entangler.CZ
)
model, params = build_model(config, seed=0)
data = generate(DatasetKind.FOUR_BLOBS, n=200, seed=42)
train, test = split(data, test_fraction=0.25, seed=data.seed)
state = TrainingState(
    model, params, train.points, train.labels, test.points, test.labels, seed=0
)

print("\nepoch  train_loss  test_acc")
for _ in range(6):
    metrics = train_epoch(state)
    print(f"{metrics.epoch:5d}  {metrics.train_loss:10.4f}  {metrics.test_accuracy:8.3f}")

_, final = forward_batch(model, state.params, train.points)
cloud = state_cloud(final, n_qubits=2)

print("\nper-class mean position after training (vertices are the classes):")
for c in range(4):
    mean = cloud.coords[train.labels == c].mean(axis=0)
    print(f"  class {c}: ({mean[0]:+.3f}, {mean[1]:+.3f}, {mean[2]:+.3f})")

sizes = cloud.sizes
print(f"\nconcurrence across the trained cloud:"
      f" min {sizes.min():.3f}, mean {sizes.mean():.3f}, max {sizes.max():.3f}")
print("(sizes near 0 mean the circuit learned nearly separable final states)")
