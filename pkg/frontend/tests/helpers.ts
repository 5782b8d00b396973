// Frame factories shared by the data-layer tests.
import type { ConfigEcho, Frame, FramePoint } from "../src/types.js";

export function makePoint(overrides: Partial<FramePoint> = {}): FramePoint {
  return { xyz: [0, 0, 1], label: 0, correct: true, score: 0.9, size: 1, hue: 0, ...overrides };
}

export function makeEcho(overrides: Partial<ConfigEcho> = {}): ConfigEcho {
  return {
    n_qubits: 1,
    n_layers: 1,
    n_classes: 2,
    variant: "compact",
    entangler: "none",
    seed: 0,
    grid_resolution: 2,
    dataset: { kind: "circle", n_samples: 8, seed: 0, noise: 0, test_fraction: 0.25 },
    optimizer: { learning_rate: 0.05, batch_size: 4, max_epochs: 10 },
    ...overrides,
  };
}

export function makeFrame(overrides: Partial<Frame> = {}): Frame {
  return {
    session_id: "s-test",
    seq: 0,
    run: 0,
    epoch: 0,
    step: 0,
    state: "paused",
    metrics: {
      train_loss: 0.69,
      train_loss_sum: 4.14,
      train_accuracy: 0.5,
      test_accuracy: 0.5,
      batch_loss: null,
    },
    hyper: { learning_rate: 0.05, batch_size: 4, max_epochs: 10 },
    model_seed: 0,
    sample_indices: [0, 1],
    layers: [{ points: [makePoint(), makePoint({ label: 1, correct: false })] }],
    final: { points: [makePoint(), makePoint({ label: 1, correct: false })] },
    grid: {
      resolution: 2,
      labels: [0, 0, 1, 1],
      scores: [
        [0.8, 0.2],
        [0.7, 0.3],
        [0.3, 0.7],
        [0.2, 0.8],
      ],
      truth: [0, 0, 1, 1],
    },
    config_echo: makeEcho(),
    class_summary: [
      { label: 0, target_xyz: [0, 0, 1], train_count: 1, test_count: 1 },
      { label: 1, target_xyz: [0, 0, -1], train_count: 1, test_count: 1 },
    ],
    dataset: {
      train: { points: [[0.1, 0.2], [-0.4, 0.6]], labels: [0, 1] },
      test: { points: [[0.5, -0.5], [-0.2, -0.9]], labels: [0, 1] },
    },
    ...overrides,
  };
}
