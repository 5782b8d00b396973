// Wire types for the session service. Field names and shapes follow the
// server's frame JSON exactly; anything optional here is genuinely optional
// on the wire (command acks add fields that stream frames lack).

export type Phase = "paused" | "running" | "finished";

export type ControlCommand =
  | "start"
  | "pause"
  | "step_batch"
  | "step_epoch"
  | "reset"
  | "update_hyper";

export interface FramePoint {
  xyz: [number, number, number];
  label: number;
  correct: boolean;
  score: number;
  size: number;
  hue: number;
}

export interface FrameMetrics {
  train_loss: number;
  train_loss_sum: number;
  train_accuracy: number;
  test_accuracy: number;
  batch_loss: number | null;
}

export interface FrameHyper {
  learning_rate: number;
  batch_size: number;
  max_epochs: number;
}

export interface FrameGrid {
  resolution: number;
  labels: number[];
  scores: number[][];
  truth: number[];
}

export interface DatasetEcho {
  points: [number, number][];
  labels: number[];
}

export interface ClassSummary {
  label: number;
  target_xyz: [number, number, number];
  train_count: number;
  test_count: number;
}

export interface ConfigEcho {
  n_qubits: number;
  n_layers: number;
  n_classes: number;
  variant: string;
  entangler: string;
  seed: number;
  grid_resolution: number;
  dataset: {
    kind: string;
    n_samples: number;
    seed: number;
    noise: number;
    test_fraction: number;
  };
  optimizer: {
    learning_rate: number;
    batch_size: number;
    max_epochs: number;
  };
  targets?: [number, number][][];
  loss?: string;
  n_parameters?: number;
}

export interface Frame {
  session_id: string;
  seq: number;
  run: number;
  epoch: number;
  step: number;
  state: Phase;
  metrics: FrameMetrics;
  hyper: FrameHyper;
  model_seed: number;
  sample_indices: number[];
  layers: { points: FramePoint[] }[];
  final: { points: FramePoint[] };
  grid: FrameGrid;
  config_echo: ConfigEcho;
  class_summary: ClassSummary[];
  dataset: { train: DatasetEcho; test: DatasetEcho };
  // present on command acknowledgements only
  applied?: boolean;
  command?: ControlCommand;
}
