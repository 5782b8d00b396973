"""blochboard: state-vector playground for data re-uploading quantum classifiers."""

from .errors import ConfigurationError, DomainError
from .qstate import (
    MAX_QUBITS,
    StateVector,
    apply_cx,
    apply_cz,
    apply_single_qubit_gate,
    concurrence,
    fidelity,
    is_unitary,
    probabilities,
    rotation_gate,
    w_state,
    zero_state,
)
from .model import (
    Entangler,
    Model,
    ModelConfig,
    ParameterSet,
    Variant,
    build_model,
    forward,
    forward_batch,
    predict,
    predict_batch,
    target_states,
)
from .training import (
    AdamHyper,
    AdamState,
    EpochMetrics,
    LossKind,
    TrainingState,
    accuracy,
    adam_step,
    batch_loss,
    gradients,
    loss_and_gradients,
    train_epoch,
)
from .datasets import Dataset, DatasetKind, generate, ground_truth_grid, label_rule, split
from .geometry import (
    bloch_coordinates,
    decision_grid,
    phase_hue,
    simplex_coordinates,
    state_cloud,
)
from .session import (
    Command,
    DatasetConfig,
    OptimizerConfig,
    Phase,
    Session,
    SessionConfig,
    SessionManager,
    TrainerCore,
    config_from_dict,
)
from .server import create_app
from .cli import main, run_headless

__version__ = "0.1.0"
