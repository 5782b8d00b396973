"""Regenerate tests/fixtures/config-cases.json from the server's validator.

The browser validates config drafts with the same rules the server enforces.
This script runs a bank of payloads through the server-side parser and
records, for each, either acceptance (plus the echoed config) or the exact
dotted field list it rejects. The TypeScript validator is tested against the
resulting fixture, and tests/test_config_parity.py keeps the fixture itself
from drifting out of sync with the server.

Run from the repository root:

    python3 frontend/scripts/gen_config_cases.py
"""

import json
from pathlib import Path

from blochboard import ConfigurationError
from blochboard.session import config_from_dict

CASES = [
    # defaults and plain acceptance
    {"name": "empty object", "payload": {}},
    {"name": "null payload", "payload": None},
    {"name": "typical one-qubit", "payload": {
        "n_qubits": 1, "n_layers": 6, "n_classes": 2, "variant": "compact",
        "dataset": {"kind": "circle", "n_samples": 200, "seed": 42},
        "optimizer": {"learning_rate": 0.05, "batch_size": 16, "max_epochs": 50},
    }},
    {"name": "typical two-qubit", "payload": {
        "n_qubits": 2, "n_layers": 6, "n_classes": 4, "entangler": "cz",
        "dataset": {"kind": "four_blobs"},
        "optimizer": {"max_epochs": 80},
    }},
    {"name": "separate variant with cnot", "payload": {
        "n_qubits": 2, "n_layers": 3, "variant": "separate", "entangler": "cnot",
        "n_classes": 2, "dataset": {"kind": "moons"},
    }},
    {"name": "one qubit keeps cz draft", "payload": {"n_qubits": 1, "entangler": "cz"}},
    {"name": "one qubit with cnot draft", "payload": {"n_qubits": 1, "entangler": "cnot"}},
    {"name": "annulus three classes", "payload": {
        "n_classes": 3, "dataset": {"kind": "annulus"},
    }},
    {"name": "three blobs three classes", "payload": {
        "n_classes": 3, "dataset": {"kind": "three_blobs"},
    }},
    {"name": "boundary values accepted", "payload": {
        "n_layers": 64, "grid_resolution": 200, "seed": 0,
        "dataset": {"n_samples": 8, "noise": 1.0, "test_fraction": 0.5},
        "optimizer": {"learning_rate": 0.0, "batch_size": 1, "max_epochs": 10000},
    }},
    {"name": "minimum grid resolution", "payload": {"grid_resolution": 8}},
    {"name": "numeric strings coerce", "payload": {
        "n_layers": "6", "seed": "3",
        "optimizer": {"learning_rate": "0.1", "batch_size": "8"},
    }},
    {"name": "integral float coerces", "payload": {"n_layers": 4.0}},

    # single-field rejections
    {"name": "zero qubits", "payload": {"n_qubits": 0}},
    {"name": "three qubits", "payload": {"n_qubits": 3}},
    {"name": "zero layers", "payload": {"n_layers": 0}},
    {"name": "too many layers", "payload": {"n_layers": 65}},
    {"name": "one class", "payload": {"n_classes": 1}},
    {"name": "five classes", "payload": {"n_classes": 5, "dataset": {"kind": "four_blobs"}}},
    {"name": "unknown variant", "payload": {"variant": "fancy"}},
    {"name": "unknown entangler", "payload": {"entangler": "swap"}},
    {"name": "negative seed", "payload": {"seed": -1}},
    {"name": "grid too coarse", "payload": {"grid_resolution": 7}},
    {"name": "grid too fine", "payload": {"grid_resolution": 201}},
    {"name": "unknown dataset kind", "payload": {"dataset": {"kind": "stripes"}}},
    {"name": "circle cannot do 3 classes", "payload": {
        "n_classes": 3, "dataset": {"kind": "circle"},
    }},
    {"name": "four blobs cannot do 2 classes", "payload": {
        "n_classes": 2, "dataset": {"kind": "four_blobs"},
    }},
    {"name": "too few samples", "payload": {"dataset": {"n_samples": 7}}},
    {"name": "too many samples", "payload": {"dataset": {"n_samples": 5001}}},
    {"name": "negative dataset seed", "payload": {"dataset": {"seed": -4}}},
    {"name": "noise above one", "payload": {"dataset": {"noise": 1.5}}},
    {"name": "negative noise", "payload": {"dataset": {"noise": -0.1}}},
    {"name": "test fraction zero", "payload": {"dataset": {"test_fraction": 0.0}}},
    {"name": "test fraction one", "payload": {"dataset": {"test_fraction": 1.0}}},
    {"name": "negative learning rate", "payload": {"optimizer": {"learning_rate": -0.01}}},
    {"name": "zero batch size", "payload": {"optimizer": {"batch_size": 0}}},
    {"name": "zero epochs", "payload": {"optimizer": {"max_epochs": 0}}},
    {"name": "epoch cap exceeded", "payload": {"optimizer": {"max_epochs": 10001}}},

    # type coercion failures
    {"name": "boolean qubits", "payload": {"n_qubits": True}},
    {"name": "fractional layers", "payload": {"n_layers": 2.5}},
    {"name": "non-numeric seed", "payload": {"seed": "many"}},
    {"name": "boolean learning rate", "payload": {"optimizer": {"learning_rate": True}}},
    {"name": "non-finite learning rate", "payload": {"optimizer": {"learning_rate": "inf"}}},
    {"name": "nan noise", "payload": {"dataset": {"noise": "nan"}}},
    {"name": "null fields fall back to defaults", "payload": {
        "n_layers": None, "dataset": {"kind": None}, "optimizer": {"batch_size": None},
    }},

    # structural problems
    {"name": "unknown top-level key", "payload": {"qubits": 1}},
    {"name": "several unknown keys sort first", "payload": {"zzz": 1, "aaa": 2}},
    {"name": "unknown nested keys", "payload": {
        "dataset": {"kind": "circle", "shuffle": True},
        "optimizer": {"momentum": 0.9},
    }},
    {"name": "dataset as list", "payload": {"dataset": [1, 2]}},
    {"name": "optimizer as string", "payload": {"optimizer": "adam"}},
    {"name": "dataset as zero is treated as missing", "payload": {"dataset": 0}},
    {"name": "dataset as empty string is treated as missing", "payload": {"dataset": ""}},

    # several problems at once, order and dedup
    {"name": "many problems in one payload", "payload": {
        "n_qubits": 9, "n_layers": 0, "variant": "fancy", "grid_resolution": 500,
        "dataset": {"kind": "stripes", "n_samples": 2, "noise": 3},
        "optimizer": {"learning_rate": -1, "batch_size": 0},
        "extra": True,
    }},
    {"name": "coercion failure and range failure on same field", "payload": {
        "n_layers": "soup", "seed": -2,
    }},
]


def build_records():
    out = []
    for case in CASES:
        record = {"name": case["name"], "payload": case["payload"]}
        try:
            config = config_from_dict(case["payload"])
            record["ok"] = True
            record["echo"] = config.to_dict()
        except ConfigurationError as exc:
            record["ok"] = False
            record["fields"] = exc.fields
        out.append(record)
    return out


def main():
    out = build_records()
    path = Path(__file__).resolve().parent.parent / "tests" / "fixtures" / "config-cases.json"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(out, indent=2) + "\n")
    accepted = sum(1 for r in out if r["ok"])
    print(f"wrote {len(out)} cases ({accepted} accepted) to {path}")


if __name__ == "__main__":
    main()
