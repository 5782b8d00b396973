"""Command line entry points: headless training runs and the API server.

`run` trains a configuration to its epoch cap and writes three artifacts
into the output directory: metrics.csv (one row per epoch), frames.jsonl
(the frame after each epoch, newline-delimited JSON), and params.json (the
final parameter vector with its config). Identical inputs produce byte
identical artifacts. `serve` hosts the HTTP API and web UI.

Settings resolve in precedence order: command line flags, then the --config
file, then built-in defaults.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .datasets import DatasetKind
from .errors import ConfigurationError, DomainError
from .model import Entangler, Variant
from .session import Command, Phase, SessionConfig, TrainerCore, config_from_dict

METRICS_COLUMNS = ("epoch", "train_loss", "train_loss_sum", "train_accuracy", "test_accuracy")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blochboard",
        description="Train and explore small quantum circuit classifiers.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    run = sub.add_parser("run", help="train headless and write artifacts")
    run.add_argument("--config", type=Path, help="JSON file with a session config")
    run.add_argument("--dataset", choices=[k.value for k in DatasetKind])
    run.add_argument("--qubits", type=int)
    run.add_argument("--layers", type=int)
    run.add_argument("--classes", type=int)
    run.add_argument("--variant", choices=[v.value for v in Variant])
    run.add_argument("--entangler", choices=[e.value for e in Entangler])
    run.add_argument("--lr", type=float)
    run.add_argument("--batch-size", type=int)
    run.add_argument("--epochs", type=int, help="epoch cap for the run")
    run.add_argument("--seed", type=int, help="model init and shuffle seed")
    run.add_argument("--data-seed", type=int, help="dataset sampling seed")
    run.add_argument("--noise", type=float, help="label noise fraction in [0, 1]")
    run.add_argument("--grid-res", type=int, help="decision grid resolution")
    run.add_argument("--out", type=Path, default=Path("blochboard_run"),
                     help="artifact directory (default: ./blochboard_run)")
    run.set_defaults(handler=cmd_run)

    serve = sub.add_parser("serve", help="host the HTTP API and web UI")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--bind", default="127.0.0.1")
    serve.set_defaults(handler=cmd_serve)
    return parser


def _load_config_file(path: Path | None) -> dict:
    if path is None:
        return {}
    try:
        with open(path) as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file: {exc}", fields=["config"])
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"config file is not valid JSON: {exc}", fields=["config"])
    if not isinstance(payload, dict):
        raise ConfigurationError("config file must hold a JSON object", fields=["config"])
    return payload


# flag destination -> dotted config path
_FLAG_PATHS = {
    "qubits": ("n_qubits",),
    "layers": ("n_layers",),
    "classes": ("n_classes",),
    "variant": ("variant",),
    "entangler": ("entangler",),
    "seed": ("seed",),
    "grid_res": ("grid_resolution",),
    "dataset": ("dataset", "kind"),
    "data_seed": ("dataset", "seed"),
    "noise": ("dataset", "noise"),
    "lr": ("optimizer", "learning_rate"),
    "batch_size": ("optimizer", "batch_size"),
    "epochs": ("optimizer", "max_epochs"),
}


def merged_config(args: argparse.Namespace) -> SessionConfig:
    """Resolve flags over the config file over defaults."""
    payload = _load_config_file(args.config)
    for dest, path in _FLAG_PATHS.items():
        value = getattr(args, dest)
        if value is None:
            continue
        node = payload
        for key in path[:-1]:
            node = node.setdefault(key, {})
            if not isinstance(node, dict):
                raise ConfigurationError(
                    f"config file field {key!r} must be an object", fields=[key]
                )
        node[path[-1]] = value
    return config_from_dict(payload)


def run_headless(config: SessionConfig, out_dir, log=None) -> dict:
    """Train to the epoch cap and write artifacts; returns a summary dict."""
    core = TrainerCore(config, session_id="headless")
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)

    frames = [core.build_frame()]
    while core.phase is not Phase.FINISHED:
        frame = core.apply(Command.STEP_EPOCH)
        frames.append(frame)
        if log is not None:
            m = frame["metrics"]
            log(
                f"epoch {frame['epoch']}/{config.optimizer.max_epochs}"
                f" train_loss={m['train_loss']:.6f}"
                f" train_acc={m['train_accuracy']:.3f}"
                f" test_acc={m['test_accuracy']:.3f}"
            )

    metrics_path = out / "metrics.csv"
    with open(metrics_path, "w", newline="") as fh:
        fh.write(",".join(METRICS_COLUMNS) + "\n")
        for frame in frames:
            m = frame["metrics"]
            row = [str(frame["epoch"])] + [
                format(m[c], ".17g") for c in METRICS_COLUMNS[1:]
            ]
            fh.write(",".join(row) + "\n")

    frames_path = out / "frames.jsonl"
    with open(frames_path, "w") as fh:
        for frame in frames:
            fh.write(json.dumps(frame, separators=(",", ":")) + "\n")

    params_path = out / "params.json"
    with open(params_path, "w") as fh:
        json.dump(
            {
                "config": config.to_dict(),
                "model_seed": core.seed,
                "n_parameters": core.training.params.n_parameters,
                "flat": core.training.params.to_flat().tolist(),
            },
            fh,
            indent=2,
        )
        fh.write("\n")

    final = frames[-1]["metrics"]
    return {
        "epochs": frames[-1]["epoch"],
        "train_loss": final["train_loss"],
        "train_accuracy": final["train_accuracy"],
        "test_accuracy": final["test_accuracy"],
        "paths": {
            "metrics": str(metrics_path),
            "frames": str(frames_path),
            "params": str(params_path),
        },
    }


def cmd_run(args: argparse.Namespace) -> int:
    config = merged_config(args)
    summary = run_headless(config, args.out, log=print)
    print(
        f"finished after {summary['epochs']} epochs:"
        f" train_acc={summary['train_accuracy']:.3f}"
        f" test_acc={summary['test_accuracy']:.3f}"
    )
    print(f"artifacts in {args.out}")
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import create_app

    uvicorn.run(create_app(), host=args.bind, port=args.port, log_level="info")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
