"""
A stand-in training job showing the external evaluator contract.

The harness writes the proposal to a JSON file,

    {"round": 3, "config": {"learning_rate": 0.005, ...}, "kernel_config": null}

and runs the command template with {config} (and optionally {metrics}) replaced by
file paths. The job answers with a metrics document holding one number per declared
objective and an optional loss trace,

    {"accuracy": 0.8966, "loss_trace": [0.91, 0.62, 0.48]}

written to the {metrics} path, or to stdout when the template has no {metrics}
placeholder. A nonzero exit code marks the evaluation as failed; the tail of stderr
is kept for the error report.

Example manifest entry:

    evaluator:
      kind: external_command
      command: >-
        python -m hwtune.harness.stub_evaluator
        --config {config} --metrics {metrics}
      timeout: 60
"""
import argparse
import json
import sys
from pathlib import Path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--config", required=True)
    parser.add_argument("--metrics", help="metrics file, default stdout")
    parser.add_argument("--accuracy", type=float, default=0.5)
    parser.add_argument("--exit-code", type=int, default=0)
    parser.add_argument(
        "--malformed", action="store_true", help="report accuracy as text"
    )
    args = parser.parse_args(argv)

    document = json.loads(Path(args.config).read_text())
    if args.exit_code:
        print(f"round {document['round']}: training diverged", file=sys.stderr)
        return args.exit_code

    epochs = int(document["config"].get("num_epochs", 3))
    metrics = {
        "accuracy": "high" if args.malformed else args.accuracy,
        "loss_trace": [round(2.3 / (epoch + 1), 4) for epoch in range(epochs)],
    }
    text = json.dumps(metrics)
    if args.metrics:
        Path(args.metrics).write_text(text)
    else:
        print(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
