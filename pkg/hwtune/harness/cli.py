import argparse
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from hwtune.hardware import (
    STANDARD_CANDIDATES,
    admitted,
    load_profile,
    load_table,
    memory_gate,
    schemes,
    select_quant_by_measurement,
    select_quant_by_profile,
)
from hwtune.kerneltune import (
    MAX_DIM,
    MAX_UNROLL,
    TILINGS,
    ExhaustiveStrategy,
    KernelSpec,
    candidate_grid,
    load_kernels,
    tune_kernel,
)
from hwtune.optimizers import kernel_strategy, optimizer_names
from hwtune.services import register_services
from hwtune.shared import create_base_application
from hwtune.shared.util import HwtuneException

from .compare import compare_optimizers
from .manifest import (
    AgentSection,
    EvaluatorSection,
    OptimizerSection,
    RunManifest,
    load_manifest,
)
from .registry import build_evaluator
from .run import replay, resolve_space, run_experiment


EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    pass


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with 1, runtime errors are left to the caller."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_targets(values: Sequence[str]) -> Dict[str, float]:
    targets: Dict[str, float] = {}
    for value in values:
        name, _, threshold = value.partition("=")
        try:
            targets[name] = float(threshold)
        except ValueError:
            raise UsageError(f"A target has the form name=number, got '{value}'")
    return targets


def powers_of_two(upper: int) -> List[int]:
    return [2**i for i in range(upper.bit_length()) if 2**i <= upper]


def exhaustive_candidates(spec: KernelSpec):
    grid = candidate_grid(
        spec,
        powers_of_two(MAX_DIM),
        powers_of_two(MAX_DIM),
        TILINGS,
        powers_of_two(MAX_UNROLL),
    )
    return [config for config in grid if config.is_valid]


def cmd_tune(args: argparse.Namespace) -> int:
    if args.manifest is not None:
        if not Path(args.manifest).is_file():
            raise UsageError(f"No manifest at {args.manifest}")
        manifest = load_manifest(Path(args.manifest))
    else:
        manifest = RunManifest(
            run_id=args.run_id,
            budget=args.budget,
            space=args.space,
            optimizer=OptimizerSection(args.optimizer, args.seed),
            evaluator=EvaluatorSection(
                kind="synthetic", name=args.objective, seed=args.seed, noise=args.noise
            ),
            agent=AgentSection(args.agent, args.seed)
            if args.optimizer == "agent"
            else None,
            targets=parse_targets(args.target),
        )
    output = Path(args.output or Path("runs") / manifest.run_id)
    result = run_experiment(manifest, output)
    outcome = result.outcome
    print(f"Run {manifest.run_id}: {outcome.status} after {outcome.rounds} rounds")
    for name, value in outcome.best.items():
        print(f"  best {name}: {value:g}")
    print(f"Results in {result.run_dir}")
    return EXIT_OK


def cmd_select_quant(args: argparse.Namespace) -> int:
    profile = load_profile(args.profile)
    candidates = schemes(args.schemes) if args.schemes else STANDARD_CANDIDATES
    memory = args.memory if args.memory is not None else profile.memory_budget_gb
    verdicts = memory_gate(args.params, memory, candidates)
    print(f"{args.params:g} parameters, {memory:g} GB memory budget")
    for scheme, verdict in verdicts.items():
        state = "admit" if verdict.admitted else "reject"
        print(f"  {scheme.label:<6} {state:<7} {verdict.required_gb:g} GB required")
    allowed = admitted(verdicts)
    if not allowed:
        print(f"No quantization scheme fits into {memory:g} GB")
        return EXIT_OK
    ranking = select_quant_by_profile(profile, args.params, allowed)
    print(f"Recommendation on {profile.name}: {ranking.best.label}")
    print(f"  ranking: {', '.join(scheme.label for scheme in ranking.ranked)}")
    print(f"  {ranking.rationale}")
    if args.table:
        table = load_table(args.table)
        models = [args.model] if args.model else table.models
        for model in models:
            measured = [s for s in allowed if s in table.schemes_for(model)]
            if not measured:
                print(f"No admitted scheme was measured for {model}")
                continue
            best = select_quant_by_measurement(table, model, measured)
            print(f"Measured best for {model}: {best.label}")
    return EXIT_OK


def cmd_kernel_tune(args: argparse.Namespace) -> int:
    strategies = ["exhaustive"] + [n for n in optimizer_names() if n != "agent"]
    if args.strategy not in strategies:
        raise UsageError(f"Unknown strategy '{args.strategy}'")
    profile = load_profile(args.profile)
    specs = load_kernels(args.kernels)
    if args.kernel:
        specs = [spec for spec in specs if spec.label in args.kernel]
        if not specs:
            raise UsageError(f"No kernel labelled {', '.join(args.kernel)}")
    for spec in specs:
        if args.strategy == "exhaustive":
            candidates = exhaustive_candidates(spec)
            strategy = ExhaustiveStrategy(candidates)
            budget = len(candidates) + 1
        else:
            strategy = kernel_strategy(args.strategy, spec, args.seed, args.budget)
            budget = args.budget
        result = tune_kernel(spec, profile, budget=budget, strategy=strategy)
        print(
            f"{spec.label}: {result.default_latency:.3f} us -> "
            f"{result.best_latency:.3f} us ({result.speedup:.2f}x) "
            f"{result.best.to_json_dict()}"
        )
    return EXIT_OK


def cmd_compare(args: argparse.Namespace) -> int:
    space = resolve_space(args.space)
    evaluator = build_evaluator(
        EvaluatorSection(
            kind="synthetic", name=args.objective, seed=args.eval_seed, noise=args.noise
        ),
        space,
        Path(args.output),
    )
    report = compare_optimizers(
        space,
        evaluator,
        args.optimizers,
        args.seeds,
        args.budget,
        Path(args.output),
        max_workers=args.workers,
    )
    for row in report.rows:
        stderr = f" ± {row.stderr:g}" if row.stderr is not None else ""
        print(f"{row.optimizer:<10} {row.mean:g}{stderr} over {row.runs} runs")
    print(f"Report in {args.output}")
    return EXIT_OK


def cmd_replay(args: argparse.Namespace) -> int:
    if not Path(args.run_dir).is_dir():
        raise UsageError(f"No run directory at {args.run_dir}")
    result = replay(Path(args.run_dir))
    if result.identical:
        print("logs identical")
        return EXIT_OK
    print(f"logs differ at record {result.first_difference}")
    return EXIT_RUNTIME


def build_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="hwtune", description="Hardware-aware quantization and tuning runs"
    )
    commands = parser.add_subparsers(dest="command", parser_class=ArgumentParser)
    commands.required = True

    tune = commands.add_parser("tune", help="run one experiment")
    tune.add_argument("--manifest", help="run manifest; overrides the other flags")
    tune.add_argument("--output", help="run directory, default runs/<run id>")
    tune.add_argument("--run-id", default="run")
    tune.add_argument("--space", default="resnet_appendix_d")
    tune.add_argument("--optimizer", default="agent")
    tune.add_argument("--agent", default="coordinate-descent")
    tune.add_argument("--objective", default="quantization_surface")
    tune.add_argument("--budget", type=int, default=10)
    tune.add_argument("--seed", type=int, default=0)
    tune.add_argument("--noise", type=float, default=0.0)
    tune.add_argument(
        "--target", action="append", default=[], help="name=threshold, repeatable"
    )
    tune.set_defaults(handler=cmd_tune)

    select = commands.add_parser(
        "select-quant", help="memory gate and quantization recommendation"
    )
    select.add_argument("--params", type=float, required=True)
    select.add_argument("--memory", type=float, help="GB, default the profile's")
    select.add_argument("--profile", required=True)
    select.add_argument("--schemes", nargs="+")
    select.add_argument("--table", help="measured throughput table")
    select.add_argument("--model", help="model row of the throughput table")
    select.set_defaults(handler=cmd_select_quant)

    kernel = commands.add_parser("kernel-tune", help="tune kernel launch configs")
    kernel.add_argument("--kernels", default="benchmark_kernels")
    kernel.add_argument("--kernel", nargs="+", help="labels, default all")
    kernel.add_argument("--profile", required=True)
    kernel.add_argument("--budget", type=int, default=10)
    kernel.add_argument("--seed", type=int, default=0)
    kernel.add_argument(
        "--strategy", default="local", help="an optimizer name or 'exhaustive'"
    )
    kernel.set_defaults(handler=cmd_kernel_tune)

    compare = commands.add_parser("compare", help="compare optimizers over seeds")
    compare.add_argument("--optimizers", nargs="+", required=True)
    compare.add_argument("--seeds", nargs="+", type=int, default=[0, 1, 2, 3, 4])
    compare.add_argument("--space", default="resnet_appendix_d")
    compare.add_argument("--objective", default="sphere")
    compare.add_argument("--budget", type=int, default=10)
    compare.add_argument("--noise", type=float, default=0.0)
    compare.add_argument("--eval-seed", type=int, default=0)
    compare.add_argument("--workers", type=int, default=1)
    compare.add_argument("--output", default="comparison")
    compare.set_defaults(handler=cmd_compare)

    replay_parser = commands.add_parser("replay", help="re-run a run and diff logs")
    replay_parser.add_argument("run_dir")
    replay_parser.set_defaults(handler=cmd_replay)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    register_services()
    create_base_application(stream=sys.stderr)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.handler(args)
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"hwtune: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except HwtuneException as e:
        print(f"hwtune: {type(e).__name__}: {e.msg}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
