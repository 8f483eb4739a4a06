from typing import Any, Optional, Sequence

from hwtune.kerneltune import KernelSpec, kernel_space
from hwtune.shared.di import injector
from hwtune.shared.di.exceptions import DependencyNotFound
from hwtune.space import SearchSpace

from .agent_optimizer import AgentOptimizer
from .base import LATENCY, ObjectiveSpec, Optimizer
from .bayesian import BayesianOptimizer
from .drive import OptimizerKernelStrategy
from .exceptions import BudgetTooSmallError, UnknownOptimizerError
from .local_search import LocalSearch
from .nsga2 import NSGA2
from .random_search import RandomSearch


MAX_POPULATION = 10


def default_population(budget: int) -> int:
    """Largest even population up to 10 that still leaves room for two generations."""
    population = min(MAX_POPULATION, budget // 2)
    population -= population % 2
    if population < 4:
        raise BudgetTooSmallError(budget, 4)
    return population


def build_random(space, seed, budget, objectives, **options) -> RandomSearch:
    return RandomSearch(space, seed, budget, objectives)


def build_local(space, seed, budget, objectives, **options) -> LocalSearch:
    return LocalSearch(space, seed, budget, objectives)


def build_bayesian(space, seed, budget, objectives, **options) -> BayesianOptimizer:
    return BayesianOptimizer(
        space, seed, budget, options.get("init_rounds"), objectives
    )


def build_nsga2(space, seed, budget, objectives, **options) -> NSGA2:
    population = options.get("population") or default_population(budget)
    return NSGA2(space, seed, budget, population, objectives)


def build_agent(space, seed, budget, objectives, **options) -> AgentOptimizer:
    agent_options = {
        key: options[key]
        for key in (
            "history_policy",
            "expect",
            "kernel_spec",
            "token_cap",
            "retry_policy",
            "ledger",
        )
        if options.get(key) is not None
    }
    return AgentOptimizer(
        options["backend"],
        options["static_prompt"],
        space,
        budget=budget,
        objectives=objectives,
        **agent_options,
    )


def register_optimizers() -> None:
    injector.register_named(Optimizer, RandomSearch.name, build_random)
    injector.register_named(Optimizer, LocalSearch.name, build_local)
    injector.register_named(Optimizer, BayesianOptimizer.name, build_bayesian)
    injector.register_named(Optimizer, NSGA2.name, build_nsga2)
    injector.register_named(Optimizer, AgentOptimizer.name, build_agent)


def optimizer_names() -> Sequence[str]:
    return injector.names(Optimizer)


def build_optimizer(
    name: str,
    space: SearchSpace,
    seed: int = 0,
    budget: int = 10,
    objectives: Optional[Sequence[ObjectiveSpec]] = None,
    **options: Any,
) -> Optimizer:
    try:
        builder = injector.get_named(Optimizer, name)
    except DependencyNotFound:
        raise UnknownOptimizerError(name, optimizer_names())
    return builder(space, seed, budget, objectives, **options)


def kernel_strategy(
    name: str, spec: KernelSpec, seed: int = 0, budget: int = 10, **options: Any
) -> OptimizerKernelStrategy:
    """
    A strategy for `tune_kernel(..., budget=budget)`, which measures the default
    itself and leaves `budget - 1` evaluations to the optimizer.
    """
    optimizer = build_optimizer(
        name, kernel_space(spec), seed, max(budget - 1, 1), (LATENCY,), **options
    )
    return OptimizerKernelStrategy(optimizer)
