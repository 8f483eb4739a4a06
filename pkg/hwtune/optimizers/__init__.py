from .agent_optimizer import AgentOptimizer, agent_optimizer  # noqa
from .base import (  # noqa
    ACCURACY,
    LATENCY,
    BaseOptimizer,
    Direction,
    ObjectiveSpec,
    Observation,
    Optimizer,
    Proposal,
    default_objectives,
    objective_spec,
)
from .bayesian import BayesianOptimizer, GaussianProcess, bayesian_opt  # noqa
from .convergence import best_so_far  # noqa
from .drive import OptimizerKernelStrategy, drive  # noqa
from .exceptions import (  # noqa
    BudgetTooSmallError,
    ObjectiveMismatchError,
    OptimizerError,
    SingularModelError,
    UnknownObjectiveError,
    UnknownOptimizerError,
)
from .local_search import LocalSearch, local_search  # noqa
from .nsga2 import NSGA2, nsga2  # noqa
from .pareto import ParetoFront, dominates, pareto_front  # noqa
from .random_search import RandomSearch, random_search  # noqa
from .registry import (  # noqa
    build_optimizer,
    default_population,
    kernel_strategy,
    optimizer_names,
    register_optimizers,
)


def setup_di():
    register_optimizers()
