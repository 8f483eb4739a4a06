from hwtune.shared.util import BudgetError, HwtuneException


class OptimizerError(HwtuneException):
    pass


class UnknownObjectiveError(OptimizerError):
    def __init__(self, name: str):
        super().__init__(f"No observation reports the objective '{name}'")
        self.name = name


class ObjectiveMismatchError(OptimizerError):
    pass


class SingularModelError(OptimizerError):
    """The surrogate cannot be fitted, e.g. every observed value is identical."""


class BudgetTooSmallError(BudgetError):
    def __init__(self, budget: int, population: int):
        HwtuneException.__init__(
            self,
            f"A budget of {budget} evaluations is below two generations of "
            f"{population}",
        )
        self.budget = budget
        self.population = population


class UnknownOptimizerError(OptimizerError):
    def __init__(self, name: str, known):
        super().__init__(
            f"Unknown optimizer '{name}', choose one of {', '.join(sorted(known))}"
        )
        self.name = name
