from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import LinAlgError, cho_factor, cho_solve, solve_triangular
from scipy.optimize import minimize
from scipy.spatial.distance import cdist
from scipy.stats import norm

from hwtune.shared.util import logger
from hwtune.space import SearchSpace, decode, encode, sample

from .base import BaseOptimizer, ObjectiveSpec, Proposal
from .exceptions import OptimizerError, SingularModelError


CANDIDATES = 1024
REFINE_STARTS = 5
LENGTH_SCALES = (0.05, 0.1, 0.2, 0.4, 0.8, 1.6)
NOISE = 1e-6
EI_MARGIN = 0.01


def matern52(a: np.ndarray, b: np.ndarray, length_scale: float) -> np.ndarray:
    r = np.sqrt(5.0) * cdist(a, b) / length_scale
    return (1.0 + r + r**2 / 3.0) * np.exp(-r)


class GaussianProcess:
    """
    Zero-mean GP on standardized targets with a Matérn-5/2 kernel. The length scale
    is picked from a fixed grid by marginal likelihood, so fits are deterministic.
    """

    def __init__(self, x: np.ndarray, y: np.ndarray):
        spread = float(np.std(y))
        if not np.isfinite(spread) or spread == 0.0:
            raise SingularModelError("All observed objective values are identical")
        self.x = x
        self.mean = float(np.mean(y))
        self.scale = spread
        self.y = (y - self.mean) / self.scale
        fits = [self.fit(length_scale) for length_scale in LENGTH_SCALES]
        fits = [fit for fit in fits if fit is not None]
        if not fits:
            raise SingularModelError("The kernel matrix is not positive definite")
        _, self.length_scale, self.factor, self.alpha = max(fits, key=lambda f: f[0])

    def fit(self, length_scale: float) -> Optional[Tuple]:
        k = matern52(self.x, self.x, length_scale) + NOISE * np.eye(len(self.x))
        try:
            factor = cho_factor(k, lower=True)
        except LinAlgError:
            return None
        alpha = cho_solve(factor, self.y)
        log_likelihood = (
            -0.5 * float(self.y @ alpha)
            - float(np.sum(np.log(np.diag(factor[0]))))
            - 0.5 * len(self.y) * np.log(2 * np.pi)
        )
        return log_likelihood, length_scale, factor, alpha

    def predict(self, points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        """Posterior mean and standard deviation, in objective units."""
        k_star = matern52(self.x, points, self.length_scale)
        mean = k_star.T @ self.alpha
        v = solve_triangular(self.factor[0], k_star, lower=True)
        variance = np.clip(1.0 - np.sum(v**2, axis=0), 1e-12, None)
        return self.mean + self.scale * mean, self.scale * np.sqrt(variance)


def expected_improvement(
    model: GaussianProcess, points: np.ndarray, best: float
) -> np.ndarray:
    mean, std = model.predict(points)
    improvement = mean - best - EI_MARGIN * model.scale
    z = improvement / std
    return improvement * norm.cdf(z) + std * norm.pdf(z)


class BayesianOptimizer(BaseOptimizer):
    """
    Random proposals for the first `init_rounds`, then the expected-improvement
    maximizer of a GP surrogate over the unit-cube encoding. The maximizer is
    searched over random candidates and refined with L-BFGS-B from the best few.
    If the surrogate cannot be fitted the round falls back to a random proposal.
    """

    name = "bayesian"

    def __init__(
        self,
        space: SearchSpace,
        seed: int = 0,
        budget: int = 10,
        init_rounds: Optional[int] = None,
        objectives: Optional[Sequence[ObjectiveSpec]] = None,
    ):
        super().__init__(space, budget, objectives)
        if init_rounds is None:
            init_rounds = max(1, min(3, budget - 1))
        elif not 1 <= init_rounds < budget:
            raise OptimizerError(
                f"init_rounds has to be within [1, {budget - 1}], got {init_rounds}"
            )
        self.seed = seed
        self.init_rounds = init_rounds
        self.rng = np.random.default_rng(seed)
        self.fallbacks: List[int] = []

    def random_proposal(self, round: int, notes: str = "") -> Proposal:
        seed = np.random.SeedSequence([self.seed, round])
        return Proposal(round, sample(self.space, seed), notes=notes)

    def make_proposal(self, round: int) -> Proposal:
        if round <= self.init_rounds:
            return self.random_proposal(round)
        x = np.array([encode(self.space, o.config) for o in self.observations])
        primary = self.primary
        y = np.array([o.score(primary) for o in self.observations])
        try:
            model = GaussianProcess(x, y)
        except SingularModelError as e:
            logger.info(f"Round {round}: {e.msg}, proposing at random instead")
            self.fallbacks.append(round)
            return self.random_proposal(round, notes=f"SingularModelError: {e.msg}")
        unit = self.maximize_ei(model, float(np.max(y)))
        return Proposal(round, decode(self.space, unit))

    def maximize_ei(self, model: GaussianProcess, best: float) -> np.ndarray:
        dims = len(self.space)
        candidates = self.rng.random((CANDIDATES, dims))
        scores = expected_improvement(model, candidates, best)
        starts = candidates[np.argsort(-scores)[:REFINE_STARTS]]
        best_x, best_score = starts[0], float(np.max(scores))
        for start in starts:
            result = minimize(
                lambda u: -expected_improvement(model, u.reshape(1, -1), best)[0],
                start,
                method="L-BFGS-B",
                bounds=[(0.0, 1.0)] * dims,
            )
            if result.success and -float(result.fun) > best_score:
                best_x, best_score = np.clip(result.x, 0.0, 1.0), -float(result.fun)
        return best_x


def bayesian_opt(
    space: SearchSpace,
    seed: int = 0,
    budget: int = 10,
    init_rounds: Optional[int] = None,
) -> BayesianOptimizer:
    return BayesianOptimizer(space, seed, budget, init_rounds)
