import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
from tqdm import tqdm

from noncolliding._noncolliding import NonColliding
from noncolliding.exceptions import DomainError, TimeRangeError
from noncolliding.log import logger
from noncolliding.modeling import EmpiricalEstimate, ParticleConfig, SpaceTimePoint, WalkModel
from noncolliding.simulator.transitions import as_fraction, step_positions

MAX_SEED = 2**64 - 1


def _check_seed(seed: int) -> None:
    if not 0 <= seed <= MAX_SEED:
        raise DomainError(f"seed must be an unsigned 64-bit integer, got {seed}.")


def substream(seed: int, index: int) -> np.random.Generator:
    """
    Independent generator of trajectory `index`: a Philox counter-based generator keyed by seed XOR index.

    Args:
        seed: Unsigned 64-bit run seed.
        index: Trajectory index.

    Returns:
        A numpy Generator.
    """
    _check_seed(seed)
    if index < 0:
        raise DomainError(f"Trajectory index must be nonnegative, got {index}.")
    return np.random.Generator(np.random.Philox(key=seed ^ index))


def _trajectory(model: WalkModel, rng: np.random.Generator) -> np.ndarray:
    beta = as_fraction(model.rational_beta)
    path = np.empty((model.T + 1, model.N), dtype=np.int64)
    positions = model.a.positions
    path[0] = positions
    for t in range(1, model.T + 1):
        positions = step_positions(positions, beta, rng)
        path[t] = positions
    return path


def sample_trajectory(model: WalkModel, seed: int) -> list[ParticleConfig]:
    """
    Trajectory X(0), ..., X(T) started from model.a; the same as trajectory 0 of an ensemble.

    Args:
        model: Walk model.
        seed: Unsigned 64-bit seed.

    Returns:
        T + 1 configurations.
    """
    path = _trajectory(model, substream(seed, 0))
    return [ParticleConfig(positions=tuple(int(x) for x in row)) for row in path]


@dataclass(frozen=True)
class TrajectoryEnsemble:
    """
    Independent trajectories of one walk model.

    Attributes:
        model: Walk model.
        seed: Run seed; trajectory i uses substream(seed, i).
        positions: Array of shape (n, T + 1, N).
    """
    model: WalkModel
    seed: int
    positions: np.ndarray

    @property
    def n(self) -> int:
        return int(self.positions.shape[0])

    def trajectory(self, i: int) -> list[ParticleConfig]:
        return [ParticleConfig(positions=tuple(int(x) for x in row)) for row in self.positions[i]]


def sample_ensemble(
    model: WalkModel,
    seed: int,
    n: int,
    threads: Optional[int] = None,
    progress: bool = False,
) -> TrajectoryEnsemble:
    """
    Sample n trajectories, trajectory i from substream(seed, i).

    The result does not depend on the number of threads.

    Args:
        model: Walk model.
        seed: Unsigned 64-bit seed.
        n: Number of trajectories.
        threads: Worker threads (default `NonColliding.config.threads`).
        progress: Show a tqdm progress bar.

    Returns:
        The ensemble.
    """
    if n < 1:
        raise DomainError("An ensemble needs at least one trajectory.")
    _check_seed(seed)
    threads = threads or NonColliding.config.threads
    logger.debug(f"Sampling {n} trajectories of N={model.N}, T={model.T} on {threads} thread(s).")
    positions = np.empty((n, model.T + 1, model.N), dtype=np.int64)

    def run(i: int) -> None:
        positions[i] = _trajectory(model, substream(seed, i))

    bar = tqdm(total=n, disable=not progress, desc="trajectories")
    if threads == 1:
        for i in range(n):
            run(i)
            bar.update()
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            for _ in pool.map(run, range(n)):
                bar.update()
    bar.close()
    return TrajectoryEnsemble(model=model, seed=seed, positions=positions)


def empirical_correlation(ensemble: TrajectoryEnsemble, points: Sequence[SpaceTimePoint]) -> EmpiricalEstimate:
    """
    Fraction of trajectories with a particle at every (t_i, x_i).

    Args:
        ensemble: Sampled trajectories.
        points: Space-time points with 0 <= t <= T.

    Returns:
        Mean and standard error sqrt(mean (1 - mean) / n).
    """
    horizon = ensemble.model.T
    for p in points:
        if not 0 <= p.t <= horizon:
            raise TimeRangeError(f"Point at t={p.t} outside the sampled horizon [0, {horizon}].")
    n = ensemble.n
    if not points:
        return EmpiricalEstimate(mean=1.0, stderr=0.0, n=n)
    hits = np.ones(n, dtype=bool)
    for p in points:
        hits &= np.any(ensemble.positions[:, p.t, :] == p.x, axis=1)
    mean = float(hits.mean())
    return EmpiricalEstimate(mean=mean, stderr=math.sqrt(mean * (1 - mean) / n), n=n)
