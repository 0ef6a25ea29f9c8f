from noncolliding.simulator.oracles import exact_correlation_oracle, schur_oracle
from noncolliding.simulator.sampling import (
    TrajectoryEnsemble,
    empirical_correlation,
    sample_ensemble,
    sample_trajectory,
    substream,
)
from noncolliding.simulator.transitions import normalization_determinant, step, transition_law, vandermonde

__all__ = [
    "TrajectoryEnsemble",
    "empirical_correlation",
    "exact_correlation_oracle",
    "normalization_determinant",
    "sample_ensemble",
    "sample_trajectory",
    "schur_oracle",
    "step",
    "substream",
    "transition_law",
    "vandermonde",
]
