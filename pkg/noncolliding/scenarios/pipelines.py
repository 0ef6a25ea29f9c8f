"""
Scenario pipelines. Each scenario is a DAG of assets fed with `params` (its validated parameters)
and `seed`; its `output` asset collects the tables and acceptance checks.
"""

import math
from collections.abc import Sequence
from typing import Any, Callable

import numpy as np
from pydantic import BaseModel
from tqdm import tqdm

from noncolliding._noncolliding import NonColliding
from noncolliding.action.critical_point import find_critical_point
from noncolliding.action.level_curves import level_curves
from noncolliding.action.slopes import (
    limit_action_prime,
    slope_bernoulli_ic,
    slope_lebesgue,
    slope_sine_ic,
    slope_staircase,
    solve_limit_slope,
    staircase_residual,
)
from noncolliding.initial_data.drift import profile_density
from noncolliding.initial_data.profiles import ProfileFunction, from_profile
from noncolliding.initial_data.random_ic import bernoulli_density, bernoulli_window, sine_density, sine_window
from noncolliding.kernels.bernoulli import bernoulli_correlation, k_bernoulli, k_bernoulli_shifted_contour, kernel_grid
from noncolliding.kernels.dyson import k_dbm
from noncolliding.kernels.poisson import k_poisson
from noncolliding.kernels.sine import extended_sine
from noncolliding.kernels.tilings import k_paths_scaled
from noncolliding.log import logger
from noncolliding.modeling import (
    ComplexSlope,
    CriticalPoint,
    DensityProfile,
    DysonQuery,
    KernelQuery,
    ParticleConfig,
    RealTimeQuery,
    SineQuery,
    SpaceTimePoint,
    WalkModel,
    WindowSpec,
)
from noncolliding.scenarios.artifacts import Check, ScenarioOutput, Table
from noncolliding.scenarios.config import (
    CriticalPointParameters,
    DysonLimitParameters,
    KernelCompareParameters,
    KernelEvalParameters,
    PoissonLimitParameters,
    RandomICParameters,
    SampleParameters,
    SlopeParameters,
    TilingsLimitParameters,
)
from noncolliding.scenarios.dag import DAG
from noncolliding.simulator.sampling import TrajectoryEnsemble, empirical_correlation, sample_ensemble

CONTOUR_SHIFT_TOLERANCE = 1e-9
SLOPE_TOLERANCE = 1e-10
TILING_LIMIT_TOLERANCE = 1e-2
MC_SIGMAS = 4.0


def _strictly_decreasing(values: Sequence[float]) -> bool:
    return all(b < a for a, b in zip(values, values[1:]))


def _model(params: Any, T: int) -> WalkModel:  # noqa: N803
    return WalkModel(a=ParticleConfig(positions=params.a), beta=params.beta, T=T)


# sample

sample_dag = DAG("sample")


@sample_dag.asset
def ensemble(params: SampleParameters, seed: int) -> TrajectoryEnsemble:
    return sample_ensemble(_model(params, params.T), seed, params.n, threads=params.threads, progress=True)


@sample_dag.asset
def output(params: SampleParameters, ensemble: TrajectoryEnsemble) -> ScenarioOutput:
    n_particles = ensemble.model.N
    trajectories = Table("trajectories", ["trajectory", "t", *[f"x{i + 1}" for i in range(n_particles)]])
    for i in range(ensemble.n):
        for t, row in enumerate(ensemble.positions[i]):
            trajectories.rows.append([i, t, *[int(x) for x in row]])

    result = ScenarioOutput(tables=[trajectories])
    if params.points:
        correlations = Table("correlations", ["query", "mean", "stderr", "kernel", "abs_err", "z_score"])
        for k, query in enumerate(params.points):
            points = [SpaceTimePoint(t=t, x=x) for t, x in query]
            estimate = empirical_correlation(ensemble, points)
            exact = bernoulli_correlation(ensemble.model, points)
            error = abs(estimate.mean - exact)
            z_score = error / estimate.stderr if estimate.stderr > 0 else (0.0 if error < 1e-12 else math.inf)
            correlations.rows.append([k, estimate.mean, estimate.stderr, exact, error, z_score])
            result.checks.append(Check(
                criterion=4, name=f"query {k} z-score", value=z_score, tolerance=MC_SIGMAS, passed=z_score <= MC_SIGMAS
            ))
        result.tables.append(correlations)
    return result


# kernel-eval

kernel_eval_dag = DAG("kernel-eval")


@kernel_eval_dag.asset
def kernel_table(params: KernelEvalParameters) -> Table:
    horizon = max(max(q[0], q[2]) for q in params.queries)
    model = _model(params, max(horizon, 1))
    table = Table(
        "kernel",
        ["t1", "x1", "t2", "x2", "value", "value_shifted", "abs_err", "method", "condition", "error_estimate"],
    )
    for t1, x1, t2, x2 in params.queries:
        q = KernelQuery.at(t1, x1, t2, x2)
        result = k_bernoulli(model, q, contour=params.contour)
        shifted = k_bernoulli_shifted_contour(model, q, contour=params.contour)
        table.rows.append([
            t1, x1, t2, x2, result.value, shifted.value, abs(result.value - shifted.value),
            result.method, result.condition, result.error_estimate,
        ])
    return table


@kernel_eval_dag.asset
def output(kernel_table: Table) -> ScenarioOutput:  # noqa: F811
    worst = max((float(v) for v in kernel_table.column("abs_err")), default=0.0)
    check = Check(
        criterion=7, name="contour shift", value=worst, tolerance=CONTOUR_SHIFT_TOLERANCE,
        passed=worst <= CONTOUR_SHIFT_TOLERANCE,
    )
    return ScenarioOutput(tables=[kernel_table], checks=[check])


# kernel-compare

kernel_compare_dag = DAG("kernel-compare")


@kernel_compare_dag.asset
def profile(params: KernelCompareParameters) -> ProfileFunction:
    return ProfileFunction.linear(params.profile.slope, params.profile.intercept)


@kernel_compare_dag.asset
def comparisons(params: KernelCompareParameters, profile: ProfileFunction) -> Table:
    table = Table("kernel_compare", ["N", "t1", "t2", "dt", "dx", "k_finite", "k_sine_re", "k_sine_im", "abs_err"])
    density = profile_density(profile)
    for requested in params.N_values:
        n = requested if requested % 2 else requested + 1
        if n != requested:
            logger.info(f"Profile initial data needs an odd N, using N={n} instead of {requested}.")
        model = WalkModel(a=from_profile(profile, n), beta=params.beta, T=max(1, math.floor(n**params.eta)))
        slope = find_critical_point(model, profile=density).slope
        offsets = range(-params.dt_max, params.dt_max + 1)
        for row in kernel_grid(model, slope, offsets, range(-params.dx_max, params.dx_max + 1)):
            table.rows.append([
                n, row.t1, row.t2, row.dt, row.dx, row.k_finite, row.k_sine.real, row.k_sine.imag, row.abs_err,
            ])
    return table


@kernel_compare_dag.asset
def output(params: KernelCompareParameters, comparisons: Table) -> ScenarioOutput:  # noqa: F811
    gaps = []
    for n in dict.fromkeys(comparisons.column("N")):
        gaps.append(max(row[-1] for row in comparisons.rows if row[0] == n))
    finite = all(math.isfinite(v) for v in comparisons.column("abs_err"))
    checks = [Check(criterion=9, name="finite abs_err", value=float(finite), tolerance=1.0, passed=finite)]
    if len(gaps) > 1:
        checks.append(Check(
            criterion=9, name="universality gap decreases", value=gaps[-1], tolerance=gaps[0],
            passed=_strictly_decreasing(gaps),
        ))
    return ScenarioOutput(tables=[comparisons], checks=checks)


# critical-point

critical_point_dag = DAG("critical-point")


@critical_point_dag.asset
def walk(params: CriticalPointParameters) -> WalkModel:
    return _model(params, params.T)


@critical_point_dag.asset
def critical_point(walk: WalkModel) -> CriticalPoint:
    return find_critical_point(walk)


@critical_point_dag.asset
def output(params: CriticalPointParameters, walk: WalkModel, critical_point: CriticalPoint) -> ScenarioOutput:  # noqa: F811
    slope = critical_point.slope
    point = Table("critical_point", ["re_zc", "im_zc", "residual", "re_u", "im_u", "q"])
    point.rows.append([
        critical_point.z_c.real, critical_point.z_c.imag, critical_point.residual, slope.u.real, slope.u.imag, slope.q,
    ])
    curves = Table("level_curves", ["curve", "kind", "exit", "re", "im"])
    box = NonColliding.config.search_box
    for k, curve in enumerate(level_curves(walk, critical_point, box, step=params.level_curve_step)):
        for z in curve.points:
            curves.rows.append([k, curve.kind, curve.exit, z.real, z.imag])
    return ScenarioOutput(tables=[point, curves])


# slope

slope_dag = DAG("slope")


@slope_dag.asset
def slopes(params: SlopeParameters) -> tuple[DensityProfile, ComplexSlope, ComplexSlope]:
    if params.kind == "lebesgue":
        density = DensityProfile.lebesgue(params.q, params.d)
        closed, _ = slope_lebesgue(params.beta, params.d, params.q)
    elif params.kind == "staircase":
        density = DensityProfile.staircase(params.h)
        closed = slope_staircase(params.beta, params.h)
    elif params.kind == "bernoulli-ic":
        density = bernoulli_density(params.p, params.alpha)
        closed = slope_bernoulli_ic(params.beta, params.p, params.alpha)
    elif params.kind == "sine-ic":
        density = sine_density(params.phi, params.alpha)
        closed = slope_sine_ic(params.beta, params.phi, params.alpha)
    else:
        density = profile_density(ProfileFunction.linear(params.profile.slope, params.profile.intercept))
        closed, _ = slope_lebesgue(params.beta, density.drift, density.left_tail_rho)
    return density, solve_limit_slope(density, params.beta), closed


@slope_dag.asset
def output(params: SlopeParameters, slopes: tuple[DensityProfile, ComplexSlope, ComplexSlope]) -> ScenarioOutput:  # noqa: F811
    density, solved, closed = slopes
    residual = abs(limit_action_prime(density, params.beta, density.drift_cutoff, solved.z))
    if params.kind == "staircase":
        residual = max(residual, staircase_residual(params.beta, params.h, solved.u))
    error = abs(solved.u - closed.u)
    table = Table("slope", ["kind", "re_u", "im_u", "q", "residual", "closed_re_u", "closed_im_u", "abs_err"])
    table.rows.append([params.kind, solved.u.real, solved.u.imag, solved.q, residual, closed.u.real, closed.u.imag, error])
    checks = [
        Check(criterion=10, name="slope residual", value=residual, tolerance=SLOPE_TOLERANCE, passed=residual < SLOPE_TOLERANCE),
        Check(criterion=10, name="closed form agreement", value=error, tolerance=1e-8, passed=error <= 1e-8),
    ]
    return ScenarioOutput(tables=[table], checks=checks)


# tilings-limit

tilings_limit_dag = DAG("tilings-limit")


@tilings_limit_dag.asset
def reference(params: TilingsLimitParameters) -> float:
    t1, x1, t2, x2 = params.query
    return k_bernoulli(_model(params, max(t1, t2)), KernelQuery.at(t1, x1, t2, x2)).value


@tilings_limit_dag.asset
def output(params: TilingsLimitParameters, reference: float) -> ScenarioOutput:  # noqa: F811
    table = Table("tilings_limit", ["L", "k_paths", "k_bernoulli", "abs_err"])
    a = ParticleConfig(positions=params.a)
    q = KernelQuery.at(*params.query)
    for length in params.L_values:
        value = k_paths_scaled(a, params.beta, length, q)
        table.rows.append([length, value, reference, abs(value - reference)])
    errors = [float(v) for v in table.column("abs_err")]
    checks = [
        Check(criterion=8, name="error decreases in L", value=errors[-1], tolerance=errors[0],
              passed=_strictly_decreasing(errors)),
        Check(criterion=8, name="error at largest L", value=errors[-1], tolerance=TILING_LIMIT_TOLERANCE,
              passed=errors[-1] < TILING_LIMIT_TOLERANCE),
    ]
    return ScenarioOutput(tables=[table], checks=checks)


# poisson-limit

poisson_limit_dag = DAG("poisson-limit")


@poisson_limit_dag.asset
def output(params: PoissonLimitParameters) -> ScenarioOutput:  # noqa: F811
    a = ParticleConfig(positions=params.a)
    table = Table("poisson_limit", ["beta", "tau1", "x1", "tau2", "x2", "k_poisson", "k_bernoulli_gauged", "abs_err"])
    worst = []
    for beta in sorted(params.betas, reverse=True):
        errors = []
        for tau1, x1, tau2, x2 in params.queries:
            limit = k_poisson(a, RealTimeQuery(tau1=tau1, x1=x1, tau2=tau2, x2=x2))
            t1, t2 = max(1, math.floor(tau1 / beta)), max(1, math.floor(tau2 / beta))
            model = WalkModel(a=a, beta=beta, T=max(t1, t2))
            gauged = (-beta) ** (x1 - x2) * k_bernoulli(model, KernelQuery.at(t1, x1, t2, x2)).value
            errors.append(abs(gauged - limit))
            table.rows.append([beta, tau1, x1, tau2, x2, limit, gauged, errors[-1]])
        worst.append(max(errors))
    check = Check(
        criterion=12, name="error decreases as beta shrinks", value=worst[-1], tolerance=worst[0],
        passed=len(worst) < 2 or _strictly_decreasing(worst),
    )
    return ScenarioOutput(tables=[table], checks=[check])


# dyson-limit


def dyson_scaled_config(alpha: Sequence[float], beta: float, M: int) -> ParticleConfig:  # noqa: N803
    """a_i = floor(alpha_i sqrt(beta (1 - beta) M)), bumped by one where eigenvalues coincide."""
    scale = math.sqrt(beta * (1 - beta) * M)
    positions: list[int] = []
    for value in sorted(alpha):
        site = math.floor(value * scale)
        positions.append(site if not positions or site > positions[-1] else positions[-1] + 1)
    return ParticleConfig(positions=tuple(positions))


def dyson_scaled_point(tau: float, xi: float, beta: float, M: int) -> tuple[int, int]:  # noqa: N803
    """(floor(M tau), floor(beta M tau + xi sqrt(beta (1 - beta) M)))."""
    return math.floor(M * tau), math.floor(beta * M * tau + xi * math.sqrt(beta * (1 - beta) * M))


def _det2(kernel: Callable[[int, int], float]) -> float:
    return kernel(0, 0) * kernel(1, 1) - kernel(0, 1) * kernel(1, 0)


dyson_limit_dag = DAG("dyson-limit")


@dyson_limit_dag.asset
def limit_determinant(params: DysonLimitParameters) -> float:
    points = params.points

    def kernel(i: int, j: int) -> float:
        (tau1, xi1), (tau2, xi2) = points[i], points[j]
        return k_dbm(params.alpha, DysonQuery(tau1=tau1, xi1=xi1, tau2=tau2, xi2=xi2))

    return _det2(kernel)


@dyson_limit_dag.asset
def output(params: DysonLimitParameters, limit_determinant: float) -> ScenarioOutput:  # noqa: F811
    table = Table("dyson_limit", ["M", "det_bernoulli", "det_dbm", "abs_err"])
    beta = params.beta
    for m in params.M_values:
        a = dyson_scaled_config(params.alpha, beta, m)
        lattice = [dyson_scaled_point(tau, xi, beta, m) for tau, xi in params.points]
        model = WalkModel(a=a, beta=beta, T=max(1, max(t for t, _ in lattice)))
        scale = math.sqrt(m * beta * (1 - beta))

        def kernel(i: int, j: int) -> float:
            (t1, x1), (t2, x2) = lattice[i], lattice[j]
            return scale * k_bernoulli(model, KernelQuery.at(t1, x1, t2, x2)).value

        det = _det2(kernel)
        table.rows.append([m, det, limit_determinant, abs(det - limit_determinant)])
    errors = [float(v) for v in table.column("abs_err")]
    check = Check(
        criterion=13, name="determinant error decreases in M", value=errors[-1], tolerance=errors[0],
        passed=len(errors) < 2 or _strictly_decreasing(errors),
    )
    return ScenarioOutput(tables=[table], checks=[check])


# random-ic

random_ic_dag = DAG("random-ic")


@random_ic_dag.asset
def limit_slope(params: RandomICParameters) -> ComplexSlope:
    if params.kind == "bernoulli":
        return slope_bernoulli_ic(params.beta, params.p, params.alpha)
    return slope_sine_ic(params.beta, params.phi, params.alpha)


@random_ic_dag.asset
def output(params: RandomICParameters, seed: int, limit_slope: ComplexSlope) -> ScenarioOutput:  # noqa: F811
    table = Table("random_ic", ["M", "dx", "k_average", "k_sine_re", "k_sine_im", "abs_err"])
    offsets = list(range(-params.dx_max, params.dx_max + 1))
    limit = [extended_sine(limit_slope, SineQuery(t=0, x=dx, s=0, y=0)) for dx in offsets]
    worst = []
    for m in params.M_values:
        window = WindowSpec(M=m, alpha=params.alpha)
        horizon = max(1, math.floor(m**params.eta))
        totals = np.zeros(len(offsets))
        for s in tqdm(range(params.samples), desc=f"M={m}", disable=None):
            sample_seed = (seed + s) % 2**64
            if params.kind == "bernoulli":
                a = bernoulli_window(window, params.p, sample_seed)
            else:
                a = sine_window(window, params.phi, sample_seed)
            model = WalkModel(a=a, beta=params.beta, T=horizon)
            totals += [k_bernoulli(model, KernelQuery.at(horizon, dx, horizon, 0)).value for dx in offsets]
        averages = totals / params.samples
        errors = [abs(avg - lim) for avg, lim in zip(averages, limit)]
        worst.append(max(errors))
        for dx, avg, lim, err in zip(offsets, averages, limit, errors):
            table.rows.append([m, dx, float(avg), lim.real, lim.imag, err])
    check = Check(
        criterion=15, name="averaged kernel error decreases in M", value=worst[-1], tolerance=worst[0],
        passed=len(worst) < 2 or _strictly_decreasing(worst),
    )
    return ScenarioOutput(tables=[table], checks=[check])


SCENARIOS: dict[str, tuple[type[BaseModel], DAG]] = {
    "sample": (SampleParameters, sample_dag),
    "kernel-eval": (KernelEvalParameters, kernel_eval_dag),
    "kernel-compare": (KernelCompareParameters, kernel_compare_dag),
    "critical-point": (CriticalPointParameters, critical_point_dag),
    "slope": (SlopeParameters, slope_dag),
    "tilings-limit": (TilingsLimitParameters, tilings_limit_dag),
    "poisson-limit": (PoissonLimitParameters, poisson_limit_dag),
    "dyson-limit": (DysonLimitParameters, dyson_limit_dag),
    "random-ic": (RandomICParameters, random_ic_dag),
}


def run_pipeline(scenario: str, parameters: dict[str, Any], seed: int) -> ScenarioOutput:
    """
    Validate the parameters of a scenario and execute its DAG.

    Args:
        scenario: Scenario name.
        parameters: Raw parameters.
        seed: Run seed.

    Returns:
        The tables and checks of the run.
    """
    model, dag = SCENARIOS[scenario]
    params = model.model_validate(parameters)
    return dag.execute(params=params, seed=seed)["output"]
