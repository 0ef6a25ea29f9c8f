import math

import pytest
from pydantic import ValidationError

from noncolliding import NonColliding, SearchBox
from noncolliding.exceptions import ScenarioError
from noncolliding.scenarios import DAG, SCENARIOS, ScenarioOutput, Table, run_pipeline
from noncolliding.scenarios.artifacts import format_value, table_text
from noncolliding.scenarios.pipelines import dyson_scaled_config, dyson_scaled_point

from .conftest import ROOT_FIGURE_A


def _passed(output: ScenarioOutput, criterion: int) -> bool:
    related = [c for c in output.checks if c.criterion == criterion]
    return bool(related) and all(c.passed for c in related)


def test_dag_order_and_inputs():
    dag = DAG("demo")
    calls = []

    @dag.asset
    def doubled(x):
        calls.append("doubled")
        return 2 * x

    @dag.asset
    def total(doubled, x):
        calls.append("total")
        return doubled + x

    assert dag.execute(x=3)["total"] == 9
    assert calls == ["doubled", "total"]
    assert dag.execute(x=3, doubled=10)["total"] == 13


def test_dag_missing_input():
    dag = DAG("demo")

    @dag.asset
    def total(missing):
        return missing

    with pytest.raises(ScenarioError):
        dag.execute()


def test_every_scenario_has_an_output():
    assert len(SCENARIOS) == 9
    for _, dag in SCENARIOS.values():
        assert "output" in dag.assets


def test_table_text():
    table = Table("t", ["a", "b", "c"], [[1, 0.1, True]])
    assert table_text(table) == "a,b,c\n1,0.10000000000000001,true\n"
    assert format_value(math.inf) == "inf"


def test_invalid_parameters():
    with pytest.raises(ValidationError):
        run_pipeline("sample", {"a": [2, 1], "beta": 0.5, "T": 1}, 0)
    with pytest.raises(ValidationError):
        run_pipeline("slope", {"kind": "lebesgue", "beta": 0.5, "unexpected": 1}, 0)


def test_kernel_eval_contour_shift():
    output = run_pipeline("kernel-eval", {"a": [0, 2, 5], "beta": 0.4, "queries": [[1, 1, 1, 1], [3, 2, 1, 2]]}, 0)
    (table,) = output.tables
    assert len(table.rows) == 2
    assert table.column("value")[0] == pytest.approx(table.column("value_shifted")[0], abs=1e-9)
    assert _passed(output, 7)


@pytest.mark.parametrize("parameters", [
    {"kind": "lebesgue", "beta": 0.3, "q": 0.6, "d": 0.2},
    {"kind": "staircase", "beta": 0.5, "h": 1.0},
    {"kind": "bernoulli-ic", "beta": 0.5, "p": 0.4, "alpha": 0.6},
    {"kind": "sine-ic", "beta": 0.6, "phi": 1.0, "alpha": 0.5},
    {"kind": "profile", "beta": 0.5, "profile": {"slope": 2.0, "intercept": 0.25}},
])
def test_slope_scenarios(parameters):
    output = run_pipeline("slope", parameters, 0)
    assert output.tables[0].column("kind") == [parameters["kind"]]
    assert _passed(output, 10)


def test_critical_point_scenario():
    NonColliding.init(search_box=SearchBox(re_min=-3, re_max=3, im_min=0.02, im_max=3))
    parameters = {"a": list(ROOT_FIGURE_A), "beta": 0.4, "T": 7, "level_curve_step": 0.01}
    output = run_pipeline("critical-point", parameters, 0)
    point, curves = output.tables
    assert point.column("im_zc")[0] > 0
    assert point.column("residual")[0] < 1e-10
    assert set(curves.column("kind")) == {"ascent", "descent"}


def test_sample_correlations():
    parameters = {"a": [0, 2], "beta": 0.5, "T": 2, "n": 400, "points": [[[1, 1]], [[1, 1], [2, 3]]]}
    output = run_pipeline("sample", parameters, 5)
    correlations = output.tables[1]
    assert correlations.column("kernel")[0] == pytest.approx(0.375)
    assert _passed(output, 4)


def test_poisson_scenario_table():
    parameters = {"a": [0, 2], "queries": [[1.0, 1, 1.0, 1]], "betas": [0.1, 0.2]}
    output = run_pipeline("poisson-limit", parameters, 0)
    (table,) = output.tables
    assert table.column("beta") == [0.2, 0.1]
    assert len(output.checks) == 1


def test_dyson_scaling():
    assert dyson_scaled_config((0.0, 0.0, 1.0), 0.5, 16).positions == (0, 1, 2)
    assert dyson_scaled_point(0.5, 1.0, 0.5, 16) == (8, 6)


@pytest.mark.slow
def test_tilings_limit_scenario():
    parameters = {"a": [0, 2, 5], "beta": 0.5, "query": [2, 1, 2, 0], "L_values": [40, 80, 160, 320]}
    assert _passed(run_pipeline("tilings-limit", parameters, 0), 8)


@pytest.mark.slow
def test_kernel_compare_scenario():
    parameters = {"N_values": [201, 801, 3201]}
    output = run_pipeline("kernel-compare", parameters, 0)
    assert sorted(set(output.tables[0].column("N"))) == [201, 801, 3201]
    assert _passed(output, 9)


@pytest.mark.slow
def test_random_ic_scenario_table():
    parameters = {"kind": "bernoulli", "M_values": [40, 80], "samples": 5, "dx_max": 1}
    output = run_pipeline("random-ic", parameters, 3)
    (table,) = output.tables
    assert table.column("M") == [40] * 3 + [80] * 3
    assert all(math.isfinite(v) for v in table.column("abs_err"))


@pytest.mark.slow
def test_dyson_limit_scenario():
    parameters = {
        "alpha": [0.0, 1.0],
        "beta": 0.5,
        "points": [[0.5, 0.2], [0.7, 0.6]],
        "M_values": [100, 400, 1600],
    }
    output = run_pipeline("dyson-limit", parameters, 0)
    (table,) = output.tables
    assert table.column("M") == [100, 400, 1600]
    errors = table.column("abs_err")
    assert errors[0] > errors[1] > errors[2]
    assert _passed(output, 13)
