from noncolliding.scenarios.artifacts import Check, ScenarioOutput, Table, emit_report, write_outputs
from noncolliding.scenarios.config import ScenarioConfig
from noncolliding.scenarios.dag import DAG
from noncolliding.scenarios.pipelines import SCENARIOS, run_pipeline

__all__ = [
    "DAG",
    "SCENARIOS",
    "Check",
    "ScenarioConfig",
    "ScenarioOutput",
    "Table",
    "emit_report",
    "run_pipeline",
    "write_outputs",
]
