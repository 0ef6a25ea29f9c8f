import inspect
from functools import wraps
from graphlib import TopologicalSorter
from typing import Any, Callable

from noncolliding.exceptions import ScenarioError
from noncolliding.log import logger


class DAG:
    """
    Directed Acyclic Graph (DAG) of named assets

    The inputs of an asset are the names of its parameters: other assets or values passed to
    `execute`.
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self.__tasks: dict[str, Callable] = {}
        self.__dependencies: dict[str, set[str]] = {}

    def asset(self, func: Callable) -> Callable:
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            return func(*args, **kwargs)

        self.__tasks[func.__name__] = func
        self.__dependencies[func.__name__] = set(inspect.signature(func).parameters)
        return wrapper

    @property
    def assets(self) -> list[str]:
        return list(self.__tasks)

    def build_dag(self) -> TopologicalSorter:
        return TopologicalSorter(self.__dependencies)

    def execute(self, **kwargs: Any) -> dict[str, Any]:
        """
        Run every asset in topological order.

        Args:
            **kwargs: Input values; an asset given here is not recomputed.

        Returns:
            Inputs and asset values by name.
        """
        results = kwargs.copy()
        for name in self.build_dag().static_order():
            if name in results:
                continue
            if name not in self.__tasks:
                raise ScenarioError(f"Scenario `{self.name}` is missing the input `{name}`.")
            logger.debug(f"[{self.name}] computing {name}")
            results[name] = self.__tasks[name](**{dep: results[dep] for dep in self.__dependencies[name]})
        return results
