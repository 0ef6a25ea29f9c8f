from pathlib import Path
from typing import Union

from noncolliding.exceptions import MonotonicityError
from noncolliding.modeling import ParticleConfig


def format_config(a: ParticleConfig) -> str:
    return "".join(f"{x}\n" for x in a.positions)


def parse_config(text: str) -> ParticleConfig:
    """Configuration from one integer per line; blank lines are skipped."""
    positions = tuple(int(line) for line in text.splitlines() if line.strip())
    if not positions or any(b <= a for a, b in zip(positions, positions[1:])):
        raise MonotonicityError("A configuration file lists strictly increasing integers, at least one.")
    return ParticleConfig(positions=positions)


def write_config(a: ParticleConfig, path: Union[str, Path]) -> None:
    Path(path).write_text(format_config(a))


def read_config(path: Union[str, Path]) -> ParticleConfig:
    return parse_config(Path(path).read_text())
