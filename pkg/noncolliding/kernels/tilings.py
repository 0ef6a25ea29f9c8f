"""
Uniformly random lozenge tilings of the trapezoid with L cut points y on its lower side.

The tiling kernel is a double contour integral whose both integrals are finite residue sums, so
every value here is an exact rational number. The N noncolliding paths encoding a tiling are the
complement of the tracked lozenges, and their kernel is 1_{x1=x2} 1_{t1=t2} - K^tilings.
"""

import itertools
import math
from collections import defaultdict
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np
from pydantic import ValidationError

from noncolliding.core.quadrature import circle_quadrature
from noncolliding.exceptions import ContourSizeError, DomainError, InstanceTooLargeError, InvalidSpecError, TimeRangeError
from noncolliding.modeling import KernelQuery, ParticleConfig, QuadratureSettings, TilingSpec

MAX_ENUMERATION_PATHS = 8
MAX_ENUMERATION_HEIGHT = 12


def tiling_spec(N: int, L: int, y: Sequence[int]) -> TilingSpec:  # noqa: N803
    """Validated TilingSpec; malformed cut points raise InvalidSpecError."""
    try:
        return TilingSpec(N=N, L=L, y=tuple(y))
    except ValidationError as error:
        raise InvalidSpecError(str(error)) from error


def _rising(x: int, k: int) -> int:
    return math.prod(x + i for i in range(k))


def tiling_count(spec: TilingSpec) -> int:
    """
    Number of tilings, prod_{i<j} (y_j - y_i) / (j - i).

    Args:
        spec: Trapezoid and cut points.

    Returns:
        The exact tiling count.
    """
    numerator = math.prod(spec.y[j] - spec.y[i] for i, j in itertools.combinations(range(spec.L), 2))
    denominator = math.prod(math.factorial(k) for k in range(1, spec.L))
    count = Fraction(numerator, denominator)
    if count.denominator != 1:
        raise InvalidSpecError(f"Tiling count {count} of {spec} is not an integer.")
    return int(count)


def trapezoid_row(spec: TilingSpec, t: int) -> list[int]:
    """Lattice sites of level t inside the trapezoid."""
    if not 0 <= t <= spec.L:
        raise TimeRangeError(f"Level {t} outside [0, {spec.L}].")
    return list(range(-spec.N - spec.L + t + 1, 1))


def _check_times(spec: TilingSpec, q: KernelQuery) -> None:
    if not 0 <= q.t1 <= spec.L - 1 or not 1 <= q.t2 <= spec.L - 1:
        raise TimeRangeError(f"The tiling kernel needs 0 <= t1 <= {spec.L - 1} and 1 <= t2 <= {spec.L - 1}.")


def _w_residues(spec: TilingSpec, t1: int, x1: int) -> dict[int, Fraction]:
    """Residues A_m = P(m) / Q'(m) of P(w) / Q(w), P = prod (w - y_r), Q = (w - x1)_{t1+1}."""
    roots = range(x1 - t1, x1 + 1)
    return {
        m: Fraction(
            math.prod(m - y for y in spec.y),
            math.prod(m - other for other in roots if other != m),
        )
        for m in roots
    }


def tiling_w_residue_sum(spec: TilingSpec, q: KernelQuery, z: complex) -> complex:
    """Residue sum sum_m A_m / (m - z) of the w-integral at the roots of (w - x1)_{t1+1}."""
    return sum((float(a) / (m - z) for m, a in _w_residues(spec, q.t1, q.x1).items()), 0j)


def tiling_w_residue_sum_by_quadrature(
    spec: TilingSpec,
    q: KernelQuery,
    z: complex,
    radius: float = 0.25,
    settings: Optional[QuadratureSettings] = None,
) -> complex:
    """The same sum from circle quadrature around every root."""
    y = np.asarray(spec.y, dtype=float)
    roots = np.arange(q.x1 - q.t1, q.x1 + 1, dtype=float)

    def integrand(w: np.ndarray) -> np.ndarray:
        w = np.asarray(w, dtype=complex)
        numerator = np.prod(w[..., None] - y, axis=-1)
        denominator = np.prod(w[..., None] - roots, axis=-1)
        return numerator / denominator / (w - z)

    return sum((circle_quadrature(integrand, complex(m), radius, settings) for m in roots), 0j)


def k_tilings_exact(spec: TilingSpec, q: KernelQuery) -> Fraction:
    """
    Tiling kernel as an exact rational number.

    The w-contour is taken first: it encloses the z-contour, so the w-integral equals the
    polynomial part B of P(w) / (w - x1)_{t1+1} at z. The z-integral then reduces to the residues
    at the cut points y_r >= x2 (the Pochhammer symbol cancels x2 - t2 + 1, ..., x2 - 1).

    Args:
        spec: Trapezoid and cut points.
        q: Points with 0 <= t1 <= L - 1 and 1 <= t2 <= L - 1.

    Returns:
        K^tilings(t1, x1; t2, x2).
    """
    _check_times(spec, q)
    t1, x1, t2, x2 = q.t1, q.x1, q.t2, q.x2
    residues = _w_residues(spec, t1, x1)
    total = Fraction(0)
    for p in spec.y:
        if p < x2 - t2 + 1:
            continue
        pochhammer = _rising(p - x2 + 1, t2 - 1)
        if pochhammer == 0:
            continue
        others = math.prod(p - y for y in spec.y if y != p)
        if p in residues:
            derivative = Fraction(others, math.prod(p - m for m in residues if m != p))
            polynomial_part = derivative - sum((a / (p - m) for m, a in residues.items() if m != p), Fraction(0))
        else:
            polynomial_part = -sum((a / (p - m) for m, a in residues.items()), Fraction(0))
        total += Fraction(pochhammer, others) * polynomial_part

    value = Fraction(math.factorial(t1), math.factorial(t2 - 1)) * total
    if t1 < t2 and x2 <= x1:
        value -= Fraction(_rising(x1 - x2 + 1, t2 - t1 - 1), math.factorial(t2 - t1 - 1))
    return value


def k_tilings(spec: TilingSpec, q: KernelQuery) -> float:
    """Tiling kernel K^tilings(t1, x1; t2, x2)."""
    return float(k_tilings_exact(spec, q))


def k_paths_exact(spec: TilingSpec, q: KernelQuery) -> Fraction:
    """Path kernel 1_{x1=x2} 1_{t1=t2} - K^tilings at points inside the trapezoid."""
    for t, x in ((q.t1, q.x1), (q.t2, q.x2)):
        if x not in trapezoid_row(spec, t):
            raise DomainError(f"Point (t={t}, x={x}) lies outside the trapezoid.")
    return int(q.coincident) - k_tilings_exact(spec, q)


def k_paths(spec: TilingSpec, q: KernelQuery) -> float:
    """Kernel of the N noncolliding paths encoding the tiling."""
    return float(k_paths_exact(spec, q))


def scaled_spec(a: ParticleConfig, beta: float, L: int) -> tuple[TilingSpec, int]:  # noqa: N803
    """
    Trapezoid whose paths start from a - floor(beta L).

    Args:
        a: Initial configuration of the walk.
        beta: Jump probability.
        L: Height of the trapezoid.

    Returns:
        The tiling spec and the shift floor(beta L).
    """
    shift = math.floor(beta * L)
    n = a.n
    starts = [p - shift for p in a.positions]
    if not (-n - L + 1 < starts[0] and starts[-1] < 0):
        raise ContourSizeError(f"L={L} is too small to hold the configuration shifted by {shift}.")
    cut = tuple(sorted(set(range(-n - L + 1, 1)) - set(starts)))
    return tiling_spec(n, L, cut), shift


def k_paths_scaled(a: ParticleConfig, beta: float, L: int, q: KernelQuery) -> float:  # noqa: N803
    """
    Path kernel of the trapezoid of height L at the query shifted by floor(beta L).

    As L grows this converges to the Bernoulli kernel of the walk started from a.

    Args:
        a: Initial configuration.
        beta: Jump probability.
        L: Height of the trapezoid.
        q: Query in walk coordinates.

    Returns:
        K^paths_L(t1, x1 - floor(beta L); t2, x2 - floor(beta L)).
    """
    spec, shift = scaled_spec(a, beta, L)
    return k_paths(spec, q.shifted(-shift))


@dataclass(frozen=True)
class TilingEnumeration:
    """
    Brute-force description of all tilings.

    Attributes:
        count: Number of tilings.
        lozenge_density: Exact probability of a tracked lozenge at each (t, x) inside the trapezoid.
    """
    count: int
    lozenge_density: dict[tuple[int, int], Fraction]


def _moves(config: tuple[int, ...], lower: Sequence[int], upper: Sequence[int]) -> list[tuple[int, ...]]:
    moves = []
    for jumps in itertools.product((0, 1), repeat=len(config)):
        new = tuple(x + e for x, e in zip(config, jumps))
        if all(b < c for b, c in zip(new, new[1:])) and all(lo <= x <= hi for x, lo, hi in zip(new, lower, upper)):
            moves.append(new)
    return moves


def tiling_enumeration(spec: TilingSpec) -> TilingEnumeration:
    """
    Enumerate the noncolliding paths from the uncut sites of the lower side to -N+1, ..., 0.

    Args:
        spec: Small trapezoid.

    Returns:
        Tiling count and lozenge densities on every level.
    """
    if spec.N > MAX_ENUMERATION_PATHS or spec.L > MAX_ENUMERATION_HEIGHT:
        raise InstanceTooLargeError(f"Enumeration is limited to N <= {MAX_ENUMERATION_PATHS}, L <= {MAX_ENUMERATION_HEIGHT}.")
    ends = tuple(range(-spec.N + 1, 1))
    forward: list[dict[tuple[int, ...], int]] = [{spec.path_starts: 1}]
    for t in range(spec.L):
        remaining = spec.L - t - 1
        lower = [e - remaining for e in ends]
        layer: dict[tuple[int, ...], int] = defaultdict(int)
        for config, ways in forward[-1].items():
            for new in _moves(config, lower, ends):
                layer[new] += ways
        forward.append(dict(layer))

    backward: list[dict[tuple[int, ...], int]] = [dict() for _ in range(spec.L + 1)]
    backward[spec.L] = {ends: 1}
    for t in range(spec.L - 1, -1, -1):
        remaining = spec.L - t - 1
        lower = [e - remaining for e in ends]
        for config in forward[t]:
            backward[t][config] = sum(backward[t + 1].get(new, 0) for new in _moves(config, lower, ends))

    count = forward[spec.L].get(ends, 0)
    density: dict[tuple[int, int], Fraction] = {}
    for t in range(spec.L + 1):
        occupied: dict[int, int] = defaultdict(int)
        for config, ways in forward[t].items():
            weight = ways * backward[t].get(config, 0)
            for x in config:
                occupied[x] += weight
        for x in trapezoid_row(spec, t):
            density[(t, x)] = 1 - Fraction(occupied[x], count)
    return TilingEnumeration(count=count, lozenge_density=density)
