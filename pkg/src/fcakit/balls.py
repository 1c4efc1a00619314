"""Closed balls under reverse inclusion, and a certified fixed-point engine.

A ball ``[center, radius]`` stands for a region of remaining uncertainty, so
the order is reverse inclusion: a ball is below another when it is at least
as wide. A contraction with factor ``k`` lifts to balls by mapping the center
and shrinking the radius by ``k``; iterating the lift from a seed ball yields
an ascending chain whose least upper bound is the (degenerate ball at the)
fixed point. Convergence is certified a priori: after ``n`` steps the true
distance to the fixed point is at most ``k**n * r0 / (1 - k)`` where ``r0``
is the first step length. Radii are computed as ``k**n * r0`` directly, not
by repeated multiplication, so they carry a single rounding each.
"""

from __future__ import annotations

import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass

__all__ = [
    "Vector",
    "norm",
    "Ball",
    "BallSequence",
    "ContractionSpec",
    "ball_leq",
    "lift_map",
    "estimate_lipschitz",
    "FixedPointResult",
    "ConvergenceError",
    "iterate_fixed_point",
    "is_cauchy",
    "lub_of_ascending",
]

Vector = tuple[float, ...]


def as_vector(components: Iterable[float]) -> Vector:
    """Normalize to a non-empty tuple of finite floats."""
    vec = tuple(float(c) for c in components)
    if not vec:
        raise ValueError("vector must have at least one component")
    for c in vec:
        if not math.isfinite(c):
            raise ValueError(f"non-finite component {c!r}")
    return vec


def norm(v: Iterable[float], kind: str = "max") -> float:
    """Vector norm. ``kind`` selects ``max`` (default), ``euclid``, or ``sum``."""
    vec = as_vector(v)
    if kind == "max":
        return max(abs(c) for c in vec)
    if kind == "euclid":
        return math.hypot(*vec)
    if kind == "sum":
        return sum(abs(c) for c in vec)
    raise ValueError(f"unknown norm kind {kind!r}")


def _distance(a: Vector, b: Vector) -> float:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} vs {len(b)}")
    return max(abs(x - y) for x, y in zip(a, b))


@dataclass(frozen=True)
class Ball:
    """Closed ball ``[center, radius]`` in the max norm, radius >= 0."""

    center: Vector
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        radius = float(self.radius)
        if not math.isfinite(radius) or radius < 0.0:
            raise ValueError(f"radius must be finite and non-negative, got {radius!r}")
        object.__setattr__(self, "radius", radius)

    @property
    def dimension(self) -> int:
        return len(self.center)


def ball_leq(b1: Ball, b2: Ball) -> bool:
    """Reverse-inclusion order on radii: ``b1 <= b2`` iff ``b1`` is at least as wide."""
    if b1.dimension != b2.dimension:
        raise ValueError(
            f"dimension mismatch: {b1.dimension} vs {b2.dimension}"
        )
    return b1.radius >= b2.radius


@dataclass(frozen=True)
class BallSequence:
    """Finite sequence of balls of one common dimension."""

    items: tuple[Ball, ...]

    def __post_init__(self):
        items = tuple(self.items)
        if not items:
            raise ValueError("sequence must be non-empty")
        dim = items[0].dimension
        for b in items:
            if b.dimension != dim:
                raise ValueError("all balls must share one dimension")
        object.__setattr__(self, "items", items)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i: int) -> Ball:
        return self.items[i]

    @property
    def radii(self) -> tuple[float, ...]:
        return tuple(b.radius for b in self.items)


@dataclass(frozen=True)
class ContractionSpec:
    """A self-map together with a contraction factor ``k`` in (0, 1).

    ``k`` must genuinely bound the map's stretch; the engine trusts it when
    certifying error bounds. Use :func:`estimate_lipschitz` to sanity-check.
    """

    map: Callable[[Vector], Vector]
    k: float

    def __post_init__(self):
        k = float(self.k)
        if not math.isfinite(k) or not 0.0 < k < 1.0:
            raise ValueError(f"contraction factor must lie in (0, 1), got {k!r}")
        object.__setattr__(self, "k", k)


def _apply(spec: ContractionSpec, x: Vector) -> Vector:
    y = as_vector(spec.map(x))
    if len(y) != len(x):
        raise ValueError(
            f"map changed dimension from {len(x)} to {len(y)}"
        )
    return y


def lift_map(spec: ContractionSpec) -> Callable[[Ball], Ball]:
    """Lift a point contraction to balls: map the center, shrink the radius by ``k``."""

    def lifted(ball: Ball) -> Ball:
        return Ball(_apply(spec, ball.center), spec.k * ball.radius)

    return lifted


def estimate_lipschitz(
    map: Callable[[Vector], Vector],
    samples: Iterable[tuple[Iterable[float], Iterable[float]]],
) -> float:
    """Largest observed stretch ``|map(x) - map(y)| / |x - y|`` over sample pairs.

    Pairs with coincident endpoints are skipped; if every pair is degenerate
    the estimate is undefined and a ValueError is raised. A sampled estimate
    only ever underestimates the true factor.
    """
    best = None
    for raw_x, raw_y in samples:
        x, y = as_vector(raw_x), as_vector(raw_y)
        gap = _distance(x, y)
        if gap == 0.0:
            continue
        stretch = _distance(as_vector(map(x)), as_vector(map(y))) / gap
        if best is None or stretch > best:
            best = stretch
    if best is None:
        raise ValueError("no usable sample pairs: all endpoints coincide")
    return best


@dataclass(frozen=True)
class FixedPointResult:
    """Outcome of a certified iteration.

    ``fixed_point`` is the accepted iterate, ``steps`` how many times the map
    was applied, ``certified_bound`` the a-priori distance bound at
    acceptance, and ``iterates`` the ascending ball chain
    ``[x_n, k**n * r0]`` for n = 0..steps.
    """

    fixed_point: Vector
    steps: int
    certified_bound: float
    iterates: BallSequence


class ConvergenceError(RuntimeError):
    """Iteration budget exhausted before the certified bound reached tolerance."""

    def __init__(self, steps: int, last_bound: float, tol: float):
        self.steps = steps
        self.last_bound = last_bound
        self.tol = tol
        super().__init__(
            f"no convergence within {steps} steps: "
            f"certified bound {last_bound:.6e} exceeds tolerance {tol:.6e}"
        )


def iterate_fixed_point(
    spec: ContractionSpec,
    x0: Iterable[float],
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> FixedPointResult:
    """Iterate ``spec.map`` from ``x0`` until the certified bound is at most ``tol``.

    The bound after ``n`` applications is ``k**n * r0 / (1 - k)`` with
    ``r0 = |map(x0) - x0|``; it is sound for any genuine ``k``-contraction
    regardless of the iterates seen. A seed already at the fixed point is
    accepted at step 1 with bound 0. Raises :class:`ConvergenceError` when
    ``max_iter`` applications do not reach the tolerance.
    """
    x0 = as_vector(x0)
    tol = float(tol)
    if not math.isfinite(tol) or tol <= 0.0:
        raise ValueError(f"tol must be positive and finite, got {tol!r}")
    if max_iter < 1:
        raise ValueError(f"max_iter must be at least 1, got {max_iter}")
    k = spec.k
    x = _apply(spec, x0)
    r0 = _distance(x, x0)
    coeff = r0 / (1.0 - k)
    balls = [Ball(x0, r0)]
    n = 1
    while True:
        radius = k**n * r0
        bound = k**n * coeff
        balls.append(Ball(x, radius))
        if bound <= tol:
            return FixedPointResult(x, n, bound, BallSequence(tuple(balls)))
        if n >= max_iter:
            raise ConvergenceError(n, bound, tol)
        x = _apply(spec, x)
        n += 1


def is_cauchy(seq: BallSequence, tol: float) -> bool:
    """True iff radii never increase and the centers stabilize within ``tol``.

    Stabilization means some suffix of at least two centers is pairwise
    within ``tol`` in the max norm; a single-ball sequence is vacuously
    Cauchy.
    """
    tol = float(tol)
    if not math.isfinite(tol) or tol < 0.0:
        raise ValueError(f"tol must be non-negative and finite, got {tol!r}")
    radii = seq.radii
    if any(radii[i] < radii[i + 1] for i in range(len(radii) - 1)):
        return False
    centers = [b.center for b in seq]
    if len(centers) == 1:
        return True
    for start in range(len(centers) - 1):
        tail = centers[start:]
        if all(
            _distance(tail[i], tail[j]) <= tol
            for i in range(len(tail))
            for j in range(i + 1, len(tail))
        ):
            return True
    return False


def lub_of_ascending(seq: BallSequence, tol: float = 1e-9) -> Ball:
    """Least upper bound of an ascending (radius non-increasing) Cauchy chain.

    The limit keeps the last center; the radius is the chain's smallest and
    collapses to exactly 0 when it is at most ``tol``, so a chain that has
    numerically converged yields a degenerate point ball.
    """
    tol = float(tol)
    if not math.isfinite(tol) or tol < 0.0:
        raise ValueError(f"tol must be non-negative and finite, got {tol!r}")
    radii = seq.radii
    if any(radii[i] < radii[i + 1] for i in range(len(radii) - 1)):
        raise ValueError("sequence is not ascending: radii increase")
    if not is_cauchy(seq, tol):
        raise ValueError("sequence is not Cauchy within tolerance")
    radius = radii[-1]
    if radius <= tol:
        radius = 0.0
    return Ball(seq[len(seq) - 1].center, radius)
