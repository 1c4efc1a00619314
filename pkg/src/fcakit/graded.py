"""Graded concepts: attach a geometric grade to concepts of a thresholded context.

Each qualifying cell of a many-valued context embeds as the point
``(row, column)`` with 1-based positions. The grade of an attribute set is
the radius of the least origin-centered ball (max norm) enclosing the
qualifying cells in its columns; a concept additionally grades its extent
over the qualifying cells in its rows. Concepts whose qualifying cell set is
empty on either side have no grade and are reported, not invented.
"""

from __future__ import annotations

import math
from collections.abc import Iterable
from dataclasses import dataclass

from .balls import (
    Ball,
    ContractionSpec,
    FixedPointResult,
    Vector,
    iterate_fixed_point,
    norm,
)
from .context import ManyValuedContext, threshold
from .galois import closure_intent, derive_extent
from .lattice import Concept, enumerate_concepts

__all__ = [
    "CellPoint",
    "UndefinedGradeError",
    "embed_cells",
    "least_enclosing_origin_ball",
    "GradedItemset",
    "GradedConcept",
    "GradedLattice",
    "graded_closed_itemset",
    "graded_concept",
    "graded_lattice",
    "Analysis",
    "analyze",
]


class UndefinedGradeError(ValueError):
    """No qualifying cells, so no enclosing ball and no grade."""


@dataclass(frozen=True)
class CellPoint:
    """A qualifying cell embedded at ``(object position, attribute position)``, 1-based."""

    object_index: int
    attribute_index: int
    membership: float

    @property
    def point(self) -> Vector:
        return (float(self.object_index), float(self.attribute_index))


def embed_cells(mv: ManyValuedContext, theta: float) -> list[CellPoint]:
    """Embed every cell with membership at least ``theta``, row-major order."""
    theta = float(theta)
    if not (0.0 <= theta <= 1.0) or not math.isfinite(theta):
        raise ValueError(f"theta {theta!r} outside [0, 1]")
    return [
        CellPoint(i + 1, j + 1, v)
        for i, row in enumerate(mv.values)
        for j, v in enumerate(row)
        if v >= theta
    ]


def least_enclosing_origin_ball(points: Iterable[Vector], kind: str = "max") -> Ball:
    """Smallest origin-centered ball containing every point.

    The radius is the largest point norm; with no points there is no
    well-defined ball and :class:`UndefinedGradeError` is raised.
    """
    pts = [tuple(float(c) for c in p) for p in points]
    if not pts:
        raise UndefinedGradeError("no points: enclosing ball is undefined")
    dim = len(pts[0])
    for p in pts:
        if len(p) != dim:
            raise ValueError("all points must share one dimension")
    return Ball((0.0,) * dim, max(norm(p, kind=kind) for p in pts))


@dataclass(frozen=True)
class GradedItemset:
    """A closed attribute set with the ball grading its qualifying cells."""

    items: frozenset[int]
    ball: Ball

    @property
    def grade(self) -> float:
        return self.ball.radius


@dataclass(frozen=True)
class GradedConcept:
    """A concept with intent and extent balls; the grade is the radius pair."""

    concept: Concept
    intent_ball: Ball
    extent_ball: Ball

    @property
    def grade(self) -> tuple[float, float]:
        return (self.intent_ball.radius, self.extent_ball.radius)


@dataclass(frozen=True)
class GradedLattice:
    """Graded concepts of a thresholded context.

    ``entries`` keeps lectic concept order; ``skipped`` pairs each ungradable
    concept with the reason; ``chain`` is the nested sequence of distinct
    intent balls, widest (smallest grade) first.
    """

    entries: tuple[GradedConcept, ...]
    skipped: tuple[tuple[Concept, str], ...]
    chain: tuple[Ball, ...]


def _intent_cells(cells: list[CellPoint], intent: frozenset[int]) -> list[Vector]:
    return [c.point for c in cells if c.attribute_index - 1 in intent]


def _extent_cells(cells: list[CellPoint], extent: frozenset[int]) -> list[Vector]:
    return [c.point for c in cells if c.object_index - 1 in extent]


def graded_closed_itemset(
    mv: ManyValuedContext, theta: float, items: Iterable[int]
) -> GradedItemset:
    """Close ``items`` in the thresholded context and grade the closure.

    Raises :class:`UndefinedGradeError` when no qualifying cell falls in the
    closure's columns.
    """
    ctx = threshold(mv, theta)
    closed = closure_intent(ctx, items)
    cells = _intent_cells(embed_cells(mv, theta), closed)
    if not cells:
        raise UndefinedGradeError(
            "no qualifying cells in the itemset's columns"
        )
    return GradedItemset(closed, least_enclosing_origin_ball(cells))


def _grade_concept(
    cells: list[CellPoint], concept: Concept
) -> GradedConcept:
    intent_cells = _intent_cells(cells, concept.intent)
    if not intent_cells:
        raise UndefinedGradeError(
            "no qualifying cells in the intent's columns"
        )
    extent_cells = _extent_cells(cells, concept.extent)
    if not extent_cells:
        raise UndefinedGradeError(
            "no qualifying cells in the extent's rows"
        )
    return GradedConcept(
        concept,
        least_enclosing_origin_ball(intent_cells),
        least_enclosing_origin_ball(extent_cells),
    )


def graded_concept(
    mv: ManyValuedContext, theta: float, items: Iterable[int]
) -> GradedConcept:
    """The concept generated by ``items`` in the thresholded context, with grades.

    Raises :class:`UndefinedGradeError` when either side has no qualifying
    cells.
    """
    ctx = threshold(mv, theta)
    intent = closure_intent(ctx, items)
    concept = Concept(derive_extent(ctx, intent), intent)
    return _grade_concept(embed_cells(mv, theta), concept)


def graded_lattice(mv: ManyValuedContext, theta: float) -> GradedLattice:
    """Grade every concept of the thresholded context.

    Ungradable concepts land in ``skipped`` with the reason. The chain holds
    one ball per distinct intent grade, ordered by increasing radius; origin
    balls nest, so the chain is ascending under reverse inclusion.
    """
    ctx = threshold(mv, theta)
    cells = embed_cells(mv, theta)
    entries: list[GradedConcept] = []
    skipped: list[tuple[Concept, str]] = []
    for concept in enumerate_concepts(ctx):
        try:
            entries.append(_grade_concept(cells, concept))
        except UndefinedGradeError as exc:
            skipped.append((concept, str(exc)))
    radii = sorted({e.intent_ball.radius for e in entries})
    chain = tuple(Ball((0.0, 0.0), r) for r in radii)
    return GradedLattice(tuple(entries), tuple(skipped), chain)


@dataclass(frozen=True)
class Analysis:
    """End-to-end run over one many-valued context.

    ``shrink_factor`` is the smallest strictly positive membership, reused as
    the contraction factor of the component-scaling map; ``runs`` holds one
    certified iteration per embedded cell seed; ``trace`` is the run from the
    seed of largest norm; ``lattice`` grades the thresholded context.
    """

    shrink_factor: float
    seeds: tuple[Vector, ...]
    runs: tuple[FixedPointResult, ...]
    trace: FixedPointResult
    lattice: GradedLattice


def analyze(
    mv: ManyValuedContext,
    theta: float = 0.5,
    tol: float = 1e-9,
    max_iter: int = 10000,
) -> Analysis:
    """Grade the lattice at ``theta`` and drive every cell seed to the fixed point.

    The contraction scales every component by the smallest strictly positive
    membership in ``mv``; its unique fixed point is the origin. Requires at
    least one strictly positive entry, and a shrink factor below 1.
    """
    positive = [v for row in mv.values for v in row if v > 0.0]
    if not positive:
        raise ValueError("all memberships are zero: no contraction factor")
    k = min(positive)
    spec = ContractionSpec(lambda x: tuple(k * c for c in x), k)
    seeds = tuple(c.point for c in embed_cells(mv, 0.0))
    runs = tuple(iterate_fixed_point(spec, s, tol=tol, max_iter=max_iter) for s in seeds)
    trace_seed = max(seeds, key=lambda p: (norm(p), p))
    trace = runs[seeds.index(trace_seed)]
    return Analysis(k, seeds, runs, trace, graded_lattice(mv, theta))
