"""Concept enumeration and lattice construction.

Closed attribute sets are visited in lectic order: identify an attribute set
with the integer whose bit ``j`` is attribute ``j``; lectic order is then
ascending integer order, so of two differing sets the one holding the largest
differing attribute index comes later. Enumeration uses the classic
closure-jump scheme: try each missing attribute from the least significant
end, close, and accept the first candidate that leaves the more significant
attributes untouched.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass

from .context import FormalContext, ManyValuedContext, threshold
from .galois import (
    AttributeSet,
    _closure_intent_mask,
    _extent_mask,
    _mask_of,
    _set_of,
    derive_extent,
    derive_intent,
)

__all__ = [
    "Concept",
    "ConceptLattice",
    "next_closure",
    "enumerate_concepts",
    "is_subconcept",
    "meet",
    "join",
    "build_lattice",
    "closed_itemsets",
    "smallest_closed_containing",
]


@dataclass(frozen=True)
class Concept:
    """A maximal rectangle of the incidence: extent and intent determine each other."""

    extent: frozenset[int]
    intent: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "extent", frozenset(self.extent))
        object.__setattr__(self, "intent", frozenset(self.intent))


@dataclass(frozen=True)
class ConceptLattice:
    """All concepts of a context plus the cover (Hasse) relation.

    ``concepts`` is in lectic intent order; ``covers`` holds index pairs
    ``(lower, upper)`` where ``lower`` is an immediate subconcept of
    ``upper``; ``top`` and ``bottom`` index the greatest and least concept.
    """

    concepts: tuple[Concept, ...]
    covers: tuple[tuple[int, int], ...]
    top: int
    bottom: int


def _next_closure_mask(ctx: FormalContext, current: int) -> int | None:
    n = ctx.n_attributes
    for j in range(n):
        bit = 1 << j
        if current & bit:
            continue
        above = current >> (j + 1) << (j + 1)
        closed = _closure_intent_mask(ctx, above | bit)
        if closed >> (j + 1) == current >> (j + 1):
            return closed
    return None


def next_closure(ctx: FormalContext, current: Iterable[int]) -> AttributeSet | None:
    """Lectic successor of the closed attribute set ``current``, or None at the end."""
    mask = _mask_of(current, ctx.n_attributes, "attribute")
    if _closure_intent_mask(ctx, mask) != mask:
        raise ValueError("current set is not closed")
    nxt = _next_closure_mask(ctx, mask)
    return None if nxt is None else _set_of(nxt)


def _closed_intent_masks(ctx: FormalContext) -> list[int]:
    masks = []
    mask: int | None = _closure_intent_mask(ctx, 0)
    while mask is not None:
        masks.append(mask)
        mask = _next_closure_mask(ctx, mask)
    return masks


def enumerate_concepts(ctx: FormalContext) -> list[Concept]:
    """All concepts of ``ctx`` in lectic intent order."""
    return [
        Concept(_set_of(_extent_mask(ctx, m)), _set_of(m))
        for m in _closed_intent_masks(ctx)
    ]


def is_subconcept(c1: Concept, c2: Concept) -> bool:
    """True iff ``c1`` is at most ``c2``: smaller extent, larger intent."""
    return c1.extent <= c2.extent


def meet(ctx: FormalContext, c1: Concept, c2: Concept) -> Concept:
    """Greatest common subconcept: intersect extents, derive the intent."""
    extent = c1.extent & c2.extent
    return Concept(extent, derive_intent(ctx, extent))


def join(ctx: FormalContext, c1: Concept, c2: Concept) -> Concept:
    """Least common superconcept: intersect intents, derive the extent."""
    intent = c1.intent & c2.intent
    return Concept(derive_extent(ctx, intent), intent)


def build_lattice(ctx: FormalContext) -> ConceptLattice:
    """Enumerate all concepts and compute the cover relation.

    Covers come from the full order by transitive reduction: ``(i, j)`` is a
    cover iff ``i < j`` strictly and no third concept sits strictly between.
    Quadratic in concept count per edge check, cubic overall.
    """
    intent_masks = _closed_intent_masks(ctx)
    extent_masks = [_extent_mask(ctx, m) for m in intent_masks]
    n = len(intent_masks)

    def leq(i: int, j: int) -> bool:
        return extent_masks[i] & extent_masks[j] == extent_masks[i]

    covers = []
    for i in range(n):
        for j in range(n):
            if i == j or not leq(i, j):
                continue
            if any(
                k != i and k != j and leq(i, k) and leq(k, j) for k in range(n)
            ):
                continue
            covers.append((i, j))
    covers.sort()
    concepts = tuple(
        Concept(_set_of(e), _set_of(m))
        for e, m in zip(extent_masks, intent_masks)
    )
    top = max(range(n), key=lambda i: extent_masks[i].bit_count())
    bottom = max(range(n), key=lambda i: intent_masks[i].bit_count())
    return ConceptLattice(concepts, tuple(covers), top, bottom)


def closed_itemsets(
    ctx: FormalContext | ManyValuedContext,
    theta: float | None = None,
) -> list[AttributeSet]:
    """All closed attribute sets in lectic order.

    A many-valued context must come with ``theta`` and is binarized first; a
    binary context must not.
    """
    if isinstance(ctx, ManyValuedContext):
        if theta is None:
            raise ValueError("theta is required for a many-valued context")
        ctx = threshold(ctx, theta)
    elif theta is not None:
        raise ValueError("theta only applies to a many-valued context")
    return [_set_of(m) for m in _closed_intent_masks(ctx)]


def smallest_closed_containing(
    ctx: FormalContext, items: Iterable[int]
) -> AttributeSet:
    """Smallest closed attribute set containing ``items``: its double derivation."""
    mask = _mask_of(items, ctx.n_attributes, "attribute")
    return _set_of(_closure_intent_mask(ctx, mask))
