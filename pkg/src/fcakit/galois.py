"""Derivation operators between object sets and attribute sets.

``derive_intent`` and ``derive_extent`` form an antitone Galois connection;
composing them gives the two closure operators. Sets are exchanged as
``frozenset[int]`` of positional indices; all work happens on the context's
precomputed bitmasks.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable

from .context import FormalContext

__all__ = [
    "ObjectSet",
    "AttributeSet",
    "derive_intent",
    "derive_extent",
    "closure_intent",
    "closure_extent",
    "kleene_fixed_point",
]

ObjectSet = frozenset[int]
AttributeSet = frozenset[int]


def _mask_of(indices: Iterable[int], size: int, role: str) -> int:
    mask = 0
    for i in indices:
        i = int(i)
        if not 0 <= i < size:
            raise ValueError(f"{role} index {i} out of range [0, {size})")
        mask |= 1 << i
    return mask


def _set_of(mask: int) -> frozenset[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return frozenset(out)


def _intent_mask(ctx: FormalContext, extent_mask: int) -> int:
    mask = (1 << ctx.n_attributes) - 1
    rows = ctx._row_bits
    while extent_mask:
        low = extent_mask & -extent_mask
        mask &= rows[low.bit_length() - 1]
        extent_mask ^= low
    return mask


def _extent_mask(ctx: FormalContext, intent_mask: int) -> int:
    mask = (1 << ctx.n_objects) - 1
    cols = ctx._col_bits
    while intent_mask:
        low = intent_mask & -intent_mask
        mask &= cols[low.bit_length() - 1]
        intent_mask ^= low
    return mask


def _closure_intent_mask(ctx: FormalContext, intent_mask: int) -> int:
    return _intent_mask(ctx, _extent_mask(ctx, intent_mask))


def derive_intent(ctx: FormalContext, objects: Iterable[int]) -> AttributeSet:
    """Attributes shared by every object in ``objects`` (all attributes if empty)."""
    return _set_of(_intent_mask(ctx, _mask_of(objects, ctx.n_objects, "object")))


def derive_extent(ctx: FormalContext, attributes: Iterable[int]) -> ObjectSet:
    """Objects carrying every attribute in ``attributes`` (all objects if empty)."""
    return _set_of(_extent_mask(ctx, _mask_of(attributes, ctx.n_attributes, "attribute")))


def closure_intent(ctx: FormalContext, attributes: Iterable[int]) -> AttributeSet:
    """Smallest closed attribute set containing ``attributes``."""
    mask = _mask_of(attributes, ctx.n_attributes, "attribute")
    return _set_of(_closure_intent_mask(ctx, mask))


def closure_extent(ctx: FormalContext, objects: Iterable[int]) -> ObjectSet:
    """Smallest closed object set containing ``objects``."""
    mask = _mask_of(objects, ctx.n_objects, "object")
    return _set_of(_extent_mask(ctx, _intent_mask(ctx, mask)))


def kleene_fixed_point(
    op: Callable[[frozenset[int]], frozenset[int]],
    seed: Iterable[int],
    universe_size: int,
) -> frozenset[int]:
    """Iterate ``op`` from ``seed`` until the set stops changing.

    An inflationary monotone operator on subsets of a ``universe_size``
    universe stabilizes within ``universe_size`` applications; one extra
    application is allowed before giving up with a diagnostic.
    """
    if universe_size < 0:
        raise ValueError("universe_size must be non-negative")
    current = frozenset(int(i) for i in seed)
    for _ in range(universe_size + 1):
        nxt = op(current)
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError(
        "operator not inflationary/monotone: "
        f"no fixed point within {universe_size + 1} applications"
    )
