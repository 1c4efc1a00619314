"""Binary and many-valued contexts with Burmeister CXT and CSV ingestion.

A binary context records which objects carry which attributes; a many-valued
context records a membership degree in [0, 1] per cell and is binarized by
:func:`threshold` before any lattice construction.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

__all__ = [
    "ContextParseError",
    "FormalContext",
    "ManyValuedContext",
    "parse_cxt",
    "serialize_cxt",
    "parse_mv_csv",
    "threshold",
]


class ContextParseError(ValueError):
    """Malformed context input. ``line`` is the 1-based offending line."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _check_names(names: tuple[str, ...], role: str) -> None:
    seen: set[str] = set()
    for name in names:
        if not isinstance(name, str) or not name:
            raise ValueError(f"{role} names must be non-empty strings")
        if "\n" in name or "\r" in name:
            raise ValueError(f"{role} name {name!r} contains a line break")
        if name in seen:
            raise ValueError(f"duplicate {role} name {name!r}")
        seen.add(name)


@dataclass(frozen=True)
class FormalContext:
    """Immutable binary incidence structure over named objects and attributes.

    ``incidence[i][j]`` is True exactly when object ``i`` carries attribute
    ``j``. Row and column bitmasks are precomputed once so the derivation
    operators run on machine integers.
    """

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    incidence: tuple[tuple[bool, ...], ...]
    _row_bits: tuple[int, ...] = field(init=False, repr=False, compare=False)
    _col_bits: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        objects = tuple(self.objects)
        attributes = tuple(self.attributes)
        _check_names(objects, "object")
        _check_names(attributes, "attribute")
        incidence = tuple(tuple(bool(v) for v in row) for row in self.incidence)
        if len(incidence) != len(objects):
            raise ValueError(
                f"expected {len(objects)} incidence rows, got {len(incidence)}"
            )
        for i, row in enumerate(incidence):
            if len(row) != len(attributes):
                raise ValueError(
                    f"incidence row {i} has {len(row)} cells, expected {len(attributes)}"
                )
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "incidence", incidence)
        row_bits = tuple(
            sum(1 << j for j, v in enumerate(row) if v) for row in incidence
        )
        col_bits = tuple(
            sum(1 << i for i, row in enumerate(incidence) if row[j])
            for j in range(len(attributes))
        )
        object.__setattr__(self, "_row_bits", row_bits)
        object.__setattr__(self, "_col_bits", col_bits)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)


@dataclass(frozen=True)
class ManyValuedContext:
    """Immutable context whose cells hold membership degrees in [0, 1]."""

    objects: tuple[str, ...]
    attributes: tuple[str, ...]
    values: tuple[tuple[float, ...], ...]

    def __post_init__(self):
        objects = tuple(self.objects)
        attributes = tuple(self.attributes)
        _check_names(objects, "object")
        _check_names(attributes, "attribute")
        values = tuple(tuple(float(v) for v in row) for row in self.values)
        if len(values) != len(objects):
            raise ValueError(f"expected {len(objects)} value rows, got {len(values)}")
        for i, row in enumerate(values):
            if len(row) != len(attributes):
                raise ValueError(
                    f"value row {i} has {len(row)} cells, expected {len(attributes)}"
                )
            for j, v in enumerate(row):
                if not (0.0 <= v <= 1.0) or not math.isfinite(v):
                    raise ValueError(f"cell ({i}, {j}) value {v!r} outside [0, 1]")
        object.__setattr__(self, "objects", objects)
        object.__setattr__(self, "attributes", attributes)
        object.__setattr__(self, "values", values)

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_attributes(self) -> int:
        return len(self.attributes)


def parse_cxt(text: str) -> FormalContext:
    """Parse Burmeister CXT text into a :class:`FormalContext`.

    Layout: a ``B`` line, a blank line, the object count, the attribute
    count, a blank line, one object name per line, one attribute name per
    line, then one row per object made of ``X`` (incident) and ``.`` cells.
    Raises :class:`ContextParseError` with the offending line number.
    """
    if "\r" in text:
        line = text[: text.index("\r")].count("\n") + 1
        raise ContextParseError("carriage returns are not allowed", line=line)
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()

    def want(idx: int, what: str) -> str:
        if idx >= len(lines):
            raise ContextParseError(f"unexpected end of input, expected {what}",
                                    line=idx + 1)
        return lines[idx]

    if want(0, "format tag 'B'") != "B":
        raise ContextParseError(f"expected format tag 'B', got {lines[0]!r}", line=1)
    if want(1, "blank line") != "":
        raise ContextParseError("expected blank line after format tag", line=2)

    def count(idx: int, what: str) -> int:
        raw = want(idx, f"{what} count")
        if not raw.isdigit():
            raise ContextParseError(f"malformed {what} count {raw!r}", line=idx + 1)
        return int(raw)

    n_obj = count(2, "object")
    n_attr = count(3, "attribute")
    if want(4, "blank line") != "":
        raise ContextParseError("expected blank line after counts", line=5)

    def names(start: int, n: int, role: str) -> list[str]:
        out: list[str] = []
        seen: set[str] = set()
        for offset in range(n):
            idx = start + offset
            name = want(idx, f"{role} name")
            if not name:
                raise ContextParseError(f"empty {role} name", line=idx + 1)
            if name in seen:
                raise ContextParseError(f"duplicate {role} name {name!r}",
                                        line=idx + 1)
            seen.add(name)
            out.append(name)
        return out

    obj_names = names(5, n_obj, "object")
    attr_names = names(5 + n_obj, n_attr, "attribute")

    rows: list[tuple[bool, ...]] = []
    base = 5 + n_obj + n_attr
    for i in range(n_obj):
        idx = base + i
        raw = want(idx, "incidence row")
        if len(raw) != n_attr:
            raise ContextParseError(
                f"incidence row has {len(raw)} cells, expected {n_attr}",
                line=idx + 1,
            )
        for ch in raw:
            if ch not in "X.":
                raise ContextParseError(f"illegal incidence character {ch!r}",
                                        line=idx + 1)
        rows.append(tuple(ch == "X" for ch in raw))
    if len(lines) > base + n_obj:
        raise ContextParseError("trailing content after incidence rows",
                                line=base + n_obj + 1)
    return FormalContext(tuple(obj_names), tuple(attr_names), tuple(rows))


def serialize_cxt(ctx: FormalContext) -> str:
    """Render a context as canonical CXT text: LF line endings, trailing newline."""
    parts = ["B", "", str(ctx.n_objects), str(ctx.n_attributes), ""]
    parts.extend(ctx.objects)
    parts.extend(ctx.attributes)
    for row in ctx.incidence:
        parts.append("".join("X" if v else "." for v in row))
    return "\n".join(parts) + "\n"


def parse_mv_csv(text: str) -> ManyValuedContext:
    """Parse header CSV (blank corner cell, attribute columns, one object row
    each) into a :class:`ManyValuedContext`.

    Cells must be numeric and lie in [0, 1]. Raises
    :class:`ContextParseError` with the offending line number.
    """
    if "\r" in text:
        line = text[: text.index("\r")].count("\n") + 1
        raise ContextParseError("carriage returns are not allowed", line=line)
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise ContextParseError("empty input, expected a header row", line=1)
    header = rows[0]
    if header[0] != "":
        raise ContextParseError(
            f"header must start with an empty corner cell, got {header[0]!r}",
            line=1,
        )
    attr_names = header[1:]
    obj_names: list[str] = []
    values: list[tuple[float, ...]] = []
    for offset, row in enumerate(rows[1:]):
        line = offset + 2
        if not row:
            raise ContextParseError("empty row", line=line)
        obj_names.append(row[0])
        if len(row) != len(attr_names) + 1:
            raise ContextParseError(
                f"expected {len(attr_names) + 1} cells, got {len(row)}",
                line=line,
            )
        parsed: list[float] = []
        for cell in row[1:]:
            try:
                v = float(cell)
            except ValueError:
                raise ContextParseError(f"non-numeric cell {cell!r}",
                                        line=line) from None
            if not (0.0 <= v <= 1.0) or not math.isfinite(v):
                raise ContextParseError(f"value {cell!r} outside [0, 1]", line=line)
            parsed.append(v)
        values.append(tuple(parsed))
    try:
        return ManyValuedContext(tuple(obj_names), tuple(attr_names), tuple(values))
    except ValueError as exc:
        raise ContextParseError(str(exc)) from None


def threshold(mv: ManyValuedContext, theta: float) -> FormalContext:
    """Binarize: object ``i`` carries attribute ``j`` iff ``values[i][j] >= theta``.

    ``theta`` must lie in [0, 1].
    """
    theta = float(theta)
    if not (0.0 <= theta <= 1.0) or not math.isfinite(theta):
        raise ValueError(f"theta {theta!r} outside [0, 1]")
    rows = tuple(tuple(v >= theta for v in row) for row in mv.values)
    return FormalContext(mv.objects, mv.attributes, rows)
