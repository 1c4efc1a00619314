"""Command line front end.

Subcommands: ``concepts``, ``itemsets``, ``graded``, ``iterate``,
``threshold``, ``export-dot``. Exit codes: 0 success, 1 usage or domain
error, 2 parse error (including unreadable input), 3 non-convergence.
Output is deterministic for a given input and flag set.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass

from .balls import ContractionSpec, ConvergenceError, FixedPointResult, iterate_fixed_point, norm
from .context import (
    ContextParseError,
    FormalContext,
    parse_cxt,
    parse_mv_csv,
    serialize_cxt,
    threshold,
)
from .graded import GradedLattice, embed_cells, graded_lattice
from .lattice import ConceptLattice, build_lattice, closed_itemsets, enumerate_concepts

__all__ = ["RunConfig", "UsageError", "parse_args", "run", "main"]


class UsageError(ValueError):
    """Bad command line: unknown flags, missing or inapplicable options."""


@dataclass(frozen=True)
class RunConfig:
    """Everything one invocation needs, resolved from the command line."""

    command: str
    input_path: str
    format: str
    theta: float | None = None
    tol: float = 1e-9
    max_iter: int = 10000
    output_path: str | None = None
    emit_json: bool = False


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="fcakit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, json_flag=True, theta_help="binarization threshold in [0, 1]"):
        p.add_argument("--input", required=True, help="input file path")
        p.add_argument("--format", required=True, choices=("cxt", "csv"),
                       help="input format")
        p.add_argument("--theta", type=float, default=None, help=theta_help)
        p.add_argument("--output", default=None, help="write here instead of stdout")
        if json_flag:
            p.add_argument("--json", action="store_true", help="emit JSON")

    common(sub.add_parser("concepts", help="list all concepts in lectic order"))
    common(sub.add_parser("itemsets", help="list all closed itemsets in lectic order"))
    common(sub.add_parser("graded", help="grade every concept of a thresholded context"))
    common(sub.add_parser("threshold", help="binarize a many-valued context to CXT"),
           json_flag=False)
    common(sub.add_parser("export-dot", help="emit the cover relation as a DOT digraph"),
           json_flag=False)

    it = sub.add_parser("iterate", help="drive cell seeds to the contraction fixed point")
    it.add_argument("--input", required=True, help="input file path")
    it.add_argument("--format", required=True, choices=("cxt", "csv"),
                    help="input format")
    it.add_argument("--tol", type=float, default=1e-9, help="certified bound target")
    it.add_argument("--max-iter", type=int, default=10000, help="iteration budget")
    it.add_argument("--output", default=None, help="write here instead of stdout")
    it.add_argument("--json", action="store_true", help="emit JSON")
    return parser


_COMMANDS = ("concepts", "itemsets", "graded", "threshold", "export-dot", "iterate")


def _check_config(config: RunConfig) -> None:
    if config.command not in _COMMANDS:
        raise UsageError(f"unknown command {config.command!r}")
    if config.format not in ("cxt", "csv"):
        raise UsageError(f"unknown format {config.format!r}")
    if config.command in ("graded", "threshold", "iterate") and config.format != "csv":
        raise UsageError(f"{config.command} requires --format csv")
    if config.command in ("graded", "threshold") and config.theta is None:
        raise UsageError(f"{config.command} requires --theta")
    if config.command in ("concepts", "itemsets", "export-dot"):
        if config.format == "csv" and config.theta is None:
            raise UsageError(f"{config.command} with --format csv requires --theta")
        if config.format == "cxt" and config.theta is not None:
            raise UsageError("--theta only applies to --format csv")
    if not config.tol > 0.0:
        raise UsageError(f"--tol must be positive, got {config.tol!r}")
    if config.max_iter < 1:
        raise UsageError(f"--max-iter must be at least 1, got {config.max_iter!r}")


def parse_args(argv: list[str]) -> RunConfig:
    """Resolve ``argv`` to a :class:`RunConfig`, raising :class:`UsageError`."""
    ns = _build_parser().parse_args(argv)
    config = RunConfig(
        command=ns.command,
        input_path=ns.input,
        format=ns.format,
        theta=getattr(ns, "theta", None),
        tol=getattr(ns, "tol", 1e-9),
        max_iter=getattr(ns, "max_iter", 10000),
        output_path=ns.output,
        emit_json=getattr(ns, "json", False),
    )
    _check_config(config)
    return config


def _load_binary(config: RunConfig, text: str) -> FormalContext:
    if config.format == "cxt":
        return parse_cxt(text)
    return threshold(parse_mv_csv(text), config.theta)


def _names(names: tuple[str, ...], indices: frozenset[int]) -> list[str]:
    return [names[i] for i in sorted(indices)]


def _concept_lines(ctx: FormalContext, concepts) -> str:
    lines = [
        f"{' '.join(_names(ctx.objects, c.extent))} | "
        f"{' '.join(_names(ctx.attributes, c.intent))}"
        for c in concepts
    ]
    return "\n".join(lines) + "\n"


def _concepts_json(ctx: FormalContext, concepts) -> str:
    payload = {
        "concepts": [
            {
                "extent": _names(ctx.objects, c.extent),
                "intent": _names(ctx.attributes, c.intent),
            }
            for c in concepts
        ]
    }
    return json.dumps(payload, indent=2) + "\n"


def _graded_text(ctx: FormalContext, lattice: GradedLattice) -> str:
    lines = []
    for entry in lattice.entries:
        c = entry.concept
        r, s = entry.grade
        lines.append(
            f"{' '.join(_names(ctx.objects, c.extent))} | "
            f"{' '.join(_names(ctx.attributes, c.intent))} | grade {r:g} {s:g}"
        )
    for concept, reason in lattice.skipped:
        lines.append(
            f"{' '.join(_names(ctx.objects, concept.extent))} | "
            f"{' '.join(_names(ctx.attributes, concept.intent))} | "
            f"grade undefined: {reason}"
        )
    lines.append("chain: " + " ".join(f"{b.radius:g}" for b in lattice.chain))
    return "\n".join(lines) + "\n"


def _graded_json(ctx: FormalContext, lattice: GradedLattice) -> str:
    entries = [
        {
            "extent": _names(ctx.objects, e.concept.extent),
            "intent": _names(ctx.attributes, e.concept.intent),
            "grade": [e.intent_ball.radius, e.extent_ball.radius],
        }
        for e in lattice.entries
    ]
    entries.extend(
        {
            "extent": _names(ctx.objects, concept.extent),
            "intent": _names(ctx.attributes, concept.intent),
            "grade": None,
        }
        for concept, _ in lattice.skipped
    )
    payload = {
        "concepts": entries,
        "chain": [b.radius for b in lattice.chain],
    }
    return json.dumps(payload, indent=2) + "\n"


def _dot_escape(label: str) -> str:
    return label.replace("\\", "\\\\").replace('"', '\\"')


def _dot(ctx: FormalContext, lattice: ConceptLattice) -> str:
    lines = ["digraph lattice {", "  rankdir=BT;"]
    for i, c in enumerate(lattice.concepts):
        label = (
            f"{' '.join(_names(ctx.objects, c.extent))} | "
            f"{' '.join(_names(ctx.attributes, c.intent))}"
        )
        lines.append(f'  c{i} [label="{_dot_escape(label)}"];')
    for lower, upper in lattice.covers:
        lines.append(f"  c{lower} -> c{upper};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _decimals(tol: float) -> int:
    if not 0.0 < tol < 1.0:
        return 0
    return min(17, -int(math.floor(math.log10(tol))))


def _iterate_text(k: float, seed, result: FixedPointResult, tol: float) -> str:
    dec = _decimals(tol)
    lines = [f"k = {k:g}; seed = ({', '.join(f'{c:g}' for c in seed)})"]
    for n, ball in enumerate(result.iterates):
        center = ", ".join(f"{c:.{dec}f}" for c in ball.center)
        bound = ball.radius / (1.0 - k)
        lines.append(
            f"step {n}: x = ({center}); radius = {ball.radius:.3e}; "
            f"bound = {bound:.3e}"
        )
    point = ", ".join(f"{c:.{dec}f}" for c in result.fixed_point)
    lines.append(
        f"fixed point ({point}); k = {k:g}; steps = {result.steps}; "
        f"certified bound = {result.certified_bound:.3e}"
    )
    return "\n".join(lines) + "\n"


def _iterate_json(k: float, seed, result: FixedPointResult) -> str:
    payload = {
        "k": k,
        "seed": list(seed),
        "steps": result.steps,
        "certified_bound": result.certified_bound,
        "fixed_point": list(result.fixed_point),
        "trace": [
            {
                "step": n,
                "center": list(ball.center),
                "radius": ball.radius,
                "bound": ball.radius / (1.0 - k),
            }
            for n, ball in enumerate(result.iterates)
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def _run_iterate(config: RunConfig, text: str) -> str:
    mv = parse_mv_csv(text)
    positive = [v for row in mv.values for v in row if v > 0.0]
    if not positive:
        raise ValueError("all memberships are zero: no contraction factor")
    k = min(positive)
    spec = ContractionSpec(lambda x: tuple(k * c for c in x), k)
    seeds = [c.point for c in embed_cells(mv, 0.0)]
    runs = [
        iterate_fixed_point(spec, s, tol=config.tol, max_iter=config.max_iter)
        for s in seeds
    ]
    trace_seed = max(seeds, key=lambda p: (norm(p), p))
    trace = runs[seeds.index(trace_seed)]
    if config.emit_json:
        return _iterate_json(k, trace_seed, trace)
    return _iterate_text(k, trace_seed, trace, config.tol)


def run(config: RunConfig, out=None, err=None) -> int:
    """Execute one resolved invocation; returns the process exit code."""
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    try:
        _check_config(config)
        with open(config.input_path, "r", encoding="utf-8", newline="") as fh:
            text = fh.read()
        if config.command == "concepts":
            ctx = _load_binary(config, text)
            concepts = enumerate_concepts(ctx)
            payload = (
                _concepts_json(ctx, concepts)
                if config.emit_json
                else _concept_lines(ctx, concepts)
            )
        elif config.command == "itemsets":
            ctx = _load_binary(config, text)
            sets = closed_itemsets(ctx)
            if config.emit_json:
                payload = json.dumps(
                    {"itemsets": [_names(ctx.attributes, s) for s in sets]},
                    indent=2,
                ) + "\n"
            else:
                payload = "\n".join(
                    " ".join(_names(ctx.attributes, s)) for s in sets
                ) + "\n"
        elif config.command == "graded":
            mv = parse_mv_csv(text)
            ctx = threshold(mv, config.theta)
            lattice = graded_lattice(mv, config.theta)
            payload = (
                _graded_json(ctx, lattice)
                if config.emit_json
                else _graded_text(ctx, lattice)
            )
        elif config.command == "threshold":
            payload = serialize_cxt(threshold(parse_mv_csv(text), config.theta))
        elif config.command == "export-dot":
            ctx = _load_binary(config, text)
            payload = _dot(ctx, build_lattice(ctx))
        else:
            payload = _run_iterate(config, text)
    except ContextParseError as exc:
        print(f"error: {exc}", file=err)
        return 2
    except OSError as exc:
        print(f"error: cannot read {config.input_path}: {exc.strerror}", file=err)
        return 2
    except ConvergenceError as exc:
        print(f"error: {exc}", file=err)
        return 3
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 1

    if config.output_path is None:
        out.write(payload)
    else:
        try:
            with open(config.output_path, "w", encoding="utf-8", newline="") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"error: cannot write {config.output_path}: {exc.strerror}",
                  file=err)
            return 2
    return 0


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        config = parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
