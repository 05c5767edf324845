"""Command-line interface and the text/JSON square formats.

Commands:
    gen         sample squares from the random walk
    path        explicit move sequence between two squares
    verify      validate a square file
    enumerate   exhaustive enumeration (n <= 5)
    graph       state-graph report (n <= 4)
    uniformity  chi-square uniformity report

Standard output carries only data; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO, Iterator

from .chain import ChainConfig, RngStream, iter_samples, run_parallel
from .connect import MoveSequence, transform_path
from .core import (
    GridView,
    ImproperCell,
    InvalidSquare,
    SquareState,
    cube_from_grid,
    grid_from_cube,
    validate,
)
from .moves import IntercalateMove
from .oracle import (
    ENUMERATION_LIMIT,
    GRAPH_LIMIT,
    build_state_graph,
    check_connectivity_and_diameter,
    count_latin_squares,
    enumerate_latin_squares,
)
from .stats import cell_symbol_frequency_test, chi_square_uniformity

# ---------------------------------------------------------------------------
# square formats


def format_square_text(gv: GridView) -> str:
    lines = [f"n {gv.n}"]
    lines.extend(" ".join(str(s) for s in row) for row in gv.grid)
    if gv.improper is not None:
        rec = gv.improper
        p, q = rec.positive_pair
        lines.append(f"improper {rec.row} {rec.col} {p} {q} {rec.negative}")
    return "\n".join(lines) + "\n"


def format_square_json(gv: GridView) -> str:
    rec = None
    if gv.improper is not None:
        rec = {
            "row": gv.improper.row,
            "col": gv.improper.col,
            "positive": list(gv.improper.positive_pair),
            "negative": gv.improper.negative,
        }
    return json.dumps({"n": gv.n, "grid": [list(r) for r in gv.grid], "improper": rec})


def parse_square_text(text: str) -> SquareState:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise InvalidSquare("expected header line 'n <order>'")
    n = int(lines[0].split()[1])
    if len(lines) < 1 + n:
        raise InvalidSquare(f"expected {n} grid rows")
    grid = [[int(x) for x in lines[1 + r].split()] for r in range(n)]
    improper = None
    rest = lines[1 + n :]
    if rest:
        parts = rest[0].split()
        if parts[0] != "improper" or len(parts) != 6:
            raise InvalidSquare(f"unrecognized trailer line: {rest[0]!r}")
        row, col, p, q, neg = (int(x) for x in parts[1:])
        improper = ImproperCell(row, col, (p, q), neg)
    return cube_from_grid(grid, improper)


def parse_square_json(text: str) -> SquareState:
    obj = json.loads(text)
    improper = None
    if obj.get("improper") is not None:
        rec = obj["improper"]
        improper = ImproperCell(
            rec["row"], rec["col"], tuple(rec["positive"]), rec["negative"]
        )
    return cube_from_grid(obj["grid"], improper)


def _read_squares_text(fh: IO[str]) -> Iterator[SquareState]:
    """Stream concatenated text records (each starting with its header)."""
    block: list[str] = []
    for line in fh:
        stripped = line.strip()
        if stripped.startswith("n ") and block:
            yield parse_square_text("\n".join(block))
            block = []
        if stripped:
            block.append(stripped)
    if block:
        yield parse_square_text("\n".join(block))


def format_move_sequence(seq: MoveSequence) -> str:
    """Header and start square (the square text form), then one move per line."""
    out = format_square_text(grid_from_cube(seq.start))
    return out + "".join(m.text() + "\n" for m in seq.moves)


def parse_move_sequence(text: str) -> MoveSequence:
    """Inverse of format_move_sequence; the end state is recomputed by replay."""
    from .moves import apply_move

    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise InvalidSquare("expected header line 'n <order>'")
    n = int(lines[0].split()[1])
    square_end = 1 + n
    if square_end < len(lines) and lines[square_end].startswith("improper"):
        square_end += 1
    start = parse_square_text("\n".join(lines[:square_end]))
    moves = tuple(IntercalateMove.parse(ln) for ln in lines[square_end:])
    end = start
    for m in moves:
        end = apply_move(end, m)
    return MoveSequence(start, moves, end)


def _load_state(path: str) -> SquareState:
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        return parse_square_json(text)
    return parse_square_text(text)


# ---------------------------------------------------------------------------
# commands


def cmd_gen(args: argparse.Namespace) -> int:
    if args.samples < 1:
        print("samples must be at least 1", file=sys.stderr)
        return 2
    if args.chains < 1:
        print("chains must be at least 1", file=sys.stderr)
        return 2
    try:
        config = ChainConfig(args.n, seed=args.seed, burn_in=args.burn_in, thin=args.thin)
    except Exception as exc:
        print(str(exc), file=sys.stderr)
        return 2
    # Stream record by record, chain by chain; matches run_parallel's order.
    per_chain = -(-args.samples // args.chains)
    emitted = 0
    for stream in RngStream(args.seed).spawn(args.chains):
        for gv in iter_samples(config, per_chain, stream):
            if args.format == "json":
                sys.stdout.write(format_square_json(gv) + "\n")
            else:
                sys.stdout.write(format_square_text(gv))
            emitted += 1
            if emitted == args.samples:
                return 0
    return 0


def cmd_path(args: argparse.Namespace) -> int:
    try:
        a = _load_state(args.file_a)
        b = _load_state(args.file_b)
    except Exception as exc:
        print(f"parse failure: {exc}", file=sys.stderr)
        return 1
    if a.n != b.n:
        print(f"order mismatch: {a.n} vs {b.n}", file=sys.stderr)
        return 1
    seq = transform_path(a, b)
    for m in seq.moves:
        sys.stdout.write(m.text() + "\n")
    if args.verify:
        bound = 2 * (a.n - 1) ** 3
        try:
            endpoint = seq.replay(check=True)
        except Exception as exc:
            print(f"verification failed: {exc}", file=sys.stderr)
            return 3
        if endpoint != b or len(seq) > bound:
            print("verification failed: endpoint or bound", file=sys.stderr)
            return 3
        sys.stdout.write(f"OK {len(seq)} {bound}\n")
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        state = _load_state(args.file)
    except (OSError, ValueError, InvalidSquare, json.JSONDecodeError) as exc:
        print(f"parse failure: {exc}", file=sys.stderr)
        return 1
    problems = validate(state)
    if problems:
        for p in problems:
            sys.stdout.write(p + "\n")
        return 1
    sys.stdout.write(f"valid {state.kind}\n")
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    if not 1 <= args.n <= ENUMERATION_LIMIT:
        print(f"order must be in 1..{ENUMERATION_LIMIT}", file=sys.stderr)
        return 2
    if args.count_only:
        sys.stdout.write(f"{count_latin_squares(args.n)}\n")
        return 0
    for gv in enumerate_latin_squares(args.n):
        sys.stdout.write(format_square_text(gv))
    return 0


def cmd_graph(args: argparse.Namespace) -> int:
    if not 2 <= args.n <= GRAPH_LIMIT:
        print(f"order must be in 2..{GRAPH_LIMIT}", file=sys.stderr)
        return 2
    g = build_state_graph(args.n)
    result = check_connectivity_and_diameter(g)
    bound = 2 * (args.n - 1) ** 3
    kind = "diameter" if result["exact"] else "probed diameter bound"
    ok = result["connected"] and result["diameter"] <= bound
    sys.stdout.write(
        f"{g.proper_count} proper, {g.improper_count} improper, "
        f"{'connected' if result['connected'] else 'DISCONNECTED'}, "
        f"{kind} {result['diameter']}\n"
    )
    sys.stdout.write(f"bound 2(n-1)^3 = {bound} satisfied: {'yes' if ok else 'no'}\n")
    return 0 if ok else 1


def cmd_uniformity(args: argparse.Namespace) -> int:
    n = args.n
    mode = args.mode
    if mode == "auto":
        mode = "exact" if n <= 4 else "cells"
    if mode == "exact" and n > 4:
        print("exact-category mode needs n <= 4", file=sys.stderr)
        return 2
    if args.stdin:
        samples = [grid_from_cube(s) for s in _read_squares_text(sys.stdin)]
        if any(s.improper is not None for s in samples):
            print("uniformity input must be proper squares", file=sys.stderr)
            return 2
        if any(s.n != n for s in samples):
            print(f"input squares must have order {n}", file=sys.stderr)
            return 2
    else:
        try:
            config = ChainConfig(n, seed=args.seed, burn_in=args.burn_in, thin=args.thin)
        except Exception as exc:
            print(str(exc), file=sys.stderr)
            return 2
        samples = run_parallel(config, args.chains, -(-args.samples // args.chains))
        samples = samples[: args.samples]
    if mode == "exact":
        report = chi_square_uniformity(samples, enumerate_latin_squares(n))
    else:
        report = cell_symbol_frequency_test(samples, n)
    sys.stdout.write(report.to_json() + "\n")
    return 0 if report.passed else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latinsq",
        description="Generate, transform and verify Latin squares via +/-1-moves.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="sample approximately uniform squares")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=1)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=None)
    p.add_argument("--thin", type=int, default=None)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("path", help="move sequence transferring one square into another")
    p.add_argument("file_a")
    p.add_argument("file_b")
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_path)

    p = sub.add_parser("verify", help="validate a square file")
    p.add_argument("file")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("enumerate", help="list all squares of a small order")
    p.add_argument("n", type=int)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("graph", help="state-graph connectivity and diameter report")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_graph)

    p = sub.add_parser("uniformity", help="chi-square uniformity report")
    p.add_argument("n", type=int)
    p.add_argument("--samples", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", dest="burn_in", type=int, default=None)
    p.add_argument("--thin", type=int, default=None)
    p.add_argument("--chains", type=int, default=1)
    p.add_argument("--mode", choices=("auto", "exact", "cells"), default="auto")
    p.add_argument("--stdin", action="store_true", help="read squares from stdin instead of sampling")
    p.set_defaults(func=cmd_uniformity)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
