"""Command-line front end: tile-set and presentation files, analysis subcommands.

Tile-set files: an `alphabet` line, an optional `mode allowed|forbidden` line
(default allowed), then constraints: `hpair L R` (left, right), `vpair T B`
(top, bottom), or a `pattern` block of `cell dx dy STATE` lines closed by
`end`.  `#` starts a comment anywhere.

Presentation files: a `presentation` header, optional `xcuts ...`/`ycuts ...`
lines (strictly increasing integers), then one `region IX IY U V` block per
band product, followed by V rows of U tokens, top row first.  Band 0 is the
leftmost/bottommost (unbounded) band.
"""

from __future__ import annotations

import argparse
import json
import sys
from itertools import product
from pathlib import Path

from .cb import ranks
from .core import Alphabet, Pattern, TileSet, TorusTiling, Vec2
from .lang import extensible_squares
from .order import TilingFamily, hasse, level_of, maximal_classes, minimal_classes, preceq
from .presentation import Block, GridPresentation, TypeB, is_valid, period_lattice, type_of
from .solver import Empty, PeriodicFound, classify, enumerate_torus, weak_periodic_witness

FORBIDDEN_COMPLEMENT_LIMIT = 1 << 16


class ParseError(ValueError):
    def __init__(self, path, line_no: int, msg: str):
        super().__init__(f"{path}:{line_no}: {msg}")


def _content_lines(path) -> list[tuple[int, list[str]]]:
    out = []
    for no, raw in enumerate(Path(path).read_text().splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if toks:
            out.append((no, toks))
    return out


def _token_state(path, no, alphabet: Alphabet, tok: str) -> int:
    try:
        return alphabet.index[tok]
    except KeyError:
        raise ParseError(path, no, f"token {tok!r} not in alphabet") from None


def parse_tileset(path) -> TileSet:
    lines = _content_lines(path)
    alphabet: Alphabet | None = None
    mode: str | None = None
    raw_patterns: list[dict[Vec2, int]] = []
    i = 0
    while i < len(lines):
        no, toks = lines[i]
        head, args = toks[0], toks[1:]
        if head == "alphabet":
            if alphabet is not None:
                raise ParseError(path, no, "duplicate alphabet line")
            try:
                alphabet = Alphabet(tuple(args))
            except ValueError as e:
                raise ParseError(path, no, str(e)) from None
        elif head == "mode":
            if mode is not None:
                raise ParseError(path, no, "duplicate mode line")
            if args not in (["allowed"], ["forbidden"]):
                raise ParseError(path, no, "mode must be 'allowed' or 'forbidden'")
            mode = args[0]
        elif head in ("hpair", "vpair"):
            if alphabet is None:
                raise ParseError(path, no, "alphabet must come first")
            if len(args) != 2:
                raise ParseError(path, no, f"{head} takes exactly two tokens")
            a, b = (_token_state(path, no, alphabet, t) for t in args)
            if head == "hpair":
                raw_patterns.append({Vec2(0, 0): a, Vec2(1, 0): b})
            else:
                raw_patterns.append({Vec2(0, 1): a, Vec2(0, 0): b})
        elif head == "pattern":
            if alphabet is None:
                raise ParseError(path, no, "alphabet must come first")
            if args:
                raise ParseError(path, no, "pattern starts a cell block; no arguments")
            cells: dict[Vec2, int] = {}
            i += 1
            while True:
                if i >= len(lines):
                    raise ParseError(path, no, "pattern block not closed with end")
                cno, ctoks = lines[i]
                if ctoks == ["end"]:
                    break
                if ctoks[0] != "cell" or len(ctoks) != 4:
                    raise ParseError(path, cno, "expected 'cell dx dy state' or 'end'")
                try:
                    dx, dy = int(ctoks[1]), int(ctoks[2])
                except ValueError:
                    raise ParseError(path, cno, "cell offsets must be integers") from None
                spot = Vec2(dx, dy)
                if spot in cells:
                    raise ParseError(path, cno, f"duplicate cell {dx} {dy}")
                cells[spot] = _token_state(path, cno, alphabet, ctoks[3])
                i += 1
            if not cells:
                raise ParseError(path, no, "pattern has no cells")
            raw_patterns.append(cells)
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
        i += 1
    if alphabet is None:
        raise ParseError(path, 1, "missing alphabet line")
    patterns = [Pattern(alphabet, c) for c in raw_patterns]
    if (mode or "allowed") == "allowed":
        return TileSet.from_allowed(alphabet, patterns)
    # forbidden mode: complement each declared shape inside the full cube
    by_shape: dict[frozenset, set] = {}
    for p in patterns:
        q = p.normalize()
        by_shape.setdefault(q.domain(), set()).add(q.key())
    allowed = []
    for shape, bad in by_shape.items():
        cells = sorted(shape)
        if len(alphabet) ** len(cells) > FORBIDDEN_COMPLEMENT_LIMIT:
            raise ParseError(path, 1, "forbidden-mode complement too large")
        for combo in product(range(len(alphabet)), repeat=len(cells)):
            if combo not in bad:
                allowed.append(Pattern(alphabet, dict(zip(cells, combo))))
    return TileSet.from_allowed(alphabet, allowed)


def parse_presentation(path, alphabet: Alphabet) -> GridPresentation:
    lines = _content_lines(path)
    if not lines or lines[0][1] != ["presentation"]:
        raise ParseError(path, lines[0][0] if lines else 1, "missing presentation header")
    xcuts: tuple[int, ...] | None = None
    ycuts: tuple[int, ...] | None = None
    blocks: dict[tuple[int, int], Block] = {}
    i = 1
    while i < len(lines):
        no, toks = lines[i]
        head, args = toks[0], toks[1:]
        if head in ("xcuts", "ycuts"):
            if (xcuts if head == "xcuts" else ycuts) is not None:
                raise ParseError(path, no, f"duplicate {head} line")
            try:
                cuts = tuple(int(t) for t in args)
            except ValueError:
                raise ParseError(path, no, f"{head} takes integers") from None
            if any(a >= b for a, b in zip(cuts, cuts[1:])):
                raise ParseError(path, no, f"{head} must be strictly increasing")
            if head == "xcuts":
                xcuts = cuts
            else:
                ycuts = cuts
        elif head == "region":
            try:
                ix, iy, u, v = (int(t) for t in args)
            except ValueError:
                raise ParseError(path, no, "region takes four integers") from None
            if u < 1 or v < 1:
                raise ParseError(path, no, "region block dimensions must be positive")
            if (ix, iy) in blocks:
                raise ParseError(path, no, f"duplicate region {ix} {iy}")
            rows = []
            for t in range(v):
                if i + 1 + t >= len(lines):
                    raise ParseError(path, no, f"expected {v} rows after region")
                rno, row = lines[i + 1 + t]
                if len(row) != u:
                    raise ParseError(path, rno, f"expected {u} tokens in region row")
                rows.append([_token_state(path, rno, alphabet, tok) for tok in row])
            data = tuple(tuple(rows[v - 1 - y][x] for y in range(v)) for x in range(u))
            blocks[(ix, iy)] = Block(u, v, data)
            i += v
        else:
            raise ParseError(path, no, f"unknown directive {head!r}")
        i += 1
    xcuts = xcuts or ()
    ycuts = ycuts or ()
    for ix in range(len(xcuts) + 1):
        for iy in range(len(ycuts) + 1):
            if (ix, iy) not in blocks:
                raise ParseError(path, 1, f"missing region {ix} {iy}")
    for ix, iy in blocks:
        if not (0 <= ix <= len(xcuts) and 0 <= iy <= len(ycuts)):
            raise ParseError(path, 1, f"region {ix} {iy} out of band range")
    regions = tuple(
        tuple(blocks[(ix, iy)] for iy in range(len(ycuts) + 1)) for ix in range(len(xcuts) + 1)
    )
    return GridPresentation(alphabet, xcuts, ycuts, regions)


_HSHAPE = frozenset((Vec2(0, 0), Vec2(1, 0)))
_VSHAPE = frozenset((Vec2(0, 0), Vec2(0, 1)))


def emit_tileset(ts: TileSet) -> str:
    out = ["alphabet " + " ".join(ts.alphabet.tokens), "mode allowed"]
    toks = ts.alphabet.tokens
    for shape, pats in zip(ts.shapes, ts.allowed):
        ordered = sorted(pats, key=lambda p: p.key())
        if shape == _HSHAPE:
            out.extend(f"hpair {toks[p.cells[Vec2(0, 0)]]} {toks[p.cells[Vec2(1, 0)]]}" for p in ordered)
        elif shape == _VSHAPE:
            out.extend(f"vpair {toks[p.cells[Vec2(0, 1)]]} {toks[p.cells[Vec2(0, 0)]]}" for p in ordered)
        else:
            for p in ordered:
                out.append("pattern")
                out.extend(f"cell {c.x} {c.y} {toks[p.cells[c]]}" for c in p.sorted_cells())
                out.append("end")
    return "\n".join(out) + "\n"


def emit_presentation(g: GridPresentation) -> str:
    out = ["presentation"]
    if g.xcuts:
        out.append("xcuts " + " ".join(str(c) for c in g.xcuts))
    if g.ycuts:
        out.append("ycuts " + " ".join(str(c) for c in g.ycuts))
    toks = g.alphabet.tokens
    for ix, col in enumerate(g.regions):
        for iy, b in enumerate(col):
            out.append(f"region {ix} {iy} {b.u} {b.v}")
            for y in range(b.v - 1, -1, -1):
                out.append(" ".join(toks[b.data[x][y]] for x in range(b.u)))
    return "\n".join(out) + "\n"


def _pattern_json(p: Pattern) -> dict:
    p = p.normalize()
    toks = p.alphabet.tokens
    w, h = p.extents()
    if p.is_rectangular():
        return {"width": w, "height": h, "rows": p.rows()}
    return {"cells": [[c.x, c.y, toks[s]] for c, s in sorted(p.cells.items())]}


def _torus_json(t: TorusTiling, alphabet: Alphabet) -> dict:
    toks = alphabet.tokens
    rows = [
        " ".join(toks[t.block[x][y]] for x in range(t.p)) for y in range(t.q - 1, -1, -1)
    ]
    return {"p": t.p, "q": t.q, "rows": rows}


def _presentation_json(g: GridPresentation) -> dict:
    toks = g.alphabet.tokens
    regions = []
    for ix, col in enumerate(g.regions):
        for iy, b in enumerate(col):
            rows = [
                " ".join(toks[b.data[x][y]] for x in range(b.u)) for y in range(b.v - 1, -1, -1)
            ]
            regions.append({"ix": ix, "iy": iy, "u": b.u, "v": b.v, "rows": rows})
    return {"xcuts": list(g.xcuts), "ycuts": list(g.ycuts), "regions": regions}


def _lattice_json(lat) -> dict:
    return {"rank": lat.rank, "generators": [[v.x, v.y] for v in lat.generators]}


def _emit(obj) -> None:
    print(json.dumps(obj, indent=2, sort_keys=True))


def _cmd_patterns(args) -> int:
    ts = parse_tileset(args.tileset)
    pats = extensible_squares(ts, args.size, args.margin)
    if args.count:
        print(len(pats))
        return 0
    _emit({"count": len(pats), "patterns": [_pattern_json(p) for p in pats]})
    return 0


def _cmd_torus(args) -> int:
    ts = parse_tileset(args.tileset)
    tilings = enumerate_torus(ts, args.max_p, args.max_q)
    _emit({"count": len(tilings), "tilings": [_torus_json(t, ts.alphabet) for t in tilings]})
    return 0


def _cmd_classify(args) -> int:
    ts = parse_tileset(args.tileset)
    res = classify(ts, args.budget)
    if isinstance(res, Empty):
        _emit({"outcome": "empty", "square": res.n})
    elif isinstance(res, PeriodicFound):
        _emit({"outcome": "periodic", "tiling": _torus_json(res.tiling, ts.alphabet)})
    else:
        _emit({"outcome": "unknown", "budget": res.budget})
    return 0


def _cmd_weak_periodic(args) -> int:
    ts = parse_tileset(args.tileset)
    pres = weak_periodic_witness(ts, args.max_period)
    if pres is None:
        _emit({"found": False, "max_period": args.max_period})
        return 1
    _emit(
        {
            "found": True,
            "presentation": _presentation_json(pres),
            "period_lattice": _lattice_json(period_lattice(pres)),
        }
    )
    return 0


def _cmd_validate(args) -> int:
    ts = parse_tileset(args.tileset)
    g = parse_presentation(args.presentation, ts.alphabet)
    ok = is_valid(g, ts)
    _emit({"valid": ok})
    return 0 if ok else 1


def _cmd_analyze(args) -> int:
    ts = parse_tileset(args.tileset)
    g = parse_presentation(args.presentation, ts.alphabet)
    ok = is_valid(g, ts)
    t = type_of(g)
    type_json: dict = {"kind": "b", "witness": _pattern_json(t.witness)} if isinstance(t, TypeB) else {"kind": "a"}
    _emit(
        {
            "valid": ok,
            "type": type_json,
            "period_lattice": _lattice_json(period_lattice(g)),
        }
    )
    return 0 if ok else 1


def _load_family(ts: TileSet, dirpath, window: int) -> TilingFamily:
    files = sorted(Path(dirpath).glob("*.pres"))
    if not files:
        raise ValueError(f"no .pres files in {dirpath}")
    members = [(f.stem, parse_presentation(f, ts.alphabet)) for f in files]
    return TilingFamily(ts, members, window)


def _dot(h) -> str:
    lines = ["digraph extraction {", "  rankdir=BT;"]
    for i, cls in enumerate(h.classes):
        label = "=".join(cls)
        lines.append(f'  c{i} [label="{label}"];')
    for lo, hi in h.covers:
        lines.append(f"  c{lo} -> c{hi};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _cmd_order(args) -> int:
    ts = parse_tileset(args.tileset)
    f = _load_family(ts, args.family, args.window)
    h = hasse(f)
    minimal = {cls[0] for cls in minimal_classes(f)}
    maximal = {cls[0] for cls in maximal_classes(f)}
    classes = [
        {
            "members": list(cls),
            "level": level_of(f, cls[0]),
            "minimal": cls[0] in minimal,
            "maximal": cls[0] in maximal,
        }
        for cls in h.classes
    ]
    # Inclusions between distinct tilings can flip as the window grows; the
    # diagram itself is window-independent, so only the raw checks are probed.
    unstable = []
    reps = [cls[0] for cls in h.classes]
    for a in reps:
        for b in reps:
            if a == b:
                continue
            ga, gb = f.presentation(a), f.presentation(b)
            if preceq(ga, gb, f.window) != preceq(ga, gb, f.window + 1):
                unstable.append([a, b])
    _emit(
        {
            "window": f.window,
            "classes": classes,
            "covers": [list(c) for c in h.covers],
            "stabilization": {"stable": not unstable, "unstable_pairs": unstable},
        }
    )
    if args.dot:
        Path(args.dot).write_text(_dot(h))
    return 0


def _cmd_cb(args) -> int:
    ts = parse_tileset(args.tileset)
    f = _load_family(ts, args.family, args.window)
    report = ranks(f)
    _emit(
        {
            "window": f.window,
            "ranks": {name: report.ranks.get(name) for name in f.names()},
            "family_rank": report.family_rank,
            "residue": list(report.residue),
        }
    )
    return 0


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="tilelab",
        description="Analyze tile sets, their pattern languages, and presented tilings.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("patterns", help="enumerate admissible (or completable) squares")
    p.add_argument("tileset")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--margin", type=int, default=0, help="demand completion to size + 2*margin")
    p.add_argument("--count", action="store_true", help="print only the count")
    p.set_defaults(func=_cmd_patterns)

    p = sub.add_parser("torus", help="enumerate torus tilings up to translation")
    p.add_argument("tileset")
    p.add_argument("--max-p", type=int, required=True)
    p.add_argument("--max-q", type=int, required=True)
    p.set_defaults(func=_cmd_torus)

    p = sub.add_parser("classify", help="bounded emptiness / periodicity ladder")
    p.add_argument("tileset")
    p.add_argument("--budget", type=int, required=True)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("weak-periodic", help="search for a one-directionally periodic tiling")
    p.add_argument("tileset")
    p.add_argument("--max-period", type=int, required=True)
    p.set_defaults(func=_cmd_weak_periodic)

    p = sub.add_parser("validate", help="check a presented plane against a tile set")
    p.add_argument("tileset")
    p.add_argument("presentation")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("analyze", help="validity, recurrence type, and period lattice")
    p.add_argument("tileset")
    p.add_argument("presentation")
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("order", help="extraction order of a family directory")
    p.add_argument("tileset")
    p.add_argument("family", help="directory of .pres files; stems become member names")
    p.add_argument("--window", type=int, required=True)
    p.add_argument("--dot", default=None, help="also write the diagram in dot format")
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("cb", help="isolation ranks of a family directory")
    p.add_argument("tileset")
    p.add_argument("family", help="directory of .pres files; stems become member names")
    p.add_argument("--window", type=int, required=True)
    p.set_defaults(func=_cmd_cb)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
