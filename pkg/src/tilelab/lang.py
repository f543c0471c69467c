"""Pattern-language enumeration: admissible squares, extensibility, transfer graphs."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .core import Pattern, TileSet, Vec2


def _anchor_checks(ts: TileSet, width: int, height: int, wrap_q: int | None = None):
    """Constraint windows over a width x height grid, grouped by last cell assigned.

    Cells are indexed x-major ((x, y) -> x * height + y) and assigned in that
    order, so a window can be tested as soon as its highest-index cell gets a
    value.  With wrap_q set, y coordinates wrap modulo wrap_q and anchors range
    over every row.
    """
    groups: list[list[tuple[tuple[int, ...], frozenset]]] = [[] for _ in range(width * height)]
    for cells, keys in zip(ts.shape_cells, ts.allowed_keys):
        w = max(c.x for c in cells) + 1
        h = max(c.y for c in cells) + 1
        if w > width:
            continue
        if wrap_q is None:
            ys = range(height - h + 1) if h <= height else range(0)
        else:
            ys = range(wrap_q)
        for ax in range(width - w + 1):
            for ay in ys:
                if wrap_q is None:
                    idxs = tuple((ax + c.x) * height + (ay + c.y) for c in cells)
                else:
                    idxs = tuple((ax + c.x) * height + (ay + c.y) % wrap_q for c in cells)
                groups[max(idxs)].append((idxs, keys))
    return groups


def _fill(nstates: int, size: int, groups, prefix: dict[int, int] | None = None) -> Iterator[list[int]]:
    """Depth-first fill of a flat cell array, branching states in ascending order.

    prefix pins cells to fixed values; windows whose cells are all pinned are
    assumed valid and skipped by the caller.
    """
    cells = [-1] * size
    if prefix:
        for i, s in prefix.items():
            cells[i] = s

    def ok(i: int) -> bool:
        for idxs, keys in groups[i]:
            if tuple(cells[j] for j in idxs) not in keys:
                return False
        return True

    def walk(i: int) -> Iterator[list[int]]:
        if i == size:
            yield list(cells)
            return
        if cells[i] >= 0:
            if ok(i):
                yield from walk(i + 1)
            return
        for s in range(nstates):
            cells[i] = s
            if ok(i):
                yield from walk(i + 1)
        cells[i] = -1

    yield from walk(0)


def iter_admissible_squares(ts: TileSet, n: int) -> Iterator[Pattern]:
    """All valid n x n fillings in lexicographic ((x, y)-major, state-ascending) order."""
    if n < 1:
        raise ValueError("n must be positive")
    groups = _anchor_checks(ts, n, n)
    for cells in _fill(len(ts.alphabet), n * n, groups):
        yield Pattern(ts.alphabet, {Vec2(i // n, i % n): s for i, s in enumerate(cells)})


def admissible_squares(ts: TileSet, n: int) -> list[Pattern]:
    return list(iter_admissible_squares(ts, n))


def extensible_squares(ts: TileSet, n: int, margin: int) -> list[Pattern]:
    """Admissible n x n squares that complete to a valid (n + 2*margin)-square.

    Only a finite completion is demanded, so this over-approximates extension
    to a full tiling; margin 0 degenerates to admissibility.
    """
    if margin < 0:
        raise ValueError("margin must be >= 0")
    if margin == 0:
        return admissible_squares(ts, n)
    big = n + 2 * margin
    groups = _anchor_checks(ts, big, big)
    out = []
    for p in iter_admissible_squares(ts, n):
        pin = {
            (margin + c.x) * big + (margin + c.y): s
            for c, s in p.cells.items()
        }
        if next(_fill(len(ts.alphabet), big * big, groups, pin), None) is not None:
            out.append(p)
    return out


@dataclass(frozen=True)
class TransferGraph:
    """Horizontal progression structure of height-q strips.

    Vertices are valid stacks of `cols` adjacent columns in lexicographic
    order; an edge (i, j) means vertices i and j overlap in all but one column
    and their (cols + 1)-wide union is still valid.  With wrap=True the strip
    lives on a height-q cylinder.
    """

    height: int
    wrap: bool
    cols: int
    vertices: tuple[tuple[tuple[int, ...], ...], ...]  # vertex[i] = column tuple
    edges: tuple[tuple[int, int], ...]

    def successors(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {i: [] for i in range(len(self.vertices))}
        for a, b in self.edges:
            out[a].append(b)
        return out


def build_transfer_graph(ts: TileSet, q: int, wrap: bool) -> TransferGraph:
    if q < 1:
        raise ValueError("q must be positive")
    cols = max(ts.hextent - 1, 1)
    wrap_q = q if wrap else None

    groups = _anchor_checks(ts, cols, q, wrap_q)
    vertices = []
    for flat in _fill(len(ts.alphabet), cols * q, groups):
        vertices.append(tuple(tuple(flat[x * q + y] for y in range(q)) for x in range(cols)))

    # Edge check revalidates every anchor of the merged strip; vertices are
    # known-valid so only windows crossing the new column can actually fail,
    # but the uniform check keeps wrap bookkeeping in one place.
    mgroups = _anchor_checks(ts, cols + 1, q, wrap_q)
    flat_groups = [c for g in mgroups for c in g]
    edges = []
    for i, u in enumerate(vertices):
        for j, v in enumerate(vertices):
            if u[1:] != v[:-1]:
                continue
            merged = u + (v[-1],)
            flat = [merged[x][y] for x in range(cols + 1) for y in range(q)]
            if all(tuple(flat[k] for k in idxs) in keys for idxs, keys in flat_groups):
                edges.append((i, j))
    return TransferGraph(q, wrap, cols, tuple(vertices), tuple(edges))


def _mat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def _mat_pow(a, e):
    n = len(a)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    base = a
    while e:
        if e & 1:
            out = _mat_mul(out, base)
        base = _mat_mul(base, base)
        e >>= 1
    return out


def count_torus(ts: TileSet, p: int, q: int) -> int:
    """Number of valid p x q torus blocks, as closed p-walks in the wrap graph."""
    if p < 1:
        raise ValueError("p must be positive")
    g = build_transfer_graph(ts, q, wrap=True)
    n = len(g.vertices)
    if n == 0:
        return 0
    a = [[0] * n for _ in range(n)]
    for i, j in g.edges:
        a[i][j] += 1
    ap = _mat_pow(a, p)
    return sum(ap[i][i] for i in range(n))
