"""Banded grid presentations: finite descriptions of eventually periodic planes.

A presentation cuts the plane into x-bands and y-bands and fills each band
product with a periodic block, anchored at the global origin.  Everything a
band structure can ask (window languages, occurrence counts, period lattices,
recurrence type) reduces to finite scans whose ranges come from the band
spans plus one block period of margin on each side; the scan-range arguments
are spelled out at the functions that rely on them.
"""

from __future__ import annotations

import weakref
from bisect import bisect_right
from dataclasses import dataclass
from math import lcm

from .core import Alphabet, Pattern, TileSet, Vec2, _as_vec, lcm_all


@dataclass(frozen=True)
class Block:
    """u x v periodic fill, anchored at the origin: cell (x, y) reads data[x % u][y % v]."""

    u: int
    v: int
    data: tuple[tuple[int, ...], ...]  # data[x][y]

    def __post_init__(self):
        if self.u < 1 or self.v < 1:
            raise ValueError("block dimensions must be positive")
        if len(self.data) != self.u or any(len(col) != self.v for col in self.data):
            raise ValueError("block data shape mismatch")

    @classmethod
    def filled(cls, u: int, v: int, state: int) -> "Block":
        return cls(u, v, tuple((state,) * v for _ in range(u)))


@dataclass(frozen=True)
class GridPresentation:
    """regions[ix][iy] fills the product of the ix-th x-band and iy-th y-band.

    Band ix of cuts (c_1 < ... < c_r) is (-inf, c_1) for ix = 0, [c_ix, c_ix+1)
    in the middle, [c_r, inf) for ix = r; blocks are anchored at the origin, so
    shifting a presentation re-anchors its data.
    """

    alphabet: Alphabet
    xcuts: tuple[int, ...]
    ycuts: tuple[int, ...]
    regions: tuple[tuple[Block, ...], ...]

    def __post_init__(self):
        for cuts in (self.xcuts, self.ycuts):
            if any(a >= b for a, b in zip(cuts, cuts[1:])):
                raise ValueError("cuts must be strictly increasing")
        if len(self.regions) != len(self.xcuts) + 1:
            raise ValueError("need one region column per x-band")
        for col in self.regions:
            if len(col) != len(self.ycuts) + 1:
                raise ValueError("need one region per y-band")
            for b in col:
                for data_col in b.data:
                    for s in data_col:
                        if not 0 <= s < len(self.alphabet):
                            raise ValueError("block state out of alphabet range")


def uniform(alphabet: Alphabet, state: int) -> GridPresentation:
    return GridPresentation(alphabet, (), (), ((Block.filled(1, 1, state),),))


def cell_at(g: GridPresentation, v) -> int:
    v = _as_vec(v)
    b = g.regions[bisect_right(g.xcuts, v.x)][bisect_right(g.ycuts, v.y)]
    return b.data[v.x % b.u][v.y % b.v]


def block_lcms(g: GridPresentation) -> Vec2:
    """Componentwise lcm of block periods; the whole plane repeats with these
    steps inside any single unbounded band."""
    return Vec2(
        lcm_all(b.u for col in g.regions for b in col),
        lcm_all(b.v for col in g.regions for b in col),
    )


def cut_spans(g: GridPresentation) -> Vec2:
    xs = g.xcuts[-1] - g.xcuts[0] if g.xcuts else 0
    ys = g.ycuts[-1] - g.ycuts[0] if g.ycuts else 0
    return Vec2(xs, ys)


class _Analysis:
    """Per-presentation scan cache: materialized cell grid plus window-key sets."""

    __slots__ = ("g", "lcms", "keys", "grid", "bounds")

    def __init__(self, g: GridPresentation):
        self.g = g
        self.lcms = block_lcms(g)
        self.keys: dict[tuple[int, int], frozenset] = {}
        self.grid: list[list[int]] | None = None
        self.bounds: tuple[int, int, int, int] | None = None

    def corner_box(self, w: int, h: int) -> tuple[range, range]:
        """Corner ranges whose w x h windows realize every window content.

        A window lying inside an unbounded band repeats under one block-lcm
        step, so corners one lcm deep into each extreme band plus all the
        straddling corners cover every content exactly; with no cuts on an
        axis one lcm's worth of corners suffices.
        """
        g, (ux, vy) = self.g, self.lcms
        if g.xcuts:
            xs = range(g.xcuts[0] - w - ux, g.xcuts[-1] + ux + 1)
        else:
            xs = range(0, ux)
        if g.ycuts:
            ys = range(g.ycuts[0] - h - vy, g.ycuts[-1] + vy + 1)
        else:
            ys = range(0, vy)
        return xs, ys

    def ensure(self, x0: int, x1: int, y0: int, y1: int) -> None:
        """Grow the materialized grid to cover [x0, x1] x [y0, y1]."""
        if self.bounds is not None:
            bx0, bx1, by0, by1 = self.bounds
            if bx0 <= x0 and x1 <= bx1 and by0 <= y0 and y1 <= by1:
                return
            x0, x1 = min(x0, bx0), max(x1, bx1)
            y0, y1 = min(y0, by0), max(y1, by1)
        g = self.g
        self.grid = [[cell_at(g, Vec2(x, y)) for y in range(y0, y1 + 1)] for x in range(x0, x1 + 1)]
        self.bounds = (x0, x1, y0, y1)

    def state(self, x: int, y: int) -> int:
        return self.grid[x - self.bounds[0]][y - self.bounds[2]]

    def rect_keys(self, w: int, h: int) -> frozenset:
        got = self.keys.get((w, h))
        if got is not None:
            return got
        xs, ys = self.corner_box(w, h)
        self.ensure(xs.start, xs.stop - 1 + w - 1, ys.start, ys.stop - 1 + h - 1)
        grid, (bx0, _, by0, _) = self.grid, self.bounds
        found = set()
        for cx in xs:
            i = cx - bx0
            for cy in ys:
                j = cy - by0
                found.add(tuple(grid[i + dx][j + dy] for dx in range(w) for dy in range(h)))
        got = frozenset(found)
        self.keys[(w, h)] = got
        return got


_ANALYSES: "weakref.WeakKeyDictionary[GridPresentation, _Analysis]" = weakref.WeakKeyDictionary()


def _ana(g: GridPresentation) -> _Analysis:
    a = _ANALYSES.get(g)
    if a is None:
        a = _Analysis(g)
        _ANALYSES[g] = a
    return a


def window_at(g: GridPresentation, corner, n: int) -> Pattern:
    corner = _as_vec(corner)
    if n < 1:
        raise ValueError("window size must be positive")
    cells = {Vec2(dx, dy): cell_at(g, corner + Vec2(dx, dy)) for dx in range(n) for dy in range(n)}
    return Pattern(g.alphabet, cells)


def rect_window_keys(g: GridPresentation, w: int, h: int) -> frozenset:
    """All distinct w x h window contents, as x-major state tuples."""
    return _ana(g).rect_keys(w, h)


def pattern_set(g: GridPresentation, n: int) -> set[Pattern]:
    if n < 1:
        raise ValueError("window size must be positive")
    out = set()
    for key in rect_window_keys(g, n, n):
        out.add(Pattern(g.alphabet, {Vec2(dx, dy): key[dx * n + dy] for dx in range(n) for dy in range(n)}))
    return out


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class Finite:
    count: int


@dataclass(frozen=True)
class Infinite:
    pass


def _occurrence_scan(g: GridPresentation, p: Pattern) -> tuple[list[Vec2], set[Vec2]]:
    """Occurrence corners of p within the canonical scan box, plus the set of
    band-repeat directions witnessed by occurrences lying inside an unbounded
    band (those generate infinite occurrence families)."""
    if p.alphabet != g.alphabet:
        raise ValueError("alphabet mismatch")
    p = p.normalize()
    w, h = p.extents()
    a = _ana(g)
    ux, vy = a.lcms
    xs, ys = a.corner_box(w, h)
    a.ensure(xs.start, xs.stop - 1 + w - 1, ys.start, ys.stop - 1 + h - 1)
    grid, (bx0, _, by0, _) = a.grid, a.bounds
    cells = [(c.x, c.y, s) for c, s in sorted(p.cells.items())]
    positions: list[Vec2] = []
    dirs: set[Vec2] = set()
    for cx in xs:
        i = cx - bx0
        for cy in ys:
            j = cy - by0
            if all(grid[i + dx][j + dy] == s for dx, dy, s in cells):
                positions.append(Vec2(cx, cy))
                if not g.xcuts or cx + w - 1 < g.xcuts[0]:
                    dirs.add(Vec2(-ux, 0))
                if not g.xcuts or cx >= g.xcuts[-1]:
                    dirs.add(Vec2(ux, 0))
                if not g.ycuts or cy + h - 1 < g.ycuts[0]:
                    dirs.add(Vec2(0, -vy))
                if not g.ycuts or cy >= g.ycuts[-1]:
                    dirs.add(Vec2(0, vy))
    return positions, dirs


def occurrences(g: GridPresentation, p: Pattern):
    """Classify how often p occurs: never, finitely (with exact count), or infinitely.

    Every occurrence either straddles a cut on both axes (then it lies in the
    scan box literally) or sits inside an unbounded band (then band repetition
    yields infinitely many copies, and a representative lands in the box).
    """
    positions, dirs = _occurrence_scan(g, p)
    if not positions:
        return Zero()
    if dirs:
        return Infinite()
    return Finite(len(positions))


def is_valid(g: GridPresentation, ts: TileSet) -> bool:
    """Whether the presented configuration is a tiling for ts: every shape
    window content (all realized in the scan box) must be allowed."""
    if ts.alphabet != g.alphabet:
        raise ValueError("alphabet mismatch")
    a = _ana(g)
    for cells, keys in zip(ts.shape_cells, ts.allowed_keys):
        w = max(c.x for c in cells) + 1
        h = max(c.y for c in cells) + 1
        xs, ys = a.corner_box(w, h)
        a.ensure(xs.start, xs.stop - 1 + w - 1, ys.start, ys.stop - 1 + h - 1)
        grid, (bx0, _, by0, _) = a.grid, a.bounds
        offs = [(c.x, c.y) for c in cells]
        for cx in xs:
            i = cx - bx0
            for cy in ys:
                j = cy - by0
                if tuple(grid[i + dx][j + dy] for dx, dy in offs) not in keys:
                    return False
    return True


def shift(g: GridPresentation, v) -> GridPresentation:
    """Presentation of the same plane translated by v (content moves by +v)."""
    v = _as_vec(v)

    def roll(b: Block) -> Block:
        return Block(
            b.u,
            b.v,
            tuple(
                tuple(b.data[(i - v.x) % b.u][(j - v.y) % b.v] for j in range(b.v))
                for i in range(b.u)
            ),
        )

    return GridPresentation(
        g.alphabet,
        tuple(c + v.x for c in g.xcuts),
        tuple(c + v.y for c in g.ycuts),
        tuple(tuple(roll(b) for b in col) for col in g.regions),
    )


def transpose(g: GridPresentation) -> GridPresentation:
    def flip(b: Block) -> Block:
        return Block(b.v, b.u, tuple(tuple(b.data[i][j] for i in range(b.u)) for j in range(b.v)))

    regions = tuple(
        tuple(flip(g.regions[ix][iy]) for ix in range(len(g.xcuts) + 1))
        for iy in range(len(g.ycuts) + 1)
    )
    return GridPresentation(g.alphabet, g.ycuts, g.xcuts, regions)


def equal(g1: GridPresentation, g2: GridPresentation) -> bool:
    """Exact configuration equality via one shared scan box.

    Outside the union of both cut sets each plane repeats with the joint block
    lcm on each axis, so agreement on the box (cut span plus one joint lcm of
    margin per side) propagates to the whole plane.
    """
    if g1.alphabet != g2.alphabet:
        raise ValueError("alphabet mismatch")
    l1, l2 = block_lcms(g1), block_lcms(g2)
    ux, vy = lcm(l1.x, l2.x), lcm(l1.y, l2.y)
    xcuts = sorted(set(g1.xcuts) | set(g2.xcuts))
    ycuts = sorted(set(g1.ycuts) | set(g2.ycuts))
    xs = range(xcuts[0] - 1 - ux, xcuts[-1] + ux + 1) if xcuts else range(0, ux)
    ys = range(ycuts[0] - 1 - vy, ycuts[-1] + vy + 1) if ycuts else range(0, vy)
    return all(cell_at(g1, Vec2(x, y)) == cell_at(g2, Vec2(x, y)) for x in xs for y in ys)


@dataclass(frozen=True)
class PeriodLattice:
    """Translation symmetry group, with generators in row-echelon shape:
    rank 2 -> ((a, b), (0, c)) with a, c > 0 and 0 <= b < c; rank 1 -> one
    axis-aligned generator; rank 0 -> none."""

    rank: int
    generators: tuple[Vec2, ...]

    def contains(self, v) -> bool:
        v = _as_vec(v)
        if self.rank == 0:
            return v == Vec2(0, 0)
        if self.rank == 1:
            (a, b), = self.generators
            if a == 0:
                return v.x == 0 and v.y % b == 0
            return v.y == 0 and v.x % a == 0
        (a, b), (_, c) = self.generators
        if v.x % a != 0:
            return False
        return (v.y - (v.x // a) * b) % c == 0


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def period_lattice(g: GridPresentation) -> PeriodLattice:
    """Exact period lattice of the presented plane.

    Any period with a nonzero x-component forces (ux, 0) to be a period: far
    enough along the period direction every cell sits in an extreme x-band,
    where the plane repeats with step ux, and the cut structure transports
    that repetition back everywhere.  So the x-projection of the lattice is
    nontrivial iff (ux, 0) is a period, and likewise for y; candidate
    generators then range over divisors of the block lcms.
    """
    ux, vy = block_lcms(g)
    has_h = equal(g, shift(g, Vec2(ux, 0)))
    has_v = equal(g, shift(g, Vec2(0, vy)))
    if has_v:
        c0 = next(d for d in _divisors(vy) if equal(g, shift(g, Vec2(0, d))))
    if has_h and not has_v:
        a0 = next(d for d in _divisors(ux) if equal(g, shift(g, Vec2(d, 0))))
        return PeriodLattice(1, (Vec2(a0, 0),))
    if has_v and not has_h:
        return PeriodLattice(1, (Vec2(0, c0),))
    if not has_h and not has_v:
        return PeriodLattice(0, ())
    for a in _divisors(ux):
        for b in range(c0):
            if equal(g, shift(g, Vec2(a, b))):
                return PeriodLattice(2, (Vec2(a, b), Vec2(0, c0)))
    raise AssertionError("unreachable: (ux, 0) is a period")


@dataclass(frozen=True)
class TypeA:
    """Every finite pattern of the plane recurs infinitely often."""


@dataclass(frozen=True)
class TypeB:
    """Some pattern occurs exactly once; witness is a minimal-size one."""

    witness: Pattern


def _dims_ascending(wmax: int, hmax: int):
    dims = [(w, h) for w in range(1, wmax + 1) for h in range(1, hmax + 1)]
    dims.sort(key=lambda d: (d[0] * d[1], max(d), d[0]))
    return dims


def type_of(g: GridPresentation):
    """Recurrence type of the plane.

    A nontrivial period lattice makes every pattern recur along it.  With a
    trivial lattice some window occurs exactly once: a window covering the cut
    box plus one lcm margin occurs finitely often (an occurrence inside an
    extreme band would splice band repetition into a global period), and the
    hull of its occurrences supports a once-occurring window of per-axis size
    at most 3 * span + 4 * lcm - 2, which bounds the witness search below.
    """
    if period_lattice(g).rank >= 1:
        return TypeA()
    # rank 0 forces cuts on both axes
    ux, vy = block_lcms(g)
    xspan, yspan = cut_spans(g)
    x1, xr = g.xcuts[0], g.xcuts[-1]
    y1, ys_ = g.ycuts[0], g.ycuts[-1]
    a = _ana(g)
    for w, h in _dims_ascending(3 * xspan + 4 * ux - 2, 3 * yspan + 4 * vy - 2):
        cxs = range(x1 - w + 1, xr)
        cys = range(y1 - h + 1, ys_)
        if not cxs or not cys:
            continue
        a.ensure(cxs.start, cxs.stop - 1 + w - 1, cys.start, cys.stop - 1 + h - 1)
        grid, (bx0, _, by0, _) = a.grid, a.bounds
        seen = set()
        for cx in cxs:
            i = cx - bx0
            for cy in cys:
                j = cy - by0
                seen.add(tuple(grid[i + dx][j + dy] for dx in range(w) for dy in range(h)))
        for key in sorted(seen):
            p = Pattern(g.alphabet, {Vec2(dx, dy): key[dx * h + dy] for dx in range(w) for dy in range(h)})
            if occurrences(g, p) == Finite(1):
                return TypeB(p)
    raise AssertionError("trivial lattice admits a once-occurring window within the bound")
