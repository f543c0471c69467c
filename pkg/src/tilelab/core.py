"""Ground types: alphabets, finite patterns, tile sets, torus tilings."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, NamedTuple


class Vec2(NamedTuple):
    x: int
    y: int

    def __add__(self, other):
        return Vec2(self.x + other[0], self.y + other[1])

    def __radd__(self, other):
        return Vec2(other[0] + self.x, other[1] + self.y)

    def __sub__(self, other):
        return Vec2(self.x - other[0], self.y - other[1])

    def __neg__(self):
        return Vec2(-self.x, -self.y)


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of cell states, addressed by index everywhere else."""

    tokens: tuple[str, ...]

    def __post_init__(self):
        if not self.tokens:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.tokens)) != len(self.tokens):
            raise ValueError("alphabet tokens must be distinct")
        for t in self.tokens:
            if not t or any(c.isspace() for c in t) or "#" in t or t == ".":
                raise ValueError(f"bad alphabet token {t!r}")

    def __len__(self):
        return len(self.tokens)

    @cached_property
    def index(self) -> dict[str, int]:
        return {t: i for i, t in enumerate(self.tokens)}


def _as_vec(v) -> Vec2:
    return v if isinstance(v, Vec2) else Vec2(v[0], v[1])


class Pattern:
    """Partial map from a finite set of cells to states of one alphabet.

    Equality and hashing look at the cell map as placed, so translates of
    the same shape compare unequal; use normalize() for a canonical placement
    with the componentwise-minimal cell at the origin.
    """

    __slots__ = ("alphabet", "cells", "_hash")

    def __init__(self, alphabet: Alphabet, cells: dict):
        if not cells:
            raise ValueError("pattern must have at least one cell")
        fixed = {}
        for v, s in cells.items():
            if not 0 <= s < len(alphabet):
                raise ValueError(f"state {s} out of range")
            fixed[_as_vec(v)] = s
        object.__setattr__(self, "alphabet", alphabet)
        object.__setattr__(self, "cells", fixed)
        object.__setattr__(self, "_hash", hash((alphabet, frozenset(fixed.items()))))

    def __setattr__(self, name, value):
        raise AttributeError("Pattern is immutable")

    def __eq__(self, other):
        if not isinstance(other, Pattern):
            return NotImplemented
        return self.alphabet == other.alphabet and self.cells == other.cells

    def __hash__(self):
        return self._hash

    def __repr__(self):
        w, h = self.extents()
        return f"Pattern({w}x{h}, {len(self.cells)} cells)"

    def domain(self) -> frozenset[Vec2]:
        return frozenset(self.cells)

    def sorted_cells(self) -> list[Vec2]:
        return sorted(self.cells)

    def key(self) -> tuple:
        """States in (x, y)-sorted cell order; total order on same-shape patterns."""
        return tuple(self.cells[c] for c in sorted(self.cells))

    def min_corner(self) -> Vec2:
        xs = [c.x for c in self.cells]
        ys = [c.y for c in self.cells]
        return Vec2(min(xs), min(ys))

    def extents(self) -> tuple[int, int]:
        xs = [c.x for c in self.cells]
        ys = [c.y for c in self.cells]
        return max(xs) - min(xs) + 1, max(ys) - min(ys) + 1

    def translate(self, v) -> "Pattern":
        v = _as_vec(v)
        return Pattern(self.alphabet, {c + v: s for c, s in self.cells.items()})

    def normalize(self) -> "Pattern":
        return self.translate(-self.min_corner())

    def is_rectangular(self) -> bool:
        w, h = self.extents()
        return len(self.cells) == w * h

    @classmethod
    def from_rows(cls, alphabet: Alphabet, rows: Iterable[str]) -> "Pattern":
        """Build a rectangular pattern from rows of tokens, top row first."""
        grid = [r.split() for r in rows]
        if not grid or any(len(r) != len(grid[0]) for r in grid):
            raise ValueError("rows must be nonempty and equal length")
        h = len(grid)
        cells = {}
        for t, row in enumerate(grid):
            for x, tok in enumerate(row):
                if tok not in alphabet.index:
                    raise ValueError(f"token {tok!r} not in alphabet")
                cells[Vec2(x, h - 1 - t)] = alphabet.index[tok]
        return cls(alphabet, cells)

    def rows(self) -> list[str]:
        """Rectangular pattern as rows of tokens, top row first."""
        if not self.is_rectangular():
            raise ValueError("pattern is not rectangular")
        p = self.normalize()
        w, h = p.extents()
        out = []
        for y in range(h - 1, -1, -1):
            out.append(" ".join(self.alphabet.tokens[p.cells[Vec2(x, y)]] for x in range(w)))
        return out


def appears_in(needle: Pattern, haystack: Pattern) -> bool:
    """True when some translate of needle agrees with haystack on its domain."""
    if needle.alphabet != haystack.alphabet:
        raise ValueError("alphabet mismatch")
    nc = needle.sorted_cells()
    anchor = nc[0]
    for spot, s in haystack.cells.items():
        if s != needle.cells[anchor]:
            continue
        d = spot - anchor
        if all(haystack.cells.get(c + d) == needle.cells[c] for c in nc[1:]):
            return True
    return False


def _shape_sort_key(shape: frozenset[Vec2]):
    return (len(shape), sorted(shape))


@dataclass(frozen=True)
class TileSet:
    """Local constraint system: per shape, the set of allowed patterns.

    Shapes are stored normalized (minimal corner at origin) and deduplicated;
    a configuration is a tiling when every translate of every shape reads an
    allowed pattern.
    """

    alphabet: Alphabet
    shapes: tuple[frozenset[Vec2], ...]
    allowed: tuple[frozenset[Pattern], ...]

    def __post_init__(self):
        if not self.shapes:
            raise ValueError("tile set needs at least one shape")
        if len(self.shapes) != len(self.allowed):
            raise ValueError("shapes and allowed must align")
        if len(set(self.shapes)) != len(self.shapes):
            raise ValueError("duplicate shape")
        for shape, pats in zip(self.shapes, self.allowed):
            if not shape:
                raise ValueError("empty shape")
            if min(c.x for c in shape) != 0 or min(c.y for c in shape) != 0:
                raise ValueError("shape not normalized")
            for p in pats:
                if p.alphabet != self.alphabet:
                    raise ValueError("pattern alphabet mismatch")
                if p.domain() != shape:
                    raise ValueError("pattern domain differs from its shape")

    @classmethod
    def from_allowed(cls, alphabet: Alphabet, patterns: Iterable[Pattern]) -> "TileSet":
        """Group patterns by normalized shape; placement offsets are dropped."""
        by_shape: dict[frozenset[Vec2], set[Pattern]] = {}
        for p in patterns:
            if p.alphabet != alphabet:
                raise ValueError("pattern alphabet mismatch")
            q = p.normalize()
            by_shape.setdefault(q.domain(), set()).add(q)
        shapes = sorted(by_shape, key=_shape_sort_key)
        return cls(alphabet, tuple(shapes), tuple(frozenset(by_shape[s]) for s in shapes))

    @classmethod
    def dominoes(
        cls,
        alphabet: Alphabet,
        hpairs: Iterable[tuple[str, str]],
        vpairs: Iterable[tuple[str, str]],
    ) -> "TileSet":
        """Nearest-neighbour system from allowed (left, right) and (top, bottom) token pairs."""
        idx = alphabet.index
        pats = []
        for left, right in hpairs:
            pats.append(Pattern(alphabet, {Vec2(0, 0): idx[left], Vec2(1, 0): idx[right]}))
        for top, bottom in vpairs:
            pats.append(Pattern(alphabet, {Vec2(0, 1): idx[top], Vec2(0, 0): idx[bottom]}))
        return cls.from_allowed(alphabet, pats)

    @cached_property
    def hextent(self) -> int:
        """Max shape width; 1 for an unconstrained system."""
        return max((max(c.x for c in s) + 1 for s in self.shapes), default=1)

    @cached_property
    def vextent(self) -> int:
        return max((max(c.y for c in s) + 1 for s in self.shapes), default=1)

    @cached_property
    def shape_cells(self) -> tuple[tuple[Vec2, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.shapes)

    @cached_property
    def allowed_keys(self) -> tuple[frozenset[tuple[int, ...]], ...]:
        """Per shape, allowed patterns as state tuples in sorted-cell order."""
        return tuple(
            frozenset(tuple(p.cells[c] for c in cells) for p in pats)
            for cells, pats in zip(self.shape_cells, self.allowed)
        )

    def transpose(self) -> "TileSet":
        flip = lambda s: frozenset(Vec2(c.y, c.x) for c in s)
        shapes = tuple(flip(s) for s in self.shapes)
        allowed = tuple(
            frozenset(Pattern(self.alphabet, {Vec2(c.y, c.x): v for c, v in p.cells.items()}) for p in pats)
            for pats in self.allowed
        )
        order = sorted(range(len(shapes)), key=lambda i: _shape_sort_key(shapes[i]))
        return TileSet(self.alphabet, tuple(shapes[i] for i in order), tuple(allowed[i] for i in order))


def to_forbidden(ts: TileSet, limit: int = 1 << 22) -> dict[frozenset[Vec2], frozenset[Pattern]]:
    """Complement each allowed set inside Q^shape. Guarded: refuses huge complements."""
    out = {}
    for shape, cells, keys in zip(ts.shapes, ts.shape_cells, ts.allowed_keys):
        total = len(ts.alphabet) ** len(shape)
        if total > limit:
            raise ValueError(f"complement of size {total} over shape of {len(shape)} cells refused")
        bad = []
        states = list(range(len(ts.alphabet)))
        for combo in product(states, repeat=len(cells)):
            if combo not in keys:
                bad.append(Pattern(ts.alphabet, dict(zip(cells, combo))))
        out[shape] = frozenset(bad)
    return out


@dataclass(frozen=True)
class TorusTiling:
    """p x q block of states read with both coordinates wrapped."""

    p: int
    q: int
    block: tuple[tuple[int, ...], ...]  # block[x][y]

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise ValueError("torus dimensions must be positive")
        if len(self.block) != self.p or any(len(col) != self.q for col in self.block):
            raise ValueError("block shape mismatch")

    def state_at(self, x: int, y: int) -> int:
        return self.block[x % self.p][y % self.q]

    def translate_key(self, dx: int, dy: int) -> tuple:
        return tuple(
            tuple(self.block[(x + dx) % self.p][(y + dy) % self.q] for y in range(self.q))
            for x in range(self.p)
        )

    def canonical_key(self) -> tuple:
        return min(self.translate_key(dx, dy) for dx in range(self.p) for dy in range(self.q))

    def h_period(self) -> int:
        for d in range(1, self.p + 1):
            if self.p % d == 0 and self.translate_key(d, 0) == self.block:
                return d
        return self.p

    def v_period(self) -> int:
        for d in range(1, self.q + 1):
            if self.q % d == 0 and self.translate_key(0, d) == self.block:
                return d
        return self.q


def check_torus(ts: TileSet, t: TorusTiling) -> bool:
    """Every shape window, read with wraparound, must be allowed."""
    for col in t.block:
        for s in col:
            if not 0 <= s < len(ts.alphabet):
                raise ValueError("state out of range for alphabet")
    for cells, keys in zip(ts.shape_cells, ts.allowed_keys):
        for ax in range(t.p):
            for ay in range(t.q):
                window = tuple(t.block[(ax + c.x) % t.p][(ay + c.y) % t.q] for c in cells)
                if window not in keys:
                    return False
    return True


def lcm_all(values: Iterable[int]) -> int:
    out = 1
    for v in values:
        out = math.lcm(out, v)
    return out
