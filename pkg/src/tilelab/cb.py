"""Isolated members, family derivatives, and iterated isolation ranks.

A member is isolated in its family when some pattern of its plane occurs in
no other extraction class and, within the plane itself, occurs along a single
orbit of the period lattice (in particular: exactly once when the lattice is
trivial).  Removing all isolated classes at once and iterating assigns each
member the round at which it disappears; what never disappears is the residue.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Pattern, Vec2
from .presentation import (
    GridPresentation,
    _dims_ascending,
    _occurrence_scan,
    block_lcms,
    cut_spans,
    period_lattice,
    rect_window_keys,
)
from .order import TilingFamily, equivalence_classes


def _search_bounds(f: TilingFamily, g: GridPresentation) -> tuple[int, int]:
    """Candidate dimensions: the family window, enlarged per axis to the
    member's own span plus two lcm periods (anything larger repeats bands
    already seen, so it isolates nothing new)."""
    s, l = cut_spans(g), block_lcms(g)
    return max(f.window, s.x + 2 * l.x), max(f.window, s.y + 2 * l.y)


def isolating_pattern(f: TilingFamily, name: str) -> Pattern | None:
    """Smallest pattern private to name's class whose occurrences in name's
    own plane form one period-lattice orbit; None when no such pattern exists
    within the search bounds."""
    x = f.presentation(name)
    classes = equivalence_classes(f)
    mine = next(cls for cls in classes if name in cls)
    others = [f.presentation(o) for o in f.names() if o not in mine]
    bw, bh = _search_bounds(f, x)
    # a single class covering x at the full bound covers every sub-window too
    full = rect_window_keys(x, bw, bh)
    for y in others:
        if full <= rect_window_keys(y, bw, bh):
            return None
    lat = None
    for w, h in _dims_ascending(bw, bh):
        cands = set(rect_window_keys(x, w, h))
        for y in others:
            cands -= rect_window_keys(y, w, h)
            if not cands:
                break
        for key in sorted(cands):
            p = Pattern(x.alphabet, {Vec2(dx, dy): key[dx * h + dy] for dx in range(w) for dy in range(h)})
            positions, dirs = _occurrence_scan(x, p)
            if len(positions) == 1 and not dirs:
                return p
            if lat is None:
                lat = period_lattice(x)
            base = positions[0]
            if all(lat.contains(pos - base) for pos in positions[1:]) and all(
                lat.contains(d) for d in dirs
            ):
                return p
    return None


def isolated_classes(f: TilingFamily) -> tuple[tuple[str, ...], ...]:
    return tuple(
        cls for cls in equivalence_classes(f) if isolating_pattern(f, cls[0]) is not None
    )


def derivative(f: TilingFamily) -> TilingFamily:
    """Family minus all isolated classes, removed simultaneously."""
    gone = {name for cls in isolated_classes(f) for name in cls}
    keep = [(n, p) for n, p in f.members if n not in gone]
    return TilingFamily(f.tileset, keep, f.window, validate=False)


@dataclass
class RankReport:
    """ranks[name] is the removal round (1-based); residue members survive
    every derivative and get no rank."""

    ranks: dict[str, int]
    family_rank: int
    residue: tuple[str, ...]


def ranks(f: TilingFamily) -> RankReport:
    assigned: dict[str, int] = {}
    cur = f
    round_no = 0
    while cur.names():
        round_no += 1
        gone = {name for cls in isolated_classes(cur) for name in cls}
        if not gone:
            break
        for name in gone:
            assigned[name] = round_no
        cur = TilingFamily(cur.tileset, [(n, p) for n, p in cur.members if n not in gone], cur.window, validate=False)
    return RankReport(assigned, max(assigned.values(), default=0), cur.names())
