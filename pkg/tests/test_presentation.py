import pytest

from oracle import brute
from conftest import CORPUS, corpus_planes
from tilelab.cli import parse_presentation
from tilelab.core import Pattern, Vec2
from tilelab.presentation import (
    Block,
    Finite,
    GridPresentation,
    Infinite,
    TypeA,
    TypeB,
    Zero,
    block_lcms,
    cell_at,
    cut_spans,
    equal,
    is_valid,
    occurrences,
    pattern_set,
    period_lattice,
    rect_window_keys,
    shift,
    transpose,
    type_of,
    uniform,
    window_at,
)

PLANES = corpus_planes()


def plane_fn(name):
    return PLANES[name][0]


def test_block_and_presentation_validation(stripes):
    al = stripes.alphabet
    with pytest.raises(ValueError):
        Block(2, 1, ((0,),))
    with pytest.raises(ValueError):
        GridPresentation(al, (), (), ((Block(1, 1, ((9,),)),),))  # state out of range
    g = uniform(al, 0)
    assert cell_at(g, (5, -7)) == 0
    with pytest.raises(ValueError):
        GridPresentation(al, (3, 1), (), g.regions)
    with pytest.raises(ValueError):
        GridPresentation(al, (0,), (), g.regions)  # one column of regions, two bands


def test_cell_at_reads_bands(members):
    a2 = members["a2"]
    assert cell_at(a2, (-1, 5)) == 0  # red west of the cut
    fn = plane_fn("a2")
    for x in range(-4, 5):
        for y in range(-4, 8):
            assert cell_at(a2, (x, y)) == fn(x, y)


def test_cell_at_respects_block_periods(stripes):
    al = stripes.alphabet
    # 2 x 3 block in a single unbounded region
    b = Block(2, 3, ((0, 1, 2), (3, 0, 1)))
    g = GridPresentation(al, (), (), ((b,),))
    for x in range(-6, 7):
        for y in range(-6, 7):
            assert cell_at(g, (x, y)) == b.data[x % 2][y % 3]
    assert block_lcms(g) == Vec2(2, 3)
    assert cut_spans(g) == Vec2(0, 0)


def test_window_at(members):
    p = window_at(members["a2"], (-1, -1), 2)
    assert p.rows() == ["R W", "R B"]
    with pytest.raises(ValueError):
        window_at(members["a2"], (0, 0), 0)


def test_pattern_set_counts(members):
    assert len(pattern_set(members["a2"], 1)) == 4
    assert len(pattern_set(members["a2"], 2)) == 11
    assert {p.key() for p in pattern_set(members["mono_red"], 3)} == {(0,) * 9}


@pytest.mark.parametrize("name", ["a1", "a3", "b2", "red_green", "white_over_black",
                                  "red_white_over_black", "mono_green"])
@pytest.mark.parametrize("size", [(1, 1), (2, 2), (3, 2), (1, 4), (4, 4)])
def test_window_keys_match_oracle(members, name, size):
    w, h = size
    grid = brute.box_grid(plane_fn(name), 12)
    assert rect_window_keys(members[name], w, h) == brute.window_keys(grid, w, h)


def test_occurrences_classification(members):
    a2 = members["a2"]
    al = a2.alphabet
    corner = Pattern.from_rows(al, ["R G", "R W"])
    assert occurrences(a2, corner) == Finite(1)
    assert occurrences(a2, Pattern.from_rows(al, ["W"])) == Infinite()
    assert occurrences(a2, Pattern.from_rows(al, ["G", "B"])) == Zero()
    band = Pattern.from_rows(al, ["G", "W", "W", "B"])  # full column profile
    assert occurrences(a2, band) == Infinite()
    seam = Pattern.from_rows(al, ["R G"])
    assert occurrences(a2, seam) == Infinite()
    only_seam_row = Pattern.from_rows(al, ["R W", "R B"])
    assert occurrences(a2, only_seam_row) == Finite(1)


def test_occurrences_with_holes(members):
    al = members["a2"].alphabet
    hole = Pattern(al, {Vec2(0, 0): al.index["B"], Vec2(1, 1): al.index["W"]})
    got = occurrences(members["a2"], hole)
    fn = plane_fn("a2")
    near = brute.occurrence_corners(fn, {(0, 0): 3, (1, 1): 2}, 10)
    far = brute.occurrence_corners(fn, {(0, 0): 3, (1, 1): 2}, 14)
    assert isinstance(got, Infinite) == (len(far) > len(near))
    if isinstance(got, Finite):
        assert got.count == len(far)


@pytest.mark.parametrize("name", ["a2", "b3", "red_white", "green_over_white", "mono_black"])
def test_occurrence_counts_match_oracle(members, name):
    g = members[name]
    fn = plane_fn(name)
    for key in sorted(rect_window_keys(g, 2, 2)):
        cells = {Vec2(dx, dy): key[dx * 2 + dy] for dx in range(2) for dy in range(2)}
        got = occurrences(g, Pattern(g.alphabet, cells))
        raw = {(dx, dy): s for (dx, dy), s in cells.items()}
        near = brute.occurrence_corners(fn, raw, 10)
        far = brute.occurrence_corners(fn, raw, 14)
        if len(far) > len(near):
            assert got == Infinite()
        else:
            assert got == Finite(len(far))


def test_is_valid(stripes, members):
    for name, g in members.items():
        assert is_valid(g, stripes), name
    bad = parse_presentation(CORPUS / "invalid" / "white_over_green.pres", stripes.alphabet)
    assert not is_valid(bad, stripes)


def test_shift_moves_content(members):
    a2 = members["a2"]
    g = shift(a2, (3, -2))
    for x in range(-3, 4):
        for y in range(-3, 7):
            assert cell_at(g, (x + 3, y - 2)) == cell_at(a2, (x, y))
    assert pattern_set(g, 3) == pattern_set(a2, 3)
    assert not equal(g, a2)
    assert equal(shift(g, (-3, 2)), a2)


def test_shift_by_period_is_equal(members):
    for name in ("b2", "red_green", "mono_white"):
        g = members[name]
        lat = period_lattice(g)
        for v in [(1, 0), (0, 1), (2, 3), (-1, 0), (0, -2)]:
            assert equal(shift(g, v), g) == lat.contains(v), (name, v)


def test_transpose(stripes, members):
    a2 = members["a2"]
    t = transpose(a2)
    for x in range(-4, 6):
        for y in range(-4, 6):
            assert cell_at(t, (x, y)) == cell_at(a2, (y, x))
    assert equal(transpose(t), a2)
    assert is_valid(t, stripes.transpose())


def test_equal_across_presentations(stripes):
    al = stripes.alphabet
    plain = uniform(al, 2)
    redundant = GridPresentation(
        al, (0,), (5,),
        ((Block.filled(2, 3, 2), Block.filled(1, 1, 2)),
         (Block.filled(1, 1, 2), Block.filled(3, 2, 2))),
    )
    assert equal(plain, redundant)
    assert not equal(plain, uniform(al, 1))


EXPECTED_LATTICE = {
    "mono_red": 2, "mono_green": 2, "mono_white": 2, "mono_black": 2,
    "red_green": 1, "red_white": 1, "red_black": 1,
    "green_over_white": 1, "white_over_black": 1,
    "red_green_over_white": 0, "red_white_over_black": 0,
    "a1": 0, "a2": 0, "a3": 0, "a4": 0, "a5": 0, "a6": 0,
    "b1": 1, "b2": 1, "b3": 1, "b4": 1, "b5": 1, "b6": 1,
}


def test_period_lattice_ranks(members):
    for name, want in EXPECTED_LATTICE.items():
        lat = period_lattice(members[name])
        assert lat.rank == want, name
        assert lat.rank == brute.lattice_rank(plane_fn(name), 16, 4), name


def test_period_lattice_generators(members):
    assert period_lattice(members["b3"]).generators == ((1, 0),)
    assert period_lattice(members["red_green"]).generators == ((0, 1),)
    assert set(period_lattice(members["mono_red"]).generators) == {(1, 0), (0, 1)}
    fn = plane_fn("b3")
    for gen in period_lattice(members["b3"]).generators:
        assert brute.is_period(fn, tuple(gen), 16)


def test_period_lattice_contains_matches_oracle(members):
    for name in ("a2", "b2", "red_white", "mono_green"):
        lat = period_lattice(members[name])
        fn = plane_fn(name)
        for vx in range(-3, 4):
            for vy in range(-3, 4):
                if (vx, vy) == (0, 0):
                    continue
                assert lat.contains((vx, vy)) == brute.is_period(fn, (vx, vy), 16), (name, vx, vy)


def test_type_of(members):
    t = type_of(members["a2"])
    assert isinstance(t, TypeB)
    assert t.witness.rows() == ["R G", "R W"]
    assert occurrences(members["a2"], t.witness) == Finite(1)
    # the white band of a1 is one row tall, so a smaller witness exists
    t1 = type_of(members["a1"])
    assert t1.witness.rows() == ["R W"]
    t2 = type_of(members["red_white_over_black"])
    assert t2.witness.rows() == ["R W", "R B"]
    for name in ("b1", "red_green", "green_over_white", "mono_red"):
        assert isinstance(type_of(members[name]), TypeA), name


def test_type_b_witness_minimality(members):
    # every member with a 2-cell witness has no isolating single cell
    for name in ("a2", "red_green_over_white"):
        g = members[name]
        wit = type_of(g).witness
        assert len(wit.cells) > 1
        for key in rect_window_keys(g, 1, 1):
            cell = Pattern(g.alphabet, {Vec2(0, 0): key[0]})
            assert occurrences(g, cell) != Finite(1)
