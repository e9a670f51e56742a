import random
from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from biorder import homeo
from biorder.homeo import RationalPLMap, in_P, partial_cmp, pl_compose, pl_invert

ID = RationalPLMap.identity()
UP = RationalPLMap(((0, 0), (Q(1, 2), Q(3, 4)), (1, 1)))
DOWN = RationalPLMap(((0, 0), (Q(1, 2), Q(1, 4)), (1, 1)))


@st.composite
def pl_maps(draw, denom=16):
    n = draw(st.integers(0, 4))
    xs = sorted(draw(st.sets(st.integers(1, denom - 1), min_size=n, max_size=n)))
    ys = sorted(draw(st.sets(st.integers(1, denom - 1), min_size=n, max_size=n)))
    pts = [(0, 0)] + [(Q(x, denom), Q(y, denom)) for x, y in zip(xs, ys)] + [(1, 1)]
    return RationalPLMap.from_points(pts)


def test_compose_invert_examples():
    assert pl_compose(ID, UP) == UP
    assert pl_invert(UP).points == ((0, 0), (Q(3, 4), Q(1, 2)), (1, 1))
    assert pl_compose(UP, pl_invert(UP)).is_identity()


def test_in_P_examples():
    assert not in_P(ID)
    assert in_P(UP)
    assert not in_P(DOWN)
    assert in_P(pl_invert(DOWN))


def test_partial_cmp_examples():
    assert partial_cmp(UP, UP) == "="
    assert partial_cmp(UP, ID) == ">"
    assert partial_cmp(ID, UP) == "<"
    # above the diagonal on (0, 1/2), the identity after: the strict point counts
    bump = RationalPLMap.from_points([(0, 0), (Q(1, 4), Q(3, 8)), (Q(1, 2), Q(1, 2)), (1, 1)])
    assert partial_cmp(bump, ID) == ">"


def test_tail_analysis_crossing():
    # below the diagonal on (0, 1/2), above after: violations end exactly at 1/2
    f = RationalPLMap(((0, 0), (Q(1, 4), Q(1, 8)), (Q(3, 4), Q(7, 8)), (1, 1)))
    t = homeo.tail_analysis(f)
    assert t.violation_sup == Q(1, 2)
    assert t.strict_witness is not None and t.strict_witness > Q(1, 2)
    assert f(t.strict_witness) > t.strict_witness


def test_validation():
    with pytest.raises(ValueError):
        RationalPLMap(((0, 0), (Q(1, 2), Q(1, 2)), (Q(1, 2), 1), (1, 1)))
    with pytest.raises(ValueError):
        RationalPLMap(((0, Q(1, 3)), (1, 1)))


def test_csv_export():
    assert UP.to_csv() == "x,y\n0,0\n1/2,3/4\n1,1\n"


def test_rescale_fixes_interval():
    f = homeo.rescale([(-2, -2), (0, 1), (2, 2)], -2, 2)
    assert f.points == ((0, 0), (Q(1, 2), Q(3, 4)), (1, 1))


@given(pl_maps(), pl_maps())
def test_group_laws(f, g):
    assert pl_compose(f, pl_invert(f)).is_identity()
    h = pl_compose(f, g)
    for x in (Q(1, 7), Q(1, 3), Q(5, 6)):
        assert h(x) == f(g(x))


@given(pl_maps(), pl_maps(), pl_maps())
def test_cone_axioms(f, g, h):
    assert not (in_P(f) and in_P(pl_invert(f)))
    if in_P(f) and in_P(g):
        assert in_P(pl_compose(f, g))
    if in_P(f):
        assert in_P(pl_compose(pl_compose(h, f), pl_invert(h)))


def test_random_positive_is_positive():
    rng = random.Random(0)
    for _ in range(50):
        assert in_P(homeo.random_positive(rng))
