from fractions import Fraction

from hypothesis import given, strategies as st

from tropjac.linalg import Vec
from tropjac.polytope import clip, ordered_polygon, polygon_area, polygon_halfplanes, relint_meet, zonotope

pt = st.tuples(st.integers(-4, 4), st.integers(-4, 4))


def test_square():
    Z = zonotope((0, 0), [(1, 0), (0, 1)])
    assert Z.dim == 2 and len(Z.vertices) == 4 and Z.measure() == 1
    assert Z.contains((Fraction(1, 2), 1)) and not Z.contains((2, 0))


def test_segment_and_point():
    S = zonotope((1, 1), [(2, 1)])
    assert S.dim == 1 and S.vertices == (Vec([1, 1]), Vec([3, 2]))
    assert S.contains((2, Fraction(3, 2))) and not S.contains((2, 2))
    P = zonotope((1, 1), [])
    assert P.dim == 0 and P.contains((1, 1)) and not P.contains((1, 0))


def test_hexagon_from_three_generators():
    Z = zonotope((0, 0), [(1, 0), (0, 1), (1, 1)])
    assert len(Z.vertices) == 6 and Z.measure() == 3


@given(pt, pt, pt)
def test_zonotope_area_is_sum_of_minors(b, u, v):
    Z = zonotope(b, [u, v])
    cross = abs(u[0] * v[1] - u[1] * v[0])
    if cross:
        assert Z.measure() == cross
    for p in Z.vertices:
        assert Z.contains(p)
    assert Z.contains(Z.centroid())


def test_clip_to_halfplanes():
    sq = ordered_polygon([Vec([0, 0]), Vec([2, 0]), Vec([2, 2]), Vec([0, 2])])
    tri = clip(sq, [(Vec([1, 1]), Fraction(2))])
    assert polygon_area(tri) == 2
    assert clip(sq, [(Vec([1, 0]), Fraction(-1))]) == []


def test_halfplanes_describe_polygon():
    poly = ordered_polygon([Vec([0, 0]), Vec([3, 0]), Vec([0, 3])])
    hs = polygon_halfplanes(poly)
    assert all(n.dot(Vec([1, 1])) <= b for n, b in hs)
    assert not all(n.dot(Vec([2, 2])) <= b for n, b in hs)


def test_relint_meet_cases():
    sq = zonotope((0, 0), [(2, 0), (0, 2)])
    assert relint_meet(sq, sq.translate((1, 1)))
    assert not relint_meet(sq, sq.translate((2, 0)))  # shared edge only
    seg = zonotope((0, 1), [(2, 0)])
    assert relint_meet(seg, sq)
    edge = zonotope((0, 0), [(2, 0)])
    assert not relint_meet(edge, sq)  # lies on the boundary
    assert relint_meet(edge, zonotope((1, 0), [(2, 0)]))
    assert not relint_meet(edge, zonotope((2, 0), [(2, 0)]))
    assert relint_meet(zonotope((1, 1), []), sq)
    assert not relint_meet(zonotope((0, 1), []), sq)
    cross = zonotope((1, -1), [(0, 2)])
    assert relint_meet(edge, cross)


def test_one_dimensional():
    a = zonotope((0,), [(3,)])
    assert a.measure() == 3
    assert relint_meet(a, zonotope((2,), [(3,)]))
    assert not relint_meet(a, zonotope((3,), [(3,)]))
    assert relint_meet(zonotope((1,), []), a) and not relint_meet(zonotope((0,), []), a)
