from fractions import Fraction

from hypothesis import given, strategies as st

from tropjac.linalg import Vec, det, inverse, nullspace, primitive, rank, solve, floor_frac, ceil_frac

small = st.integers(-6, 6)


def test_vec_arithmetic_is_elementwise():
    a, b = Vec([1, 2]), Vec([3, "1/2"])
    assert a + b == Vec([4, Fraction(5, 2)])
    assert a - b == Vec([-2, Fraction(3, 2)])
    assert 2 * a == Vec([2, 4])
    assert a.dot(b) == 4


def test_primitive():
    assert primitive([2, 4, -6]) == Vec([1, 2, -3])
    assert primitive(["1/2", "1/3"]) == Vec([3, 2])
    assert primitive([0, 0]) == Vec([0, 0])


def test_floor_ceil():
    assert floor_frac(Fraction(-7, 2)) == -4
    assert ceil_frac(Fraction(-7, 2)) == -3
    assert floor_frac(Fraction(6, 3)) == ceil_frac(Fraction(6, 3)) == 2


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_nullspace_is_orthogonal_and_complementary(rows):
    ns = nullspace(rows, 3)
    assert len(ns) + rank(rows, 3) == 3
    for v in ns:
        assert all(Vec(r).dot(v) == 0 for r in rows)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=3, max_size=3))
def test_inverse_and_det(m):
    d = det(m)
    if d == 0:
        assert rank(m, 3) < 3
        return
    inv = inverse(m)
    for i in range(3):
        for j in range(3):
            assert sum(Fraction(m[i][k]) * inv[k][j] for k in range(3)) == (1 if i == j else 0)


def test_solve_inconsistent_returns_none():
    assert solve([[1, 1], [2, 2]], [1, 3], 2) is None
    assert solve([[1, 1], [2, 2]], [1, 2], 2) == Vec([1, 0])
