from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import leibniz_det, rational_rank
from symplectic_dgbv.linalg import (Subspace, det, inverse, matmul, matvec, nullspace, rank, rref,
                                    solve, identity)

small = st.integers(min_value=-3, max_value=3).map(Fraction)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


def test_rref_example():
    a = [[Fraction(x) for x in row] for row in [[2, 4, 2], [1, 2, 3]]]
    red, piv = rref(a, 3)
    assert piv == [0, 2]
    assert red == [[1, 2, 0], [0, 0, 1]]


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_matches_sympy(a):
    assert rank(a, len(a[0])) == rational_rank(a)


@settings(max_examples=60, deadline=None)
@given(matrices())
def test_rank_nullity(a):
    n = len(a[0])
    ns = nullspace(a, n)
    assert len(ns) + rank(a, n) == n
    for v in ns:
        assert all(x == 0 for x in matvec(a, v))


@settings(max_examples=60, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent_systems(a, x0):
    n = len(a[0])
    b = matvec(a, x0[:n])
    x = solve(a, b, n)
    assert x is not None
    assert matvec(a, x) == b


def test_solve_inconsistent():
    a = [[Fraction(1), Fraction(1)], [Fraction(2), Fraction(2)]]
    assert solve(a, [Fraction(1), Fraction(3)], 2) is None


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.lists(st.lists(small, min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_leibniz(a):
    assert det(a) == leibniz_det(a)
    if det(a) != 0:
        assert matmul(a, inverse(a)) == identity(len(a))


@settings(max_examples=40, deadline=None)
@given(matrices(4, 4), matrices(4, 4))
def test_intersection_is_contained_in_both(a, b):
    n = min(len(a[0]), len(b[0]))
    u = Subspace([r[:n] for r in a], n)
    w = Subspace([r[:n] for r in b], n)
    both = u.intersect(w)
    assert u.contains_space(both) and w.contains_space(both)
    # dim(U + W) + dim(U n W) = dim U + dim W
    assert (u + w).dim + both.dim == u.dim + w.dim


def test_subspace_equality_is_by_inclusion():
    u = Subspace([[Fraction(1), Fraction(1), 0], [0, Fraction(1), 0]], 3)
    w = Subspace([[Fraction(1), 0, 0], [Fraction(3), Fraction(2), 0]], 3)
    v = Subspace([[Fraction(1), 0, 0], [0, 0, Fraction(1)]], 3)
    assert u.equals(w)
    assert not u.equals(v)
    assert u.dim == v.dim
