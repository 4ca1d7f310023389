from fractions import Fraction

import pytest

from negdep import EnumerationCapExceeded, count_upper_sets, enumerate_upper_sets
from negdep.uppersets import from_members, upper_closure

F = Fraction


def vecs(*tuples):
    return [tuple(F(v) for v in t) for t in tuples]


def test_chain_has_length_plus_one():
    assert count_upper_sets(vecs((0,), (1,), (2,))) == 4


def test_antichain_has_all_subsets():
    assert count_upper_sets(vecs((1, 0), (0, 1))) == 4


def test_two_by_two_grid():
    # monotone boolean functions of two variables
    points = vecs((0, 0), (0, 1), (1, 0), (1, 1))
    assert count_upper_sets(points) == 6


def test_first_is_empty_last_is_full():
    points = vecs((0, 0), (0, 1), (1, 0), (1, 1))
    sets = list(enumerate_upper_sets(points))
    assert len(sets[0]) == 0
    assert sets[-1].points == tuple(sorted(points))


def test_every_yielded_set_is_upward_closed():
    points = vecs((0, 0), (0, 2), (2, 0), (1, 1), (2, 2))
    for u in enumerate_upper_sets(points):
        members = set(u.points)
        for p in points:
            if u.contains(p):
                assert p in members
            else:
                assert p not in members


def test_minimal_elements_are_an_antichain():
    points = vecs((0, 0), (0, 1), (1, 0), (1, 1), (2, 2))
    for u in enumerate_upper_sets(points):
        for a in u.minimal:
            for b in u.minimal:
                if a != b:
                    assert not all(x <= y for x, y in zip(a, b))


def test_cap_exceeded():
    points = vecs((0, 3), (1, 2), (2, 1), (3, 0))  # antichain: 16 upper sets
    with pytest.raises(EnumerationCapExceeded):
        list(enumerate_upper_sets(points, cap=15))


def test_upper_closure():
    ambient = vecs((0, 0), (0, 1), (1, 0), (1, 1), (2, 2))
    u = upper_closure(vecs((1, 0)), ambient)
    assert u.points == tuple(vecs((1, 0), (1, 1), (2, 2)))
    assert u.minimal == tuple(vecs((1, 0)))


def test_membership_beyond_ambient():
    u = from_members(vecs((1, 1), (2, 2)))
    assert u.contains(tuple(F(v) for v in (5, 5)))
    assert not u.contains(tuple(F(v) for v in (1, 0)))
