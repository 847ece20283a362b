import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from gyroklein.errors import ClosureTooLarge, DegreeMismatch
from gyroklein.perm import (
    PermGroup,
    Permutation,
    compose,
    compose_all,
    fixed_points,
    generate_group,
    inverse,
)


def one_based(text, n=3):
    return Permutation.from_cycles(text, n, base=1)


def perms(n):
    return st.permutations(list(range(n))).map(lambda p: Permutation(tuple(p)))


@st.composite
def perm_triples(draw, max_n=9):
    n = draw(st.integers(1, max_n))
    return tuple(draw(perms(n)) for _ in range(3))


def test_rejects_non_bijection():
    with pytest.raises(ValueError):
        Permutation((0, 0, 1))


def test_cycle_notation_roundtrip():
    p = Permutation.from_cycles("(4 6)(5 7)", 8)
    assert p.images == (0, 1, 2, 3, 6, 7, 4, 5)
    assert p.to_cycles() == "(4 6)(5 7)"
    assert Permutation.identity(4).to_cycles() == "()"
    assert one_based("(1 3 2)").to_cycles(base=1) == "(1 3 2)"


@pytest.mark.parametrize("bad", ["(1 1)", "(4 9)", "(1 2) x"])
def test_cycle_notation_errors(bad):
    with pytest.raises(ValueError):
        Permutation.from_cycles(bad, 8)


def test_compose_identity():
    q = Permutation((2, 0, 3, 1))
    assert compose(Permutation.identity(4), q) == q
    assert compose(q, Permutation.identity(4)) == q


def test_compose_order():
    # (p o q)(i) = p(q(i))
    p, q = Permutation((1, 0, 2)), Permutation((0, 2, 1))
    assert compose(p, q).images == tuple(p(q(i)) for i in range(3))


def test_square_of_three_cycle():
    sigma, tau = one_based("(1 2 3)"), one_based("(1 3 2)")
    assert compose(sigma, sigma) == tau


def test_compose_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        compose(Permutation.identity(2), Permutation.identity(3))


def test_inverse_examples():
    assert inverse(Permutation.identity(5)) == Permutation.identity(5)
    sigma = one_based("(1 2 3)")
    assert inverse(sigma) == one_based("(1 3 2)")
    assert compose(sigma, inverse(sigma)).is_identity()
    t = Permutation.from_cycles("(0 3)", 5)
    assert inverse(t) == t


def test_fixed_points_examples():
    assert fixed_points(Permutation.identity(5)) == {0, 1, 2, 3, 4}
    assert fixed_points(one_based("(1 2 3)")) == frozenset()
    assert fixed_points(Permutation.from_cycles("(4 6)(5 7)", 8)) == {0, 1, 2, 3}


def test_generate_group_examples():
    assert generate_group([], degree=3).elements == (Permutation.identity(3),)
    a3 = generate_group([one_based("(1 2 3)")])
    assert a3.as_set() == {Permutation.identity(3), one_based("(1 2 3)"), one_based("(1 3 2)")}
    s3 = generate_group([one_based("(1 2)"), one_based("(2 3)")])
    assert len(s3) == 6
    assert s3.as_set() == {Permutation(p) for p in itertools.permutations(range(3))}


def test_generate_group_is_lexicographic():
    g = generate_group([Permutation.from_cycles("(0 1 2 3)", 4), Permutation.from_cycles("(0 2)", 4)])
    assert list(g.elements) == sorted(g.elements, key=lambda p: p.images)


def test_generate_group_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        generate_group([Permutation.identity(2), Permutation.identity(3)])
    with pytest.raises(ValueError):
        generate_group([])


def test_closure_cap(monkeypatch):
    gens = [Permutation.from_cycles("(0 1)", 6), Permutation.from_cycles("(0 1 2 3 4 5)", 6)]
    with pytest.raises(ClosureTooLarge):
        generate_group(gens, cap=100)
    monkeypatch.setenv("GYROKLEIN_MAX_CLOSURE", "50")
    with pytest.raises(ClosureTooLarge):
        generate_group(gens)


def test_permgroup_closed_check():
    assert not PermGroup(3, [Permutation.identity(3), one_based("(1 2 3)")]).is_closed()
    assert not PermGroup(3, [one_based("(1 2)")]).is_closed()


@given(perm_triples())
def test_composition_associative(t):
    p, q, r = t
    assert compose(compose(p, q), r) == compose(p, compose(q, r))
    assert compose_all(p, q, r) == compose(p, compose(q, r))


@given(st.integers(1, 9).flatmap(perms))
def test_inverse_property(p):
    assert compose(p, inverse(p)).is_identity()
    assert compose(inverse(p), p).is_identity()
    assert Permutation.from_cycles(p.to_cycles(), p.degree) == p


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 6).flatmap(lambda n: st.lists(perms(n), max_size=3).map(lambda gs: (n, gs))))
def test_generated_group_closed_and_lagrange(args):
    n, gens = args
    g = generate_group(gens, degree=n)
    assert g.is_closed()
    assert all(x in g for x in gens)
    assert math.factorial(n) % len(g) == 0


def test_lagrange_degree_8():
    gens = [Permutation.from_cycles("(0 1 2 3 4 5 6 7)", 8), Permutation.from_cycles("(1 7)(2 6)(3 5)", 8)]
    g = generate_group(gens)
    assert len(g) == 16 and math.factorial(8) % 16 == 0 and g.is_closed()
