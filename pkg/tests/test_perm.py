import itertools
import math
import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy.combinatorics import Permutation as SymPerm, PermutationGroup

from triverify.perm import (Codec, PermError, Permutation, ProductReplacement, UnsupportedError,
                            alternating_group, build_chain, conjugacy_classes, cycle_profile,
                            cyclic_group, dihedral_group, enumerate_elements, generates, is_even,
                            symmetric_group)


def perms(n):
    return st.permutations(list(range(n))).map(Permutation)


@st.composite
def perm_pair(draw, max_degree=9):
    n = draw(st.integers(1, max_degree))
    return draw(perms(n)), draw(perms(n))


def test_left_to_right_convention():
    p = Permutation.from_cycles(3, [(0, 1)])
    q = Permutation.from_cycles(3, [(1, 2)])
    # p first, then q
    assert (p * q)(0) == q(p(0)) == 2


def test_rejects_bad_images():
    with pytest.raises(PermError):
        Permutation([0, 0, 1])
    with pytest.raises(PermError):
        Permutation([])
    with pytest.raises(PermError):
        Permutation.from_cycles(3, [(0, 3)])


@given(perm_pair())
def test_group_axioms(pair):
    p, q = pair
    e = Permutation.identity(p.degree)
    assert p * e == p == e * p
    assert (p * ~p).is_identity()
    assert ~(p * q) == ~q * ~p


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(perms(n), perms(n), perms(n))))
def test_associativity(t):
    a, b, c = t
    assert (a * b) * c == a * (b * c)


@given(perm_pair())
def test_order_and_power(pair):
    p, _ = pair
    k = p.order()
    assert (p ** k).is_identity()
    assert all(not (p ** d).is_identity() for d in range(1, k))
    assert p ** -1 == ~p
    assert cycle_profile(p).element_order == k


@given(perm_pair())
def test_parity_matches_sympy(pair):
    p, _ = pair
    assert is_even(p) == SymPerm(list(p.images)).is_even


@given(perm_pair())
def test_codec_agrees_with_objects(pair):
    p, q = pair
    c = Codec(p.degree)
    assert c.unpack(c.mul(c.pack(p), c.pack(q))) == p * q
    assert c.unpack(c.inv(c.pack(p))) == ~p
    assert c.unpack(c.power(c.pack(p), 5)) == p ** 5


def test_codec_large_degree():
    n = 300
    p = Permutation([(i + 7) % n for i in range(n)])
    q = Permutation(list(reversed(range(n))))
    c = Codec(n)
    assert not c.packed
    assert c.unpack(c.mul(c.pack(p), c.pack(q))) == p * q


@pytest.mark.parametrize("n", range(1, 10))
def test_symmetric_and_alternating_orders(n):
    assert symmetric_group(n).order == math.factorial(n)
    if n >= 3:
        assert alternating_group(n).order == math.factorial(n) // 2


def test_cyclic_dihedral():
    assert cyclic_group(12).order == 12
    assert dihedral_group(7).order == 14


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 9).flatmap(lambda n: st.lists(perms(n), min_size=1, max_size=3)))
def test_order_matches_sympy(gens):
    G = build_chain(gens)
    H = PermutationGroup([SymPerm(list(g.images)) for g in gens])
    assert G.order == H.order()
    for g in gens:
        assert G.contains(g)


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 7).flatmap(lambda n: st.tuples(st.lists(perms(n), min_size=1, max_size=2), perms(n))))
def test_membership_matches_sympy(t):
    gens, x = t
    G = build_chain(gens)
    H = PermutationGroup([SymPerm(list(g.images)) for g in gens])
    assert G.contains(x) == H.contains(SymPerm(list(x.images)))


def test_target_order_early_exit():
    gens = [Permutation.from_cycles(7, [(0, 1)]), Permutation.from_cycles(7, [tuple(range(7))])]
    assert generates(gens, 5040)
    assert not generates([gens[1]], 5040)


def test_enumeration_and_budget():
    S5 = symmetric_group(5)
    assert len(set(enumerate_elements(S5))) == 120
    with pytest.raises(UnsupportedError):
        enumerate_elements(symmetric_group(8), 1000)


def test_s6_classes():
    sizes = sorted(s for _, s in conjugacy_classes(symmetric_group(6)))
    assert sizes == sorted([1, 15, 15, 45, 40, 40, 90, 90, 144, 120, 120])


def test_class_data_canonical_order():
    cd = alternating_group(5).class_data()
    keys = [(o, len(c), min(c)) for o, c in zip(cd.orders, cd.classes)]
    assert keys == sorted(keys)
    assert cd.sizes == [1, 15, 20, 12, 12]
    for rep, cl in zip(cd.representatives, cd.classes):
        assert cd.group.codec.pack(rep) == min(cl)


@given(st.integers(0, 2 ** 32))
@settings(max_examples=20, deadline=None)
def test_product_replacement_is_seeded(seed):
    G = symmetric_group(6)
    a, b = ProductReplacement(G, seed), ProductReplacement(G, seed)
    assert [a.next_raw() for _ in range(20)] == [b.next_raw() for _ in range(20)]


def test_product_replacement_covers_group():
    G = symmetric_group(4)
    pr = ProductReplacement(G, 1)
    seen = {pr.next_raw() for _ in range(2000)}
    assert len(seen) == 24


def test_transitivity():
    assert symmetric_group(5).is_transitive()
    g = Permutation.from_cycles(5, [(0, 1)])
    assert not build_chain([g]).is_transitive()
